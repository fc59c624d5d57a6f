"""Synthetic data generation from a correlation blueprint.

Pipeline: fit a blueprint (means, stds, correlation matrix) from source
data, factor the correlation matrix as L L^T, draw seeded standard-normal
noise Z, transform rows by S_hat = Z L^T, then denormalize each column to
the source mean and std. Only the blueprint is retained from the source;
the raw records never enter the generator.

Two modes:

* exact (default): the noise sample is whitened first, so its finite
  sample correlation is exactly the identity and the output's sample
  correlation equals the blueprint to float precision.
* expected: the noise is used as drawn; the output matches the blueprint
  in expectation with O(1/sqrt(rows)) fluctuation.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from corrsynth import kernels
from corrsynth.corr import CorrMatrix, correlation_matrix
from corrsynth.dataset import ColumnStats, Dataset, column_stats
from corrsynth.errors import (
    DegenerateNoiseError,
    ExactModeRankError,
    LengthMismatchError,
)
from corrsynth.linalg import PIVOT_TOL, JitterPolicy, cholesky

BLUEPRINT_FORMAT_VERSION = 1

MODE_EXACT = "exact"
MODE_EXPECTED = "expected"


@dataclass(frozen=True)
class Blueprint:
    """Everything the generator needs: schema, moments, correlation.

    applied_jitter is 0 at fit time; factorization jitter, if any, is
    applied and reported when generating.
    """

    stats: ColumnStats
    corr: CorrMatrix
    applied_jitter: float = 0.0

    def __post_init__(self):
        if self.stats.columns != self.corr.columns:
            raise LengthMismatchError(
                "stats and correlation matrix disagree on columns"
            )

    @property
    def columns(self):
        return self.corr.columns

    @property
    def dim(self):
        return self.corr.dim


@dataclass(frozen=True)
class GeneratorConfig:
    """Generation parameters: row count, seed, mode, jitter ladder."""

    rows: int
    seed: int = 0
    mode: str = MODE_EXACT
    jitter_policy: JitterPolicy = field(default_factory=JitterPolicy)

    def __post_init__(self):
        if self.rows < 2:
            raise ValueError(f"rows must be >= 2, got {self.rows}")
        if self.mode not in (MODE_EXACT, MODE_EXPECTED):
            raise ValueError(f"mode must be {MODE_EXACT!r} or {MODE_EXPECTED!r}")


@dataclass(frozen=True)
class GenerationResult:
    """Synthetic dataset plus the provenance the caller must disclose."""

    dataset: Dataset
    applied_jitter: float
    seed: int
    mode: str

    def metadata(self):
        """Metadata dict for the sidecar JSON written by the CLI."""
        return {
            "format_version": BLUEPRINT_FORMAT_VERSION,
            "rows": self.dataset.n_rows,
            "seed": self.seed,
            "mode": self.mode,
            "applied_jitter": self.applied_jitter,
        }


def fit(d):
    """Extract a Blueprint (means, stds, correlation matrix) from a dataset."""
    stats = column_stats(d)
    corr = correlation_matrix(d)
    return Blueprint(stats, corr)


def sample_noise(rows, cols, seed):
    """Seeded i.i.d. standard-normal noise as a Dataset.

    Deterministic: the same seed yields a bit-identical matrix within this
    implementation (PCG64 stream; cross-implementation equality is not a
    goal). Columns are named z1..z<cols>.
    """
    if rows < 2 or cols < 1:
        raise ValueError(f"need rows >= 2 and cols >= 1, got ({rows}, {cols})")
    rng = np.random.Generator(np.random.PCG64(seed))
    vals = rng.standard_normal((rows, cols))
    names = tuple(f"z{i + 1}" for i in range(cols))
    return Dataset(names, vals)


def whiten(z):
    """Remove the sampling noise from a noise matrix's own correlation.

    Standardizes the columns, right-multiplies by the inverse transpose of
    the Cholesky factor of the sample correlation, then re-centers and
    rescales. The output has column means 0, sample stds 1, and sample
    correlation equal to the identity, all to within 1e-12.

    Raises
    ------
    DegenerateNoiseError
        If rows <= cols, or the sample correlation is not positive
        definite (rank-deficient draw).
    """
    if z.n_rows <= z.n_cols:
        raise DegenerateNoiseError(
            f"whitening needs rows > cols, got {z.n_rows} x {z.n_cols}"
        )
    stats = column_stats(z)
    zhat = (z.values - stats.means) / stats.stds
    c = kernels.corr_matrix(z.values)
    low, ok = kernels.cholesky_lower(c, PIVOT_TOL)
    if not ok:
        raise DegenerateNoiseError("noise sample correlation is rank deficient")
    w = kernels.solve_lower_rows(low, zhat)
    w = w - w.mean(axis=0)
    w = w / w.std(axis=0, ddof=1)
    return Dataset(z.columns, w)


def generate(b, cfg):
    """Run the generation pipeline for a blueprint.

    Returns a GenerationResult; the synthetic dataset carries the
    blueprint's column names and cfg.rows rows.

    Raises
    ------
    NotPositiveSemiDefiniteError
        If the blueprint correlation cannot be factored even at the
        maximum ladder jitter.
    ExactModeRankError
        In exact mode when rows <= number of columns.
    """
    n = b.dim
    if cfg.mode == MODE_EXACT and cfg.rows <= n:
        raise ExactModeRankError(
            f"exact mode needs rows > {n} columns, got {cfg.rows}"
        )
    factor, jitter = cholesky(b.corr, cfg.jitter_policy)
    z = sample_noise(cfg.rows, n, cfg.seed)
    if cfg.mode == MODE_EXACT:
        z = whiten(z)
    shat = z.values @ factor.lower.T
    vals = shat * b.stats.stds + b.stats.means
    return GenerationResult(Dataset(b.columns, vals), jitter, cfg.seed, cfg.mode)


def save_blueprint(b, path):
    """Write a Blueprint to a JSON file (exact float round-trip)."""
    payload = {
        "format_version": BLUEPRINT_FORMAT_VERSION,
        "columns": list(b.columns),
        "means": [float(v) for v in b.stats.means],
        "stds": [float(v) for v in b.stats.stds],
        "corr": [float(v) for v in b.corr.entries.ravel()],
        "applied_jitter": b.applied_jitter,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_blueprint(path):
    """Read a Blueprint from a JSON file written by save_blueprint.

    Raises ValueError on an unknown format version or inconsistent shapes.
    """
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("format_version")
    if version != BLUEPRINT_FORMAT_VERSION:
        raise ValueError(f"unsupported blueprint format version {version!r}")
    columns = tuple(payload["columns"])
    n = len(columns)
    means = np.array(payload["means"], dtype=np.float64)
    stds = np.array(payload["stds"], dtype=np.float64)
    entries = np.array(payload["corr"], dtype=np.float64)
    if means.shape != (n,) or stds.shape != (n,) or entries.shape != (n * n,):
        raise ValueError("blueprint fields disagree on dimension")
    stats = ColumnStats(columns, means, stds)
    corr = CorrMatrix(columns, entries.reshape(n, n))
    return Blueprint(stats, corr, float(payload.get("applied_jitter", 0.0)))
