"""Pairwise Pearson correlation of dataset columns.

The correlation matrix of the source data is the structural blueprint the
generator reproduces: symmetric, unit diagonal, entries clamped to [-1, 1]
so downstream factorization and eigenvalue bounds hold.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from corrsynth import kernels
from corrsynth.dataset import column_stats
from corrsynth.errors import LengthMismatchError, ZeroVarianceError

_VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class CorrMatrix:
    """Symmetric correlation matrix with named axes.

    Invariants checked at construction: square shape matching the names,
    exact symmetry, exact unit diagonal, entries within [-1, 1].
    """

    columns: tuple
    entries: np.ndarray

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=np.float64)
        n = len(self.columns)
        if ent.shape != (n, n):
            raise LengthMismatchError(
                f"{n} column names for entries of shape {ent.shape}"
            )
        if not np.array_equal(ent, ent.T):
            raise ValueError("correlation matrix must be exactly symmetric")
        if not np.all(np.diag(ent) == 1.0):
            raise ValueError("correlation matrix must have unit diagonal")
        if np.any(np.abs(ent) > 1.0):
            raise ValueError("correlation entries must lie in [-1, 1]")
        ent.setflags(write=False)
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self):
        return len(self.columns)


def pearson(x, y):
    """Pearson correlation coefficient of two equal-length vectors.

    Uses the two-pass form: means first, then centered cross and square
    sums. The denominator is sqrt of the product of the centered square
    sums, so exactly linearly dependent integer inputs come out at
    exactly +-1.0; the result is clamped to [-1, 1] either way.

    Raises
    ------
    LengthMismatchError
        If the vectors differ in length or have fewer than 2 elements.
    ZeroVarianceError
        If either vector is (numerically) constant.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise LengthMismatchError("pearson expects 1-d vectors")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatchError(
            f"length mismatch: {x.shape[0]} vs {y.shape[0]}"
        )
    if x.shape[0] < 2:
        raise LengthMismatchError("need at least 2 elements")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    m = x.shape[0]
    floor_x = _VARIANCE_FLOOR * (1.0 + abs(float(x.mean())))
    floor_y = _VARIANCE_FLOOR * (1.0 + abs(float(y.mean())))
    if math.sqrt(sxx / (m - 1)) <= floor_x:
        raise ZeroVarianceError("x")
    if math.sqrt(syy / (m - 1)) <= floor_y:
        raise ZeroVarianceError("y")
    den = math.sqrt(sxx * syy)
    if not math.isfinite(den):
        den = math.sqrt(sxx) * math.sqrt(syy)
    rho = float(xc @ yc) / den
    return min(1.0, max(-1.0, rho))


def correlation_matrix(d):
    """Correlation matrix of a dataset's columns.

    Entry (i, j) equals pearson(column i, column j); the upper triangle is
    computed and mirrored so the result is symmetric bit-for-bit.
    """
    column_stats(d)
    ent = kernels.corr_matrix(d.values)
    return CorrMatrix(d.columns, ent)


def corr_to_csv(c, path, delimiter=","):
    """Write a correlation matrix as an n x n CSV with a name header."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(c.columns)
        for row in c.entries:
            writer.writerow([repr(float(v)) for v in row])


def corr_to_json(c):
    """Serialize a correlation matrix to a JSON string (names + row-major entries)."""
    payload = {
        "columns": list(c.columns),
        "entries": [float(v) for v in c.entries.ravel()],
    }
    return json.dumps(payload, indent=2)
