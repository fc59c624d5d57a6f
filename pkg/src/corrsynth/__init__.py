"""Synthetic tabular data that keeps the source's correlation structure.

Fit a blueprint (per-column means and stds plus the Pearson correlation
matrix) from a dataset, generate new rows from seeded Gaussian noise
through the blueprint's Cholesky factor, and verify that pairwise and
higher-order multipole correlations survived the trip.
"""

from corrsynth.backend import resolve_backend
from corrsynth.corr import CorrMatrix, correlation_matrix, pearson
from corrsynth.dataset import (
    ColumnStats,
    Dataset,
    column_stats,
    load_csv,
    write_csv,
    znormalize,
)
from corrsynth.errors import (
    ColumnMismatchError,
    ConvergenceError,
    CorrSynthError,
    CsvParseError,
    DegenerateNoiseError,
    DuplicateColumnError,
    EmptyBodyError,
    ExactModeRankError,
    InvalidOrderError,
    InvalidSubsetError,
    LengthMismatchError,
    NotPositiveSemiDefiniteError,
    ZeroVarianceError,
)
from corrsynth.generator import (
    Blueprint,
    GenerationResult,
    GeneratorConfig,
    MODE_EXACT,
    MODE_EXPECTED,
    fit,
    generate,
    load_blueprint,
    sample_noise,
    save_blueprint,
    whiten,
)
from corrsynth.linalg import (
    CholeskyFactor,
    EigenResult,
    JitterPolicy,
    cholesky,
    smallest_eigenpair,
)
from corrsynth.mpole import (
    MultipoleResult,
    multipole,
    multipole_from_corr,
    multipole_oracle,
)
from corrsynth.verify import (
    OrderRecord,
    VerificationReport,
    enumerate_subsets,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "Blueprint",
    "CholeskyFactor",
    "ColumnMismatchError",
    "ColumnStats",
    "ConvergenceError",
    "CorrMatrix",
    "CorrSynthError",
    "CsvParseError",
    "Dataset",
    "DegenerateNoiseError",
    "DuplicateColumnError",
    "EigenResult",
    "EmptyBodyError",
    "ExactModeRankError",
    "GenerationResult",
    "GeneratorConfig",
    "InvalidOrderError",
    "InvalidSubsetError",
    "JitterPolicy",
    "LengthMismatchError",
    "MODE_EXACT",
    "MODE_EXPECTED",
    "MultipoleResult",
    "NotPositiveSemiDefiniteError",
    "OrderRecord",
    "VerificationReport",
    "ZeroVarianceError",
    "cholesky",
    "column_stats",
    "correlation_matrix",
    "enumerate_subsets",
    "fit",
    "generate",
    "load_blueprint",
    "load_csv",
    "multipole",
    "multipole_from_corr",
    "multipole_oracle",
    "pearson",
    "resolve_backend",
    "sample_noise",
    "save_blueprint",
    "smallest_eigenpair",
    "verify",
    "whiten",
    "write_csv",
    "znormalize",
]
