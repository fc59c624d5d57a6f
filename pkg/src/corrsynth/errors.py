"""Exception types raised across the package.

Builtin exceptions are reused where they already say the right thing
(FileNotFoundError for a missing input file, OSError for write failures);
everything domain-specific derives from CorrSynthError so callers can catch
the whole family at once.
"""


class CorrSynthError(Exception):
    """Base class for all domain errors raised by this package."""


class CsvParseError(CorrSynthError):
    """A body cell failed to parse as a finite number.

    Carries 1-based data-row and column positions of the offending cell.
    """

    def __init__(self, row: int, col: int, cell: str):
        self.row = row
        self.col = col
        self.cell = cell
        super().__init__(f"row {row}, column {col}: cannot parse {cell!r} as a finite number")


class DuplicateColumnError(CorrSynthError):
    """The CSV header contains a repeated column name."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate column name {name!r}")


class EmptyBodyError(CorrSynthError):
    """Fewer than two data rows; statistics are undefined."""


class ZeroVarianceError(CorrSynthError):
    """A column is (numerically) constant, so its correlations are undefined."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"column {name!r} has zero variance")


class LengthMismatchError(CorrSynthError):
    """Two vectors that must be paired elementwise have different lengths."""


class NotPositiveSemiDefiniteError(CorrSynthError):
    """Cholesky factorization failed even at the maximum ladder jitter."""


class ConvergenceError(CorrSynthError):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class InvalidSubsetError(CorrSynthError):
    """A column-index subset is too small, out of range, or contains repeats."""


class DegenerateNoiseError(CorrSynthError):
    """The noise matrix cannot be whitened (rank-deficient sample correlation)."""


class ExactModeRankError(CorrSynthError):
    """Exact mode needs more rows than columns to whiten the noise sample."""


class ColumnMismatchError(CorrSynthError):
    """Two datasets that must share a schema have different column names/order."""


class InvalidOrderError(CorrSynthError):
    """A correlation order k is outside the valid range [2, n]."""
