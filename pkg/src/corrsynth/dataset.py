"""Tabular datasets: CSV round-trip, per-column statistics, z-normalization.

A dataset is an immutable pairing of column names with a float64 matrix,
one column per name. All numeric columns are required; the CSV loader
rejects anything it cannot parse as a float with the exact cell position.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from corrsynth.errors import (
    CsvParseError,
    DuplicateColumnError,
    EmptyBodyError,
    LengthMismatchError,
    ZeroVarianceError,
)

# Relative threshold under which a column's spread counts as zero. Scaled
# by the mean's magnitude so shifted constants (e.g. 1e6 repeated) are
# caught even when rounding leaves sub-ulp wobble.
_VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class Dataset:
    """Immutable table of named float64 columns.

    Attributes
    ----------
    columns : tuple of str
        Column names, in file order.
    values : numpy.ndarray
        Shape (rows, len(columns)) float64 matrix. Treated as read-only.
    """

    columns: tuple
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise ValueError("values must be a 2-d array")
        if vals.shape[1] != len(self.columns):
            raise LengthMismatchError(
                f"{len(self.columns)} column names for {vals.shape[1]} data columns"
            )
        seen = set()
        for name in self.columns:
            if name in seen:
                raise DuplicateColumnError(name)
            seen.add(name)
        vals.setflags(write=False)
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "values", vals)

    @property
    def n_rows(self):
        return self.values.shape[0]

    @property
    def n_cols(self):
        return self.values.shape[1]

    def column(self, name):
        """Return one column as a 1-d array."""
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise KeyError(name) from None
        return self.values[:, idx]


@dataclass(frozen=True)
class ColumnStats:
    """Per-column mean and sample standard deviation (n-1 denominator)."""

    columns: tuple
    means: np.ndarray
    stds: np.ndarray


def load_csv(path, delimiter=","):
    """Load a numeric CSV with a header row into a Dataset.

    Parameters
    ----------
    path : str
        File to read.
    delimiter : str, optional
        Single-character field separator.

    Raises
    ------
    FileNotFoundError
        If the path does not exist.
    CsvParseError
        On a non-numeric or missing cell; positions are 1-based, rows
        counted from the first data row.
    DuplicateColumnError
        If two header fields are equal.
    EmptyBodyError
        If the file holds fewer than two data rows; statistics on the
        result would be undefined.
    """
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyBodyError(path) from None
        names = [h.strip() for h in header]
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateColumnError(name)
            seen.add(name)
        rows = []
        for row_idx, row in enumerate(reader, start=1):
            if len(row) != len(names):
                bad_col = min(len(row), len(names)) + 1
                raise CsvParseError(row_idx, bad_col, "")
            parsed = []
            for col_idx, cell in enumerate(row, start=1):
                text = cell.strip()
                try:
                    val = float(text)
                except ValueError:
                    raise CsvParseError(row_idx, col_idx, cell) from None
                if not math.isfinite(val):
                    raise CsvParseError(row_idx, col_idx, cell)
                parsed.append(val)
            rows.append(parsed)
    if len(rows) < 2:
        raise EmptyBodyError(path)
    return Dataset(tuple(names), np.array(rows, dtype=np.float64))


def write_csv(ds, path, delimiter=","):
    """Write a Dataset as CSV with a header row and LF line endings.

    Values are rendered with repr so a write/load round-trip reproduces
    the float64 payload bit-for-bit.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(ds.columns)
        for row in ds.values:
            writer.writerow([repr(float(v)) for v in row])


def column_stats(ds):
    """Mean and sample std (n-1) of every column.

    Raises
    ------
    ZeroVarianceError
        Naming the first column whose spread is below the relative floor,
        since a constant column has no defined correlation with anything.
    EmptyBodyError
        If the dataset has fewer than 2 rows (sample std needs m >= 2).
    """
    if ds.n_rows < 2:
        raise EmptyBodyError(
            f"need at least 2 rows for sample statistics, got {ds.n_rows}"
        )
    means = ds.values.mean(axis=0)
    stds = ds.values.std(axis=0, ddof=1)
    for j, name in enumerate(ds.columns):
        if stds[j] <= _VARIANCE_FLOOR * (1.0 + abs(means[j])):
            raise ZeroVarianceError(name)
    return ColumnStats(ds.columns, means, stds)


def znormalize(ds):
    """Return a copy with each column centered and scaled to unit sample std."""
    stats = column_stats(ds)
    vals = (ds.values - stats.means) / stats.stds
    return Dataset(ds.columns, vals)
