"""Multipole correlation of feature subsets.

The multipole value of a k-subset is 1 minus the smallest eigenvalue of
the subset's correlation matrix: 0 for mutually independent features,
1 when some unit-weight combination of the z-normalized features has zero
variance (perfect linear dependence). Two routes are provided on purpose:
the eigenvalue formula, and a direct variance minimizer over the unit
sphere that never touches the eigensolver, so each can check the other.
"""

from dataclasses import dataclass

import numpy as np

from corrsynth import kernels
from corrsynth.dataset import Dataset, column_stats
from corrsynth.errors import InvalidSubsetError
from corrsynth.linalg import smallest_eigenpair

# Descent controls for the oracle: step 0.1/k, at most 500 iterations per
# restart, stop when the squared tangent-gradient norm drops to 1e-12.
ORACLE_STEP_FACTOR = 0.1
ORACLE_ITERS = 500
ORACLE_TOL_SQ = 1e-12

_U64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class MultipoleResult:
    """Multipole value with the variance-minimizing weight vector.

    value is clamped to [0, 1]; minimizer is a unit vector over the subset
    columns; subset preserves the caller's index order.
    """

    value: float
    minimizer: np.ndarray
    subset: tuple


def _check_subset(n_cols, subset):
    subset = tuple(int(i) for i in subset)
    if len(subset) < 2:
        raise InvalidSubsetError(f"need at least 2 columns, got {len(subset)}")
    if len(set(subset)) != len(subset):
        raise InvalidSubsetError(f"repeated index in {subset}")
    for i in subset:
        if i < 0 or i >= n_cols:
            raise InvalidSubsetError(f"index {i} out of range for {n_cols} columns")
    return subset


def _subset_corr(d, subset):
    sub = Dataset(
        tuple(d.columns[i] for i in subset),
        d.values[:, list(subset)],
    )
    column_stats(sub)
    return kernels.corr_matrix(sub.values)


def multipole_from_corr(entries, subset=None):
    """Multipole value of an already-computed correlation (sub)matrix.

    ``entries`` is a symmetric correlation matrix (ndarray or CorrMatrix);
    ``subset`` selects a principal submatrix first when given. Returns a
    MultipoleResult whose subset field records the selected indices.
    """
    ent = getattr(entries, "entries", entries)
    ent = np.asarray(ent, dtype=np.float64)
    if subset is None:
        subset = tuple(range(ent.shape[0]))
        sub = ent
    else:
        subset = _check_subset(ent.shape[0], subset)
        idx = list(subset)
        sub = np.ascontiguousarray(ent[np.ix_(idx, idx)])
    eig = smallest_eigenpair(sub)
    value = min(1.0, max(0.0, 1.0 - eig.lambda_min))
    return MultipoleResult(value, eig.eigvec_min, subset)


def multipole(d, subset):
    """Multipole correlation of the given dataset columns.

    Computes the k x k correlation matrix of the subset columns from the
    raw values, then 1 - lambda_min. The minimizer is the eigenvector of
    that smallest eigenvalue: the unit weighting whose projected variance
    is lowest.

    Raises
    ------
    InvalidSubsetError
        If the subset has fewer than 2 indices, repeats, or an index out
        of range.
    ZeroVarianceError
        If a subset column is constant.
    """
    subset = _check_subset(d.n_cols, subset)
    c = _subset_corr(d, subset)
    eig = smallest_eigenpair(c)
    value = min(1.0, max(0.0, 1.0 - eig.lambda_min))
    return MultipoleResult(value, eig.eigvec_min, subset)


def multipole_oracle(d, subset, trials=1000, seed=0):
    """Multipole by direct minimization, bypassing the eigensolver.

    Runs ``trials`` independent projected-gradient descents of the
    projected variance v'Cv over the unit sphere and returns 1 minus the
    best minimum found. Trial r starts from a point derived from
    ``seed + r``, so the result is independent of evaluation order. The
    returned value approaches multipole(d, subset).value from below as
    trials grow.
    """
    subset = _check_subset(d.n_cols, subset)
    if trials < 1:
        raise InvalidSubsetError(f"trials must be >= 1, got {trials}")
    c = _subset_corr(d, subset)
    k = len(subset)
    seed_base = np.uint64(int(seed) & _U64_MASK)
    best = kernels.min_var_sphere(
        c, trials, seed_base, ORACLE_STEP_FACTOR / k, ORACLE_ITERS, ORACLE_TOL_SQ
    )
    return 1.0 - float(best)
