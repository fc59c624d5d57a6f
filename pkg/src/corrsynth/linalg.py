"""Dense symmetric linear algebra for small matrices.

Two jobs: Cholesky factorization with a diagonal-jitter ladder for
correlation matrices that are semi-definite but not definite, and the
smallest eigenpair of a symmetric matrix.
"""

from dataclasses import dataclass

import numpy as np

from corrsynth import kernels
from corrsynth.errors import ConvergenceError, NotPositiveSemiDefiniteError

# A Cholesky pivot at or below this counts as failure. Absolute, not
# relative: inputs are correlation matrices with unit diagonal, and a
# duplicated column can leave a pivot of a few ulps that must be treated
# as rank deficiency, not factored through.
PIVOT_TOL = 1e-12

# Jacobi sweep controls: stop when the off-diagonal Frobenius norm falls
# below OFF_TOL times the input norm, give up after ROT_CAP_FACTOR * n^2
# rotations.
OFF_TOL = 1e-12
ROT_CAP_FACTOR = 100


@dataclass(frozen=True)
class JitterPolicy:
    """Diagonal jitter ladder: 0, then start, scaling by factor up to max."""

    start: float = 1e-10
    factor: float = 10.0
    max: float = 1e-6

    def ladder(self):
        yield 0.0
        j = self.start
        while j <= self.max * (1.0 + 1e-15):
            yield j
            j *= self.factor


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular factor L with LL^T reconstructing the input."""

    lower: np.ndarray

    def __post_init__(self):
        low = np.asarray(self.lower, dtype=np.float64)
        if low.ndim != 2 or low.shape[0] != low.shape[1]:
            raise ValueError("factor must be square")
        if np.any(np.triu(low, k=1) != 0.0):
            raise ValueError("factor must be lower triangular")
        if np.any(np.diag(low) <= 0.0):
            raise ValueError("factor diagonal must be strictly positive")
        low.setflags(write=False)
        object.__setattr__(self, "lower", low)

    @property
    def dim(self):
        return self.lower.shape[0]


@dataclass(frozen=True)
class EigenResult:
    """Smallest eigenvalue and a corresponding unit eigenvector."""

    lambda_min: float
    eigvec_min: np.ndarray


def _entries(c):
    ent = getattr(c, "entries", c)
    return np.ascontiguousarray(ent, dtype=np.float64)


def cholesky(c, jitter_policy=JitterPolicy()):
    """Factor a correlation matrix, climbing the jitter ladder on failure.

    Tries C, then C + j*I for each ladder jitter j, and returns the first
    factor that succeeds together with the jitter that produced it. Jitter
    perturbs downstream correlations by at most its own magnitude, so the
    applied value is reported rather than hidden.

    Returns
    -------
    (CholeskyFactor, float)
        The factor and the applied jitter (0.0 for a positive-definite
        input).

    Raises
    ------
    NotPositiveSemiDefiniteError
        If factorization still fails at the ladder maximum.
    """
    a = _entries(c)
    for j in jitter_policy.ladder():
        attempt = a if j == 0.0 else a + j * np.eye(a.shape[0])
        low, ok = kernels.cholesky_lower(attempt, PIVOT_TOL)
        if ok:
            return CholeskyFactor(low), j
    raise NotPositiveSemiDefiniteError(
        f"factorization failed at maximum jitter {jitter_policy.max:g}"
    )


def smallest_eigenpair(c):
    """Smallest eigenvalue and unit eigenvector of a symmetric matrix.

    Accepts a CorrMatrix or any symmetric ndarray. The residual
    ||C v - lambda v|| is checked against 1e-10 * n; exceeding it raises
    ConvergenceError, which on sane inputs indicates a bug, not a tuning
    problem.
    """
    a = _entries(c)
    n = a.shape[0]
    lam, vec, converged = kernels.smallest_eigenpair_sym(
        a, OFF_TOL, ROT_CAP_FACTOR * n * n
    )
    residual = float(np.linalg.norm(a @ vec - lam * vec))
    if not converged or residual > 1e-10 * n:
        raise ConvergenceError(
            f"eigen iteration stopped with residual {residual:.3e}"
        )
    return EigenResult(float(lam), vec)
