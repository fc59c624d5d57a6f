"""Backend dispatch for the numeric kernels.

The active backend is resolved once at import time from the
``CORRSYNTH_BACKEND`` environment variable (see :mod:`corrsynth.backend`)
and bound to the names exported here. Both implementations share
signatures and seeding, so swapping backends changes speed, not results
beyond floating-point noise.
"""

from corrsynth.backend import resolve_backend

BACKEND = resolve_backend()

if BACKEND == "numba":
    from corrsynth.kernels import numba_impl as _impl
else:
    from corrsynth.kernels import numpy_impl as _impl

corr_matrix = _impl.corr_matrix
cholesky_lower = _impl.cholesky_lower
smallest_eigenpair_sym = _impl.smallest_eigenpair_sym
min_var_sphere = _impl.min_var_sphere
solve_lower_rows = _impl.solve_lower_rows


def warmup():
    """Run every kernel once on tiny inputs.

    On the numba backend this forces JIT compilation up front so later
    calls are measured without compile latency. Harmless on numpy.
    """
    import numpy as np

    x = np.array([[1.0, 2.0], [2.0, 1.0], [3.0, 4.0], [4.0, 3.0]])
    c = corr_matrix(x)
    cholesky_lower(c, 1e-12)
    smallest_eigenpair_sym(c, 1e-12, 10000)
    for k in (2, 3, 4):
        eye = np.eye(k)
        min_var_sphere(eye, 2, np.uint64(1), 0.1 / k, 10, 1e-12)
    low = np.array([[1.0, 0.0], [0.5, 2.0]])
    solve_lower_rows(low, x)


__all__ = [
    "BACKEND",
    "corr_matrix",
    "cholesky_lower",
    "smallest_eigenpair_sym",
    "min_var_sphere",
    "solve_lower_rows",
    "warmup",
]
