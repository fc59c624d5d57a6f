"""Pure-numpy kernel implementations.

Fallback backend used when numba is unavailable or the env flag forces it.
Same contracts as :mod:`corrsynth.kernels.numba_impl`; large-m operations
lean on BLAS instead of explicit loops.
"""

import numpy as np

# splitmix64 constants, shared with the numba backend so both derive the
# same per-trial start vectors from the same sub-seed.
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SH30 = np.uint64(30)
_SH27 = np.uint64(27)
_SH31 = np.uint64(31)
_SH11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO_NEG53 = 2.0 ** -53
_TWO_PI = 2.0 * np.pi


def corr_matrix(x):
    """Pearson correlation matrix of the columns of x (m rows, n columns).

    Two-pass form: column means first, then centered cross products via a
    Gram product. The upper triangle is mirrored onto the lower one so the
    result is symmetric bit-for-bit, the diagonal is exactly 1, and
    off-diagonal entries are clamped to [-1, 1].

    Columns must be non-constant; the caller screens for zero variance.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[1]
    xc = x - x.mean(axis=0)
    g = xc.T @ xc
    sq = np.diag(g).copy()
    den = np.sqrt(np.outer(sq, sq))
    if not np.all(np.isfinite(den)):
        # outer product overflowed for extreme column scales
        root = np.sqrt(sq)
        den = np.outer(root, root)
    c = g / den
    iu, ju = np.triu_indices(n, 1)
    c[ju, iu] = c[iu, ju]
    np.fill_diagonal(c, 1.0)
    np.clip(c, -1.0, 1.0, out=c)
    return c


def cholesky_lower(a, pivot_tol):
    """Lower-triangular Cholesky factor of symmetric a.

    Returns ``(L, ok)``. ``ok`` is False as soon as a pivot drops to
    ``pivot_tol`` or below, signalling that the matrix is not numerically
    positive-definite at that threshold; L is then only partially filled.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        d = a[j, j] - low[j, :j] @ low[j, :j]
        if d <= pivot_tol:
            return low, False
        low[j, j] = np.sqrt(d)
        low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low, True


def smallest_eigenpair_sym(a, off_tol, rot_cap):
    """Smallest eigenvalue and a unit eigenvector of symmetric a.

    Backed by LAPACK through ``np.linalg.eigh``; ``off_tol`` and ``rot_cap``
    exist for signature parity with the numba Jacobi kernel and are unused.
    """
    del off_tol, rot_cap
    w, vecs = np.linalg.eigh(np.asarray(a, dtype=np.float64))
    v = vecs[:, 0]
    return float(w[0]), v / np.sqrt(v @ v), True


def _next_u64(state):
    state = state + _GAMMA
    z = state
    z = (z ^ (z >> _SH30)) * _MIX1
    z = (z ^ (z >> _SH27)) * _MIX2
    return state, z ^ (z >> _SH31)


def sphere_starts(k, trials, seed_base):
    """Unit start vectors, one column per trial.

    Trial r draws standard normals via Box-Muller from a splitmix64 stream
    seeded with ``seed_base + r``, so the set of starts is independent of
    evaluation order.
    """
    with np.errstate(over="ignore"):
        state = np.full(trials, seed_base, dtype=np.uint64) + np.arange(
            trials, dtype=np.uint64
        )
        v = np.empty((k, trials))
        idx = 0
        while idx < k:
            state, z1 = _next_u64(state)
            state, z2 = _next_u64(state)
            u1 = ((z1 >> _SH11) + _ONE).astype(np.float64) * _TWO_NEG53
            u2 = (z2 >> _SH11).astype(np.float64) * _TWO_NEG53
            rad = np.sqrt(-2.0 * np.log(u1))
            ang = _TWO_PI * u2
            v[idx] = rad * np.cos(ang)
            idx += 1
            if idx < k:
                v[idx] = rad * np.sin(ang)
                idx += 1
    nrm = np.sqrt((v * v).sum(axis=0))
    tiny = nrm < 1e-300
    if tiny.any():
        v[:, tiny] = 0.0
        v[0, tiny] = 1.0
        nrm[tiny] = 1.0
    return v / nrm


def min_var_sphere(c, trials, seed_base, step, iters, tol_sq):
    """Minimum of v'Cv over unit vectors, by multi-start projected descent.

    All trials advance together as columns of a (k, trials) matrix, but a
    trial stops moving the moment its own squared tangent gradient falls
    to ``tol_sq``, so each trajectory is a pure function of its sub-seed
    and the result never depends on which trials share a batch. Returns
    the smallest Rayleigh quotient reached by any trial.
    """
    c = np.asarray(c, dtype=np.float64)
    v = sphere_starts(c.shape[0], trials, seed_base)
    active = np.ones(trials, dtype=bool)
    for _ in range(iters):
        g = c @ v
        ray = (v * g).sum(axis=0)
        t = 2.0 * (g - ray * v)
        active &= (t * t).sum(axis=0) > tol_sq
        if not active.any():
            break
        upd = v[:, active] - step * t[:, active]
        upd /= np.sqrt((upd * upd).sum(axis=0))
        v[:, active] = upd
    ray = (v * (c @ v)).sum(axis=0)
    return float(ray.min())


def solve_lower_rows(low, b):
    """Solve ``w @ low.T == b`` for w, with low lower-triangular.

    Forward substitution across columns; each output column is a BLAS
    vector operation over all m rows at once.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.shape[1]
    w = np.empty_like(b)
    for i in range(n):
        w[:, i] = (b[:, i] - w[:, :i] @ low[i, :i]) / low[i, i]
    return w
