"""Numba-jitted kernel implementations.

Default backend. Every function here has a pure-numpy twin in
:mod:`corrsynth.kernels.numpy_impl` with the same signature and contract;
the two agree to floating-point noise. Kernels are compiled lazily on
first call and cached on disk, so a fresh environment pays the JIT cost
once.
"""

import math

import numpy as np
from numba import njit

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


@njit(cache=True)
def _corr_matrix(x):
    m, n = x.shape
    xt = np.ascontiguousarray(x.T)
    for i in range(n):
        s = 0.0
        for r in range(m):
            s += xt[i, r]
        mu = s / m
        for r in range(m):
            xt[i, r] -= mu
    sq = np.empty(n)
    for i in range(n):
        acc = 0.0
        for r in range(m):
            acc += xt[i, r] * xt[i, r]
        sq[i] = acc
    c = np.empty((n, n))
    for i in range(n):
        c[i, i] = 1.0
        for j in range(i + 1, n):
            acc = 0.0
            for r in range(m):
                acc += xt[i, r] * xt[j, r]
            den = math.sqrt(sq[i] * sq[j])
            if not math.isfinite(den):
                den = math.sqrt(sq[i]) * math.sqrt(sq[j])
            rho = acc / den
            if rho > 1.0:
                rho = 1.0
            elif rho < -1.0:
                rho = -1.0
            c[i, j] = rho
            c[j, i] = rho
    return c


def corr_matrix(x):
    """Pearson correlation matrix of the columns of x; see numpy twin."""
    return _corr_matrix(np.ascontiguousarray(x, dtype=np.float64))


@njit(cache=True)
def _cholesky_lower(a, pivot_tol):
    n = a.shape[0]
    low = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s = a[i, j]
            for t in range(j):
                s -= low[i, t] * low[j, t]
            if i == j:
                if s <= pivot_tol:
                    return low, False
                low[i, i] = math.sqrt(s)
            else:
                low[i, j] = s / low[j, j]
    return low, True


def cholesky_lower(a, pivot_tol):
    """Lower Cholesky factor with pivot-threshold failure; see numpy twin."""
    return _cholesky_lower(np.ascontiguousarray(a, dtype=np.float64), pivot_tol)


@njit(cache=True)
def _jacobi_smallest(a, off_tol, rot_cap):
    n = a.shape[0]
    b = a.copy()
    vecs = np.eye(n)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    thresh = off_tol * math.sqrt(fro)
    rotations = 0
    converged = False
    while True:
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * b[i, j] * b[i, j]
        if math.sqrt(off) <= thresh:
            converged = True
            break
        if rotations >= rot_cap:
            break
        for p in range(n - 1):
            if rotations >= rot_cap:
                break
            for q in range(p + 1, n):
                if rotations >= rot_cap:
                    break
                apq = b[p, q]
                if apq == 0.0:
                    continue
                app = b[p, p]
                aqq = b[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                cth = 1.0 / math.sqrt(1.0 + t * t)
                sth = t * cth
                for i in range(n):
                    if i != p and i != q:
                        bip = b[i, p]
                        biq = b[i, q]
                        b[i, p] = bip * cth - biq * sth
                        b[p, i] = b[i, p]
                        b[i, q] = biq * cth + bip * sth
                        b[q, i] = b[i, q]
                b[p, p] = app - t * apq
                b[q, q] = aqq + t * apq
                b[p, q] = 0.0
                b[q, p] = 0.0
                for i in range(n):
                    vip = vecs[i, p]
                    viq = vecs[i, q]
                    vecs[i, p] = vip * cth - viq * sth
                    vecs[i, q] = viq * cth + vip * sth
                rotations += 1
    idx = 0
    lmin = b[0, 0]
    for i in range(1, n):
        if b[i, i] < lmin:
            lmin = b[i, i]
            idx = i
    v = np.empty(n)
    nrm = 0.0
    for i in range(n):
        v[i] = vecs[i, idx]
        nrm += v[i] * v[i]
    nrm = math.sqrt(nrm)
    for i in range(n):
        v[i] /= nrm
    return lmin, v, converged


def smallest_eigenpair_sym(a, off_tol, rot_cap):
    """Smallest eigenpair via cyclic Jacobi rotations.

    Sweeps all (p, q) pairs, zeroing each off-diagonal entry in turn, until
    the off-diagonal Frobenius norm falls to ``off_tol`` times the input's
    Frobenius norm or ``rot_cap`` rotations have been spent.
    """
    return _jacobi_smallest(np.ascontiguousarray(a, dtype=np.float64), off_tol, rot_cap)


@njit(cache=True)
def _next_u64(state):
    state = state + _GAMMA
    z = state
    z = (z ^ (z >> _SH30)) * _MIX1
    z = (z ^ (z >> _SH27)) * _MIX2
    return state, z ^ (z >> _SH31)


@njit(cache=True)
def _pair_normals(state):
    state, z1 = _next_u64(state)
    state, z2 = _next_u64(state)
    u1 = np.float64((z1 >> _SH11) + _ONE) * _TWO_NEG53
    u2 = np.float64(z2 >> _SH11) * _TWO_NEG53
    rad = math.sqrt(-2.0 * math.log(u1))
    ang = _TWO_PI * u2
    return state, rad * math.cos(ang), rad * math.sin(ang)


@njit(cache=True)
def _min_var_k2(d0, d1, c01, trials, seed_base, step, iters, tol_sq):
    best = np.inf
    for r in range(trials):
        state = seed_base + np.uint64(r)
        state, v0, v1 = _pair_normals(state)
        nrm = math.sqrt(v0 * v0 + v1 * v1)
        if nrm < 1e-300:
            v0 = 1.0
            v1 = 0.0
        else:
            v0 /= nrm
            v1 /= nrm
        for _ in range(iters):
            g0 = d0 * v0 + c01 * v1
            g1 = c01 * v0 + d1 * v1
            ray = v0 * g0 + v1 * g1
            t0 = 2.0 * (g0 - ray * v0)
            t1 = 2.0 * (g1 - ray * v1)
            if t0 * t0 + t1 * t1 <= tol_sq:
                break
            v0 -= step * t0
            v1 -= step * t1
            inv = 1.0 / math.sqrt(v0 * v0 + v1 * v1)
            v0 *= inv
            v1 *= inv
        g0 = d0 * v0 + c01 * v1
        g1 = c01 * v0 + d1 * v1
        ray = v0 * g0 + v1 * g1
        if ray < best:
            best = ray
    return best


@njit(cache=True)
def _min_var_k3(d0, d1, d2, c01, c02, c12, trials, seed_base, step, iters, tol_sq):
    best = np.inf
    for r in range(trials):
        state = seed_base + np.uint64(r)
        state, v0, v1 = _pair_normals(state)
        state, v2, _ = _pair_normals(state)
        nrm = math.sqrt(v0 * v0 + v1 * v1 + v2 * v2)
        if nrm < 1e-300:
            v0 = 1.0
            v1 = 0.0
            v2 = 0.0
        else:
            v0 /= nrm
            v1 /= nrm
            v2 /= nrm
        for _ in range(iters):
            g0 = d0 * v0 + c01 * v1 + c02 * v2
            g1 = c01 * v0 + d1 * v1 + c12 * v2
            g2 = c02 * v0 + c12 * v1 + d2 * v2
            ray = v0 * g0 + v1 * g1 + v2 * g2
            t0 = 2.0 * (g0 - ray * v0)
            t1 = 2.0 * (g1 - ray * v1)
            t2 = 2.0 * (g2 - ray * v2)
            if t0 * t0 + t1 * t1 + t2 * t2 <= tol_sq:
                break
            v0 -= step * t0
            v1 -= step * t1
            v2 -= step * t2
            inv = 1.0 / math.sqrt(v0 * v0 + v1 * v1 + v2 * v2)
            v0 *= inv
            v1 *= inv
            v2 *= inv
        g0 = d0 * v0 + c01 * v1 + c02 * v2
        g1 = c01 * v0 + d1 * v1 + c12 * v2
        g2 = c02 * v0 + c12 * v1 + d2 * v2
        ray = v0 * g0 + v1 * g1 + v2 * g2
        if ray < best:
            best = ray
    return best


@njit(cache=True)
def _min_var_general(c, trials, seed_base, step, iters, tol_sq):
    k = c.shape[0]
    v = np.empty(k)
    g = np.empty(k)
    best = np.inf
    for r in range(trials):
        state = seed_base + np.uint64(r)
        idx = 0
        while idx < k:
            state, n1, n2 = _pair_normals(state)
            v[idx] = n1
            idx += 1
            if idx < k:
                v[idx] = n2
                idx += 1
        nrm = 0.0
        for i in range(k):
            nrm += v[i] * v[i]
        nrm = math.sqrt(nrm)
        if nrm < 1e-300:
            for i in range(k):
                v[i] = 0.0
            v[0] = 1.0
        else:
            for i in range(k):
                v[i] /= nrm
        for _ in range(iters):
            ray = 0.0
            for i in range(k):
                acc = 0.0
                for j in range(k):
                    acc += c[i, j] * v[j]
                g[i] = acc
                ray += v[i] * acc
            tn = 0.0
            for i in range(k):
                ti = 2.0 * (g[i] - ray * v[i])
                g[i] = ti
                tn += ti * ti
            if tn <= tol_sq:
                break
            nrm = 0.0
            for i in range(k):
                v[i] -= step * g[i]
                nrm += v[i] * v[i]
            inv = 1.0 / math.sqrt(nrm)
            for i in range(k):
                v[i] *= inv
        ray = 0.0
        for i in range(k):
            acc = 0.0
            for j in range(k):
                acc += c[i, j] * v[j]
            ray += v[i] * acc
        if ray < best:
            best = ray
    return best


def min_var_sphere(c, trials, seed_base, step, iters, tol_sq):
    """Minimum of v'Cv over unit vectors, by multi-start projected descent.

    Trial r starts from Box-Muller normals seeded with ``seed_base + r`` and
    descends independently, so results do not depend on evaluation order.
    k = 2 and k = 3 run fully in scalar registers; larger k falls back to a
    generic array kernel.
    """
    c = np.ascontiguousarray(c, dtype=np.float64)
    k = c.shape[0]
    if k == 2:
        return _min_var_k2(
            c[0, 0], c[1, 1], c[0, 1], trials, seed_base, step, iters, tol_sq
        )
    if k == 3:
        return _min_var_k3(
            c[0, 0], c[1, 1], c[2, 2], c[0, 1], c[0, 2], c[1, 2],
            trials, seed_base, step, iters, tol_sq,
        )
    return _min_var_general(c, trials, seed_base, step, iters, tol_sq)


@njit(cache=True)
def _solve_lower_rows(low, b):
    m, n = b.shape
    w = np.empty_like(b)
    for r in range(m):
        for i in range(n):
            acc = b[r, i]
            for j in range(i):
                acc -= low[i, j] * w[r, j]
            w[r, i] = acc / low[i, i]
    return w


def solve_lower_rows(low, b):
    """Solve ``w @ low.T == b`` by row-wise forward substitution."""
    return _solve_lower_rows(
        np.ascontiguousarray(low, dtype=np.float64),
        np.ascontiguousarray(b, dtype=np.float64),
    )
