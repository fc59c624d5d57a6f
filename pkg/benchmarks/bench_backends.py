"""Compare the jitted and pure-numpy kernel backends.

Times each hot kernel on realistic shapes plus the composite
fit-factor-transform path. Jitted functions are warmed before timing so
compilation is excluded. Run:

    python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from corrsynth.kernels import numba_impl as nb
from corrsynth.kernels import numpy_impl as npk

ROWS = 100000
COLS = 64
REPS = 5


def timed_min(fn, reps=REPS):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_inputs(seed=0):
    rng = np.random.default_rng(seed)
    base = rng.standard_normal((ROWS, COLS))
    mix = rng.standard_normal((COLS, COLS)) + 8.0 * np.eye(COLS)
    data = np.ascontiguousarray(base @ mix)
    corr = npk.corr_matrix(data)
    noise = np.ascontiguousarray(rng.standard_normal((ROWS, COLS)))
    return data, corr, noise


def warmup(impl, data, corr, noise):
    small = np.ascontiguousarray(data[:64, :4])
    c4 = impl.corr_matrix(small)
    impl.cholesky_lower(c4, 1e-12)
    impl.smallest_eigenpair_sym(c4, 1e-12, 1600)
    for k in (2, 3, 4):
        impl.min_var_sphere(np.eye(k), 8, np.uint64(1), 0.05, 50, 1e-12)
    low, _ = impl.cholesky_lower(c4, 1e-12)
    impl.solve_lower_rows(low, small[:8])


def bench_backend(name, impl, data, corr, noise):
    low, ok = impl.cholesky_lower(corr, 1e-12)
    assert ok
    rows = {
        f"corr_matrix ({ROWS}x{COLS})": lambda: impl.corr_matrix(data),
        f"cholesky_lower ({COLS}x{COLS})": lambda: impl.cholesky_lower(corr, 1e-12),
        f"smallest_eigenpair ({COLS}x{COLS})": lambda: impl.smallest_eigenpair_sym(
            corr, 1e-12, 100 * COLS * COLS
        ),
        "min_var_sphere (k=3, 10000 trials)": lambda: impl.min_var_sphere(
            corr[:3, :3].copy(), 10000, np.uint64(7), 0.1, 500, 1e-12
        ),
        f"solve_lower_rows ({ROWS}x{COLS})": lambda: impl.solve_lower_rows(low, noise),
    }
    print(f"\n{name}")
    timings = {}
    for label, fn in rows.items():
        t = timed_min(fn)
        timings[label] = t
        print(f"  {label:<38} {t * 1e3:10.2f} ms")
    return timings


def main():
    data, corr, noise = make_inputs()
    for impl in (nb, npk):
        warmup(impl, data, corr, noise)

    t_nb = bench_backend("numba backend", nb, data, corr, noise)
    t_np = bench_backend("numpy backend", npk, data, corr, noise)

    print("\nspeedup (numpy time / numba time)")
    for label in t_nb:
        print(f"  {label:<38} {t_np[label] / t_nb[label]:9.2f}x")


if __name__ == "__main__":
    main()
