#!/usr/bin/env python3
"""numpy vs numba timings for the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row checks that both backends return the same result before timing.
"""
import argparse
import time

import numpy as np

from skewviz import _accel, _kernels
from skewviz.stats import make_sample, median


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def centred(n, rng):
    s = make_sample(rng.gamma(0.5, size=n))
    return _kernels.split_centered(s.values, median(s))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.numba_available():
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)

    # compile outside the timed region
    zp, zm = centred(50, rng)
    _kernels.medcouple_naive_numba(zp, zm)
    _kernels.select_desc_numba(zp, zm, 3)
    _kernels.kde_sums_numba(np.sort(rng.normal(size=10)), np.linspace(-1, 1, 4), 0.5)

    cases = []
    for n in (200, 1000, 3000):
        zp, zm = centred(n, rng)
        rank = zp.size * zm.size // 2
        cases.append((f"medcouple naive  n={n}",
                      lambda zp=zp, zm=zm: _kernels.medcouple_naive_numpy(zp, zm),
                      lambda zp=zp, zm=zm: _kernels.medcouple_naive_numba(zp, zm)))
        cases.append((f"select rank n={n}",
                      lambda zp=zp, zm=zm, r=rank: _kernels.select_desc_numpy(zp, zm, r),
                      lambda zp=zp, zm=zm, r=rank: _kernels.select_desc_numba(zp, zm, r)))
    for n in (20_000, 100_000):
        zp, zm = centred(n, rng)
        rank = zp.size * zm.size // 2
        cases.append((f"select rank n={n}",
                      lambda zp=zp, zm=zm, r=rank: _kernels.select_desc_numpy(zp, zm, r),
                      lambda zp=zp, zm=zm, r=rank: _kernels.select_desc_numba(zp, zm, r)))
    for n in (1_000, 10_000, 100_000):
        x = np.sort(rng.gamma(0.5, size=n))
        grid = np.linspace(x[0] - 1, x[-1] + 1, 512)
        h = 3.5 * x.std(ddof=1) / np.cbrt(n)
        cases.append((f"kde sums n={n}",
                      lambda x=x, g=grid, h=h: _kernels.kde_sums_numpy(x, g, h),
                      lambda x=x, g=grid, h=h: _kernels.kde_sums_numba(x, g, h)))

    print(f"{'case':<26}{'numpy (s)':>11}{'numba (s)':>11}{'speedup':>9}  same")
    print("-" * 64)
    for name, plain, compiled in cases:
        t_np, a = best_of(plain, args.repeat)
        t_nb, b = best_of(compiled, args.repeat)
        same = np.array_equal(a, b) if np.ndim(a) == 0 else np.allclose(a, b, rtol=1e-13, atol=0)
        print(f"{name:<26}{t_np:>11.4f}{t_nb:>11.4f}{t_np / t_nb:>8.1f}x  {'yes' if same else 'NO'}")
    print(f"\nauto-dispatch threshold: {_accel.MIN_WORK:,} units of work")


if __name__ == "__main__":
    main()
