"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Compilation happens once before timing. Each row also reports the largest
relative disagreement between the two backends.
"""
import argparse
import math
import timeit

import numpy as np

from noisetemp import kernels


def _rel(a, b):
    return max(abs(x - y) / max(abs(x), abs(y), 1e-300) for x, y in zip(a, b))


def cases():
    for n in (10 ** 3, 10 ** 5, 10 ** 6):
        args = (n, 1.0 / n, 3.0, math.log(2.0), 0.3 * n)
        yield (f"power_law_moments n={n:>7}",
               lambda a=args: kernels.power_law_moments_numba(*a),
               lambda a=args: kernels._power_law_moments_numpy(*a))
    rng = np.random.default_rng(0)
    for k in (10, 1000, 100_000):
        e = np.sort(rng.uniform(0.1, 10.0, k))
        g = rng.uniform(0.0, 2.0, k)
        yield (f"level_moments     k={k:>7}",
               lambda e=e, g=g: kernels.level_moments_numba(e, g, 0.7),
               lambda e=e, g=g: kernels._level_moments_numpy(e, g, 0.7))
    for dim in (4, 16, 32):
        m = rng.normal(size=(dim, dim))
        m = m + m.T
        yield (f"jacobi            d={dim:>7}",
               lambda m=m: kernels.symmetric_eigvals(m, jacobi=kernels.jacobi_numba),
               lambda m=m: kernels.symmetric_eigvals(m, jacobi=kernels._jacobi_numpy))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is disabled or missing; nothing to compare")
    print(f"{'kernel':<28}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>9}{'max rel diff':>14}")
    for name, fast, slow in cases():
        a, b = fast(), slow()     # warm-up, and compile on first call
        diff = _rel(np.ravel(a), np.ravel(b))
        t_fast = min(timeit.repeat(fast, number=1, repeat=args.repeat)) * 1e3
        t_slow = min(timeit.repeat(slow, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<28}{t_fast:>12.3f}{t_slow:>12.3f}{t_slow / t_fast:>8.1f}x{diff:>14.2e}")


if __name__ == "__main__":
    main()
