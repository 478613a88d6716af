"""Time the hot kernels under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is warmed up once (this triggers numba compilation, or loads it
from the on-disk cache) and then timed with ``timeit``; the best of
``--repeat`` runs is reported. Set ETA_RICCATI_DISABLE_NUMBA=1 to see what the
package itself falls back to; this script always compares both when numba is
installed.
"""

import argparse
import math
import timeit

import numpy as np

from eta_riccati.kernels import numba_kernels, numpy_kernels


def cases():
    poly = np.array([0.0, 0.0, 1.0])
    binom = np.array([[math.comb(n, j) for j in range(60)] for n in range(60)], dtype=np.float64)
    phi = np.array([math.log1p(l) ** 2 / (l + 1.0) for l in range(60)])
    return {
        "alt_sum, 10^6 terms": lambda k: k.alt_sum(1.0, 0.5, poly, 0, 1_000_000),
        "difference_triangle, N=60": lambda k: k.difference_triangle(phi, binom),
        "gamma_draws, 10^6 at shape 0.5": lambda k: k.gamma_draws(0.5, 1_000_000, np.random.default_rng(0)),
        "gamma_draws, 10^6 at shape 3": lambda k: k.gamma_draws(3.0, 1_000_000, np.random.default_rng(0)),
    }


def best_time(fn, backend, repeat):
    fn(backend)
    return min(timeit.repeat(lambda: fn(backend), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("numpy", numpy_kernels)]
    if numba_kernels is not None:
        backends.append(("numba", numba_kernels))
    else:
        print("numba not available; timing the numpy backend only")

    width = max(len(name) for name in cases())
    print(f"{'kernel':<{width}}  " + "  ".join(f"{b:>10}" for b, _ in backends) + "   speedup")
    for name, fn in cases().items():
        times = [best_time(fn, mod, args.repeat) for _, mod in backends]
        cells = "  ".join(f"{t * 1e3:8.2f}ms" for t in times)
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
        print(f"{name:<{width}}  {cells}  {speed}")


if __name__ == "__main__":
    main()
