"""Compare the numba and numpy prescreen kernels on a genus-4 search workload.

Run:  python3 benchmarks/bench_kernels.py [height]
"""

import sys
import time

import numpy as np

from gfe25 import _kernels

D1T = [189, 1230, 3345, 5340, 6390, 3846, 3060, -60, 705, -120, 36]


def candidate_grid(H):
    ps, qs = [], []
    for q in range(1, H + 1):
        for p in range(-H, H + 1):
            ps.append(p)
            qs.append(q)
    return (np.array(ps, dtype=np.int64) % _kernels.MODULUS,
            np.array(qs, dtype=np.int64) % _kernels.MODULUS)


def bench(fn, cm, ps, qs, repeats=5):
    fn(cm, ps, qs, False)  # warm up (JIT compile / cache touch)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(cm, ps, qs, False)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    H = int(sys.argv[1]) if len(sys.argv) > 1 else 300
    ps, qs = candidate_grid(H)
    cm = np.array([c % _kernels.MODULUS for c in D1T], dtype=np.int64)
    n = len(ps)
    print(f"candidates: {n}  (height {H}, degree {len(D1T) - 1})")

    t_np = bench(_kernels.prescreen_numpy, cm, ps, qs)
    print(f"numpy : {t_np * 1e3:8.2f} ms   {n / t_np / 1e6:6.1f} M pairs/s")

    if _kernels.prescreen_numba is not None:
        t_nb = bench(_kernels.prescreen_numba, cm, ps, qs)
        print(f"numba : {t_nb * 1e3:8.2f} ms   {n / t_nb / 1e6:6.1f} M pairs/s")
        print(f"speedup: {t_np / t_nb:.2f}x")
    else:
        print("numba : not available")

    survivors = int(_kernels.prescreen_numpy(cm, ps, qs, False).sum())
    print(f"prescreen survivors: {survivors} ({100 * survivors / n:.2f}%)")


if __name__ == "__main__":
    main()
