"""Time the numba and numpy kernel backends on the Fock-space hot paths.

Usage: python3 benchmarks/bench_kernels.py [--photons 6] [--repeat 3]
"""

import argparse
import time

import numpy as np

from ssrc_bqc import kernels
from ssrc_bqc.fock import random_sparse_state


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench(N, repeat):
    rng = np.random.default_rng(0)
    n_modes = 2 * N
    state = random_sparse_state(n_modes, N, 20000, rng)
    mode = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    base = N + 2
    rows = []
    for name in ("numpy", "numba"):
        try:
            k = kernels.kernels_for(name)
        except RuntimeError:
            continue
        cases = {
            "raise+merge": lambda: k["merge"](*k["raise"](state.occs, state.amps, mode, base), 1e-12),
            "ladder_sector": lambda: k["ladder_sector"](state.occs, state.amps, mode, True, N + 1, 1e-12),
            "survivors": lambda: k["survivors"](state.occs, N),
        }
        for case, fn in cases.items():
            fn()  # compile / warm caches
            rows.append((name, case, _best_of(fn, repeat)))
    return state.n_terms, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--photons", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    n_terms, rows = bench(args.photons, args.repeat)
    print(f"N={args.photons}, {2 * args.photons} modes, {n_terms} input terms")
    print(f"{'backend':<8} {'kernel':<14} {'seconds':>10}")
    for name, case, t in rows:
        print(f"{name:<8} {case:<14} {t:>10.5f}")


if __name__ == "__main__":
    main()
