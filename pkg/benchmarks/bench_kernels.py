"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--N 10000000] [--q 10007] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from shiftsum import kernels
from shiftsum.characters import legendre_character
from shiftsum.decomposition import admissible_blocks, sigma12
from shiftsum.modarith import get_context
from shiftsum.multfunc import build_spf_sieve, make_mobius
from shiftsum.sums import shifted_sum


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--N", type=int, default=10**7)
    ap.add_argument("--q", type=int, default=10007)
    ap.add_argument("--block-N", type=int, default=10**5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    mu = make_mobius()
    chi = legendre_character(get_context(args.q))
    print(f"{'stage':<28}" + "".join(f"{b:>12}" for b in kernels.available_backends()))
    rows: dict[str, list[float]] = {}
    results = {}
    for b in kernels.available_backends():
        sieve = build_spf_sieve(args.N, backend=b)
        rows.setdefault("sieve", []).append(best_of(lambda: build_spf_sieve(args.N, backend=b), args.repeat))
        rows.setdefault("mobius table", []).append(best_of(lambda: mu.table(sieve, backend=b), args.repeat))
        rows.setdefault("shifted_sum", []).append(
            best_of(lambda: shifted_sum(mu, chi, 1, args.N, sieve=sieve, backend=b), args.repeat))
        small = build_spf_sieve(args.block_N, backend=b)
        rows.setdefault(f"sigma12 all r (N={args.block_N})", []).append(best_of(
            lambda: [sigma12(mu, chi, 1, args.block_N, r, sieve=small, backend=b)
                     for r in admissible_blocks(args.block_N)], 1))
        results[b] = shifted_sum(mu, chi, 1, args.N, sieve=sieve, backend=b).exact_value
    for name, ts in rows.items():
        print(f"{name:<28}" + "".join(f"{t:>11.3f}s" for t in ts))
    vals = set(results.values())
    print("backends agree:", len(vals) == 1, results)


if __name__ == "__main__":
    main()
