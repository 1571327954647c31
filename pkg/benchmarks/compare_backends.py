#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on identical inputs through both backends, checks the
outputs agree (exactly for the integer kernels, bitwise for Monte Carlo),
and reports timings.  Needs the compiled extension; build it with
``pip install -e . --no-build-isolation``.

Usage::

    python benchmarks/compare_backends.py [--shapley-n 16] [--rollcall-n 11]
                                          [--mc-n 10] [--samples 200000]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from pivotal import weighted_game
from pivotal._kernels import _fast, reference


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - start, out


def report(label, pure_s, fast_s):
    print(f"{label:<46} pure {pure_s:9.4f}s   compiled {fast_s:9.4f}s   "
          f"speedup {pure_s / fast_s:7.1f}x")


def bench_shapley(n: int) -> None:
    rng = random.Random(1)
    weights = [rng.randint(1, 9) for _ in range(n)]
    quota = sum(weights) // 2 + 1
    game = weighted_game(quota, weights)
    table = [int(v) for v in game.values]
    arr = np.asarray(table, dtype=np.int64)
    pure_s, pure_out = timed(reference.shapley_diff_sums, table, n)
    fast_s, fast_out = timed(_fast.shapley_diff_sums, arr, n)
    assert pure_out == fast_out.tolist()
    report(f"swing sums (voting game, n={n}, 2^n masks)", pure_s, fast_s)


def bench_rollcall(n: int) -> None:
    rng = random.Random(2)
    weights = [rng.randint(1, 9) for _ in range(n)]
    quota = sum(weights) // 2 + 1
    game = weighted_game(quota, weights)
    table = [int(v) for v in game.values]
    arr = np.asarray(table, dtype=np.int64)
    pure_s, pure_out = timed(reference.rollcall_subgame_sums, table, n)
    fast_s, fast_out = timed(_fast.rollcall_subgame_sums, arr, n)
    assert pure_out[0] == fast_out[0].tolist() and pure_out[1] == fast_out[1].tolist()
    report(f"subgame pivot sums (n={n}, ~3^n subsets)", pure_s, fast_s)


def bench_mc(n: int, samples: int) -> None:
    rng = random.Random(3)
    weights = [rng.randint(1, 9) for _ in range(n)]
    quota = sum(weights) // 2 + 1
    game = weighted_game(quota, weights)
    table = [float(v) for v in game.values]
    cum = list(np.linspace(0, 1, 1 << n))
    cum[-1] = 1.0
    state = reference.stream_seed(42, 0)
    pure_s, pure_out = timed(reference.mc_chunk, table, n, 0, cum, samples, state)
    fast_s, fast_out = timed(
        _fast.mc_chunk,
        np.asarray(table, dtype=np.float64),
        n,
        0,
        np.asarray(cum, dtype=np.float64),
        samples,
        state,
    )
    assert pure_out[0] == fast_out[0].tolist()
    assert pure_out[1] == fast_out[1].tolist()
    report(f"Monte Carlo roll calls (n={n}, {samples} samples)", pure_s, fast_s)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--shapley-n", type=int, default=16)
    parser.add_argument("--rollcall-n", type=int, default=11)
    parser.add_argument("--mc-n", type=int, default=10)
    parser.add_argument("--samples", type=int, default=200_000)
    args = parser.parse_args()
    if _fast is None:
        raise SystemExit(
            "compiled kernels unavailable; build them first "
            "(pip install -e . --no-build-isolation) and unset PIVOTAL_PURE"
        )
    bench_shapley(args.shapley_n)
    bench_rollcall(args.rollcall_n)
    bench_mc(args.mc_n, args.samples)


if __name__ == "__main__":
    main()
