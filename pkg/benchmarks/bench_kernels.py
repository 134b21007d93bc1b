"""Time the compiled and pure-Python Metropolis kernels on the same chain.

    python3 benchmarks/bench_kernels.py [--rank 64] [--colors 2] [--t 1/2] [--steps 200000]

Both kernels consume the same random stream, so the final states must agree.
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from tilekit.sampler import ArrayState, Rng, initial_state, kernel_backend, run_steps


def bench(backend: str, rank: int, colors: int, t: Fraction, steps: int, seed: int):
    state = ArrayState.from_ktiling(initial_state(rank, colors))
    rng = Rng(seed)
    start = time.perf_counter()
    accepted, _ = run_steps(state, t, steps, rng, backend=backend)
    elapsed = time.perf_counter() - start
    return elapsed, accepted, state.P.copy()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=64)
    ap.add_argument("--colors", type=int, default=2)
    ap.add_argument("--t", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    results = {}
    for backend in ("cython", "python"):
        try:
            kernel_backend(backend)
        except RuntimeError:
            print(f"{backend:7s} unavailable")
            continue
        elapsed, accepted, P = bench(backend, args.rank, args.colors, args.t, args.steps,
                                     args.seed)
        results[backend] = (elapsed, P)
        print(f"{backend:7s} {elapsed:8.3f} s  {1e9 * elapsed / args.steps:9.1f} ns/step  "
              f"accepted {accepted}")
    if len(results) == 2:
        same = np.array_equal(results["cython"][1], results["python"][1])
        print(f"speedup {results['python'][0] / results['cython'][0]:.1f}x, "
              f"identical final states: {same}")
        return 0 if same else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
