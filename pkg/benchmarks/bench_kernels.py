"""Benchmark the two state-vector kernel backends against each other.

Times each gate kernel on random normalized states across a range of qubit
counts and prints a per-kernel table of medians plus the numba speedup over
the numpy fallback. The same table can be produced for either backend alone.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --qubits 12 16 20 --repeats 9

The numba backend compiles on first call (cached on disk afterwards); a
warmup pass keeps compilation out of the timings.
"""

from __future__ import annotations

import argparse
import math
import statistics
import time

import numpy as np

from pqmlab.kernels import numba_backend, numpy_backend


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return np.ascontiguousarray(amps / np.linalg.norm(amps))


def kernel_calls(n: int):
    """(name, function-name, args) triples exercising every kernel; qubit
    choices put controls and targets on different axes."""
    t, c = n - 1, 0
    mask = (1 << c) | (1 << (n // 2))
    sq2 = 1.0 / math.sqrt(2.0)
    return [
        ("x", "apply_x", (t,)),
        ("h", "apply_h", (t,)),
        ("mcx", "apply_mcx", (mask, t)),
        ("phase0", "apply_phase0", (t, complex(math.cos(0.3), math.sin(0.3)))),
        ("cphase0", "apply_cphase0", (c, t, complex(math.cos(0.3), math.sin(0.3)))),
        ("cs", "apply_cs", (c, t, sq2, sq2)),
        ("prob_one", "prob_one", (t,)),
    ]


def time_call(fn, amps: np.ndarray, n: int, args: tuple, repeats: int) -> float:
    """Median seconds per call; the state is copied out of the timing so
    mutation does not compound across repeats."""
    samples = []
    for _ in range(repeats):
        work = amps.copy()
        start = time.perf_counter()
        fn(work, n, *args)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[10, 14, 18, 20])
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    backends = [numpy_backend, numba_backend]

    # compile/warm every kernel once at the smallest size
    warm = random_state(rng, min(args.qubits))
    for backend in backends:
        for _, fn_name, call_args in kernel_calls(min(args.qubits)):
            getattr(backend, fn_name)(warm.copy(), min(args.qubits), *call_args)

    header = f"{'kernel':<10} {'qubits':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in args.qubits:
        amps = random_state(rng, n)
        for name, fn_name, call_args in kernel_calls(n):
            per = {
                backend.NAME: time_call(getattr(backend, fn_name), amps, n,
                                        call_args, args.repeats)
                for backend in backends
            }
            speedup = per["numpy"] / per["numba"] if per["numba"] > 0 else float("inf")
            print(f"{name:<10} {n:>6} {per['numpy'] * 1e3:>10.3f} "
                  f"{per['numba'] * 1e3:>10.3f} {speedup:>8.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
