"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_backends.py [--repeat N]

Prints per-call kernel timings on a two-qubit group and the wall time of the
56-point oracle-mode sweep for each available backend.
"""

import argparse
import time
import timeit

from gewi.cli import run_sweep
from gewi.qsim import available_backends, resolve_backend
from gewi.traffic import ExperimentConfig

S = 2 ** -0.5
BELL = [complex(S), 0j, 0j, complex(S)]

KERNEL_CALLS = {
    "kron": lambda k: k.kron([1 + 0j, 0j], [S + 0j, S + 0j]),
    "apply_x": lambda k: k.apply_x(BELL, 2, 1),
    "apply_z": lambda k: k.apply_z(BELL, 2, 0),
    "apply_h": lambda k: k.apply_h(BELL, 2, 0),
    "apply_cnot": lambda k: k.apply_cnot(BELL, 2, 0, 1),
    "prob_one": lambda k: k.prob_one(BELL, 2, 0),
    "collapse": lambda k: k.collapse(BELL, 2, 0, 1, 0.5),
}


def bench_kernels(number):
    rows = {}
    for name in available_backends():
        k = resolve_backend(name)
        for op, call in KERNEL_CALLS.items():
            t = min(timeit.repeat(lambda: call(k), number=number, repeat=5))
            rows.setdefault(op, {})[name] = t / number * 1e9
    return rows


def bench_sweep(repeat):
    grid = [
        ExperimentConfig(b, 10, 168, l, mode="oracle")
        for b in (1, 3, 5, 10)
        for l in range(0, 105, 8)
    ]
    out = {}
    for name in available_backends():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            run_sweep(grid, backend=name)
            best = min(best, time.perf_counter() - t0)
        out[name] = best
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--number", type=int, default=100_000)
    args = ap.parse_args()

    backends = available_backends()
    print("kernel (ns/call)  " + "  ".join(f"{b:>9}" for b in backends) + "  speedup")
    for op, times in bench_kernels(args.number).items():
        cells = "  ".join(f"{times[b]:9.1f}" for b in backends)
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{op:<16}  {cells}  {speed:6.2f}x")

    sweep = bench_sweep(args.repeat)
    print()
    print("56-point sweep (s) " + "  ".join(f"{b}={sweep[b]:.2f}" for b in backends))
    if "cython" in sweep:
        print(f"end-to-end speedup {sweep['python'] / sweep['cython']:.2f}x")


if __name__ == "__main__":
    main()
