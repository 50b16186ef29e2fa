"""Time the compiled search kernel against the pure-Python fallback.

Each kernel runs every subtree task of the search at the given orders.
Outputs are compared for equality before timings are reported.

    python benchmarks/bench_kernels.py [--orders 8 9 10] [--repeat 3]
"""

import argparse
import time

from gyrolab.kernel import KERNELS
from gyrolab.search import split_tasks


def run_all(kernel, n, tasks):
    fn = KERNELS[kernel]
    return [fn(n, t.prefix, t.budget) for t in tasks]


def best_of(repeat, fn):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--orders", type=int, nargs="+", default=[8, 9, 10])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    names = sorted(KERNELS)
    if "cython" not in KERNELS:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'order':>5} {'nodes':>9} " + " ".join(f"{k + ' (s)':>12}" for k in names) + f" {'speedup':>8}")
    for n in args.orders:
        tasks, _ = split_tasks(n, 10**9)
        times = {}
        outputs = {}
        for k in names:
            times[k], outputs[k] = best_of(args.repeat, lambda k=k: run_all(k, n, tasks))
        if len({repr(o) for o in outputs.values()}) != 1:
            raise SystemExit(f"order {n}: kernels disagree")
        nodes = sum(o[1] for o in outputs[names[0]])
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{n:>5} {nodes:>9} " + " ".join(f"{times[k]:>12.4f}" for k in names) + f" {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
