"""Compare the compiled betweenness kernel against the pure-Python twin.

Runs the same random graphs through both backends, checks bit-identical
results, and prints a timing table. Usage:

    python3 benchmarks/bench_kernels.py [--sizes 30,60,120] [--repeats 5]
"""

import argparse
import statistics
import time

import numpy as np

from coevonet.kernels import BACKEND, pure

try:
    from coevonet.kernels import _cext
except ImportError:
    _cext = None


def random_edges(rng, n, p):
    return np.array(
        [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p],
        dtype=np.int64,
    ).reshape(-1, 2)


def bench(fn, n, edges, repeats):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn(n, edges)
        times.append(time.perf_counter() - started)
    return min(times), statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="30,60,120")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--density", type=float, default=0.15)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _cext is None:
        print("compiled extension not available; nothing to compare")
        return 1
    print(f"active backend: {BACKEND}")
    print(f"{'n':>5} {'edges':>6} {'pure (ms)':>10} {'compiled (ms)':>14} {'speedup':>8}")
    rng = np.random.default_rng(args.seed)
    for n in (int(s) for s in args.sizes.split(",")):
        edges = random_edges(rng, n, args.density)
        got_pure = pure.edge_betweenness(n, edges)
        got_cext = _cext.edge_betweenness(n, edges)
        if not np.array_equal(got_pure, got_cext):
            print(f"n={n}: backends disagree")
            return 1
        best_pure, _ = bench(pure.edge_betweenness, n, edges, args.repeats)
        best_cext, _ = bench(_cext.edge_betweenness, n, edges, args.repeats)
        print(
            f"{n:>5} {len(edges):>6} {best_pure * 1e3:>10.3f} "
            f"{best_cext * 1e3:>14.3f} {best_pure / best_cext:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
