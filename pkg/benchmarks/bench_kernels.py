"""Compare the compiled kernels against the pure-Python fallback.

Run as a script; prints one row per kernel with both timings and the ratio.
The workloads mirror the hot paths: canonical labeling over every 6-vertex
class, an induced-subgraph batch, maximum clique on random graphs, the
ascent loop at two alphas, and power iteration.
"""

import time

import numpy as np

from herext import _kernel as pure
from herext.verify import all_graphs_up_to, random_graphs

try:
    from herext import _ckernel as fast
except ImportError:
    fast = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    classes6 = [g for g in all_graphs_up_to(6) if g.n == 6]
    rand10 = random_graphs(10, 40, seed=3)
    rand8 = random_graphs(8, 12, seed=4)
    patterns = [h for h in all_graphs_up_to(4) if 2 <= h.n <= 4]
    hosts = random_graphs(8, 10, seed=5)
    rng = np.random.default_rng(12)
    starts = {g: rng.random(g.n) for g in rand8}

    def canonical(mod):
        return lambda: [mod.canonical_rows(g.rows, g.n) for g in classes6]

    def clique(mod):
        return lambda: [mod.max_clique(g.rows, g.n) for g in rand10]

    def induced(mod):
        return lambda: [
            mod.contains_induced(g.rows, g.n, h.rows, h.n)
            for g in hosts
            for h in patterns
        ]

    def ascent(mod, alpha):
        def run():
            for g in rand8:
                mod.ascent(g.adjacency_matrix(), alpha, starts[g].copy())

        return run

    def power(mod):
        return lambda: [mod.power_iteration(g.adjacency_matrix()) for g in rand10]

    return [
        ("canonical labeling, 156 classes n=6", canonical),
        ("maximum clique, 40 random n=10", clique),
        ("induced-subgraph batch, 10x12", induced),
        ("ascent alpha=1.25, 12 random n=8", lambda mod: ascent(mod, 1.25)),
        ("ascent alpha=2, 12 random n=8", lambda mod: ascent(mod, 2.0)),
        ("power iteration, 40 random n=10", power),
    ]


def main():
    if fast is None:
        print("compiled backend unavailable; timing the fallback only")
    rows = []
    for name, make in workloads():
        tp = timeit(make(pure))
        if fast is not None:
            tc = timeit(make(fast))
            rows.append((name, tp, tc, tp / tc))
        else:
            rows.append((name, tp, None, None))
    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'python':>10}  {'c':>10}  {'ratio':>7}"
    print(header)
    print("-" * len(header))
    for name, tp, tc, ratio in rows:
        if tc is None:
            print(f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {'-':>10}  {'-':>7}")
        else:
            print(f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {tc * 1e3:>8.2f}ms  {ratio:>6.1f}x")


if __name__ == "__main__":
    main()
