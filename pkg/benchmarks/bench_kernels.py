"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from fuglede import _pykernels, kernels
from fuglede.field import group_tables

try:
    from fuglede import _kernels as compiled
except ImportError:
    compiled = None


def workloads(rng):
    t = group_tables(3, 3)
    sets = [sorted(rng.choice(t.size, size=9, replace=False).tolist()) for _ in range(40)]

    def cliques(mod):
        # spectrum-style search: a 9-clique on the zero cone of random 9-sets in Z_3^3
        for pts in sets:
            zero = mod.zero_cone_mask(pts, t.dot, 3)
            adj = kernels.difference_graph(t, zero)
            mod.find_cliques(adj, zero, 8, 10**6, 1)

    def directions(mod):
        for pts in sets:
            mod.direction_mask(pts, t.sub)

    A = rng.random((90, 90)) < 0.5
    A = np.triu(A, 1)
    A = A | A.T
    dense = [_pykernels.mask_from_bool(A[i]) for i in range(90)]

    def all_cliques(mod):
        mod.find_cliques(dense, (1 << 90) - 1, 6, 10**8, 10**8)

    rows = rng.integers(0, 3, size=(400, 12)).tolist()
    return {
        "zero cones + clique search, Z_3^3": cliques,
        "all 6-cliques, G(90, 1/2)": all_cliques,
        "direction masks, Z_3^3": directions,
        "complete mappings, p = 11": lambda mod: mod.complete_mappings(11),
        "balanced adjacency, 400 rows": lambda mod: mod.balanced_adjacency(rows, 3),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if compiled is None:
        print("compiled extension not built; only the fallback is timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'workload':40s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:40s} {t_py:11.4f} {'-':>11s} {'-':>8s}")
            continue
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:40s} {t_py:11.4f} {t_c:11.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
