"""Compiled vs pure-Python exact-cover kernel on the searched cycle instances.

    python benchmarks/bench_kernels.py [--repeat 3] [--seeds 0 1 2] [--json out.json]

Both kernels get byte-identical inputs (CSR adjacency shuffled by the seed)
and the same step budget; the script checks that their answers agree and
reports the best-of-``repeat`` wall time for each.
"""

from __future__ import annotations

import argparse
import json
import platform
import random
import sys
import time

from hdecomp import _search, kernels
from hdecomp.graphcore import edge, hypercube

INSTANCES = [(4, 3), (6, 3), (6, 4), (6, 5)]  # (n, t): C_{2^t} in Q_n
STEP_LIMIT = 2_000_000
STATUS = {kernels.FOUND: "found", kernels.EXHAUSTED: "exhausted", kernels.LIMIT: "limit"}


def csr(n: int, seed: int):
    g = hypercube(n)
    edges = g.sorted_edges()
    eid = {e: i for i, e in enumerate(edges)}
    rng = random.Random(seed)
    ptr, to, ids = [0], [], []
    for x, nb in enumerate(g.adjacency):
        nb = list(nb)
        rng.shuffle(nb)
        to.extend(nb)
        ids.extend(eid[edge(x, y)] for y in nb)
        ptr.append(len(to))
    return ptr, to, ids, [u for u, _ in edges], [v for _, v in edges]


def best_of(fn, args, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--json", help="also write the rows to this file")
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernel not available; build with `pip install --no-build-isolation -e .`", file=sys.stderr)
        return 1
    compiled = kernels.cycle_cover

    rows = []
    print(f"python {platform.python_version()} on {platform.machine()}, step limit {STEP_LIMIT}")
    print(f"{'instance':<12}{'seed':>5}{'status':>11}{'steps':>10}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for n, t in INSTANCES:
        k = 1 << t
        for seed in args.seeds:
            data = csr(n, seed) + (k, STEP_LIMIT)
            tc, rc = best_of(compiled, data, args.repeat)
            tp, rp = best_of(_search.cycle_cover, data, args.repeat)
            if rc != rp:
                print(f"MISMATCH on Q{n} C{k} seed {seed}", file=sys.stderr)
                return 2
            row = {
                "n": n, "k": k, "seed": seed, "status": STATUS[rc[0]], "steps": rc[2],
                "cython_s": tc, "python_s": tp, "speedup": tp / tc if tc else float("inf"),
            }
            rows.append(row)
            print(f"{f'Q{n} C{k}':<12}{seed:>5}{row['status']:>11}{row['steps']:>10}"
                  f"{tc:>11.4f}{tp:>11.4f}{row['speedup']:>8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
