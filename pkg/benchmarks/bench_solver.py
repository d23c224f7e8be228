"""Compare the jitted backtracking kernel with its plain-Python source.

Counts proper colorings (up to ``--limit`` per instance) of random disk
triangulations with short lists, so most runs walk the whole search tree.

    python3 benchmarks/bench_solver.py --instances 20 --interior 8
"""

import argparse
import random
import time

import numpy as np

from harmonica import NUMBA_ENABLED
from harmonica._kernels import search
from harmonica.generators import random_disk_triangulation
from harmonica.solver import _Problem


def problems(count, outer, interior, list_size, palette, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        G = random_disk_triangulation(rng, outer, interior)
        L = {v: frozenset(rng.sample(range(1, palette + 1), list_size)) for v in G.vertices}
        out.append(_Problem(G, L))
    return out


def timed(fn, probs, repeat, limit):
    best = float("inf")
    counts = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        counts = [fn(p.indptr, p.indices, p.masks, limit, np.full(len(p.ids), -1, dtype=np.int64)) for p in probs]
        best = min(best, time.perf_counter() - t0)
    return best, counts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--outer", type=int, default=8)
    ap.add_argument("--interior", type=int, default=8)
    ap.add_argument("--list-size", type=int, default=3)
    ap.add_argument("--palette", type=int, default=5)
    ap.add_argument("--limit", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    probs = problems(args.instances, args.outer, args.interior, args.list_size, args.palette, args.seed)
    py_time, py_counts = timed(search.py_func, probs, args.repeat, args.limit)
    print(f"python   {py_time:8.3f} s  colorings={sum(py_counts)}")
    if not NUMBA_ENABLED:
        print("numba disabled; only the fallback was timed")
        return
    search(probs[0].indptr, probs[0].indices, probs[0].masks, 1, np.full(len(probs[0].ids), -1, dtype=np.int64))
    nb_time, nb_counts = timed(search, probs, args.repeat, args.limit)
    assert nb_counts == py_counts, "kernel and fallback disagree"
    print(f"numba    {nb_time:8.3f} s  colorings={sum(nb_counts)}")
    print(f"speedup  {py_time / nb_time:8.1f}x")


if __name__ == "__main__":
    main()
