"""Backtracking kernels over compiled list-coloring problems.

A problem is ``n`` vertices in CSR form (``indptr``, ``indices``) and one
int64 bitmask per vertex (bit ``c`` set iff color ``c`` is allowed).
Search is forward-checking with dynamic fail-first vertex choice (smallest
live domain, ties to the lowest index) and ascending colors.
"""

import numpy as np

from ._accel import jit


@jit
def popcount(x):
    n = 0
    while x:
        x &= x - 1
        n += 1
    return n


@jit
def _pick(dom, assigned, depth, n):
    best = -1
    best_size = 64
    for v in range(n):
        if assigned[v] < 0:
            s = popcount(dom[depth, v])
            if s < best_size:
                best_size = s
                best = v
    return best


@jit
def search(indptr, indices, masks, limit, out):
    """Count proper list colorings, stopping once ``limit`` are found.

    The first coloring found is written to ``out`` (color per vertex).
    ``limit <= 0`` counts everything.
    """
    n = masks.shape[0]
    if n == 0:
        return 1
    for v in range(n):
        if masks[v] == 0:
            return 0
    dom = np.empty((n + 1, n), dtype=np.int64)
    for v in range(n):
        dom[0, v] = masks[v]
    assigned = np.full(n, -1, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    tried = np.zeros(n, dtype=np.int64)
    count = 0
    depth = 0
    order[0] = _pick(dom, assigned, 0, n)
    while depth >= 0:
        v = order[depth]
        remaining = dom[depth, v] & ~tried[depth]
        if remaining == 0:
            assigned[v] = -1
            depth -= 1
            continue
        bit = remaining & -remaining
        tried[depth] |= bit
        c = 0
        while (bit >> c) != 1:
            c += 1
        assigned[v] = c
        nxt = depth + 1
        for u in range(n):
            dom[nxt, u] = dom[depth, u]
        dom[nxt, v] = bit
        ok = True
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if assigned[u] < 0:
                dom[nxt, u] &= ~bit
                if dom[nxt, u] == 0:
                    ok = False
                    break
        if not ok:
            continue
        if nxt == n:
            count += 1
            if count == 1:
                for u in range(n):
                    out[u] = assigned[u]
            if limit > 0 and count >= limit:
                return count
            continue
        order[nxt] = _pick(dom, assigned, nxt, n)
        tried[nxt] = 0
        depth = nxt
    return count


@jit
def extendable_pairs(indptr, indices, masks, p, q, pins, cand):
    """Which candidate colorings ``(a, b)`` of ``(p, q)`` extend.

    ``pins`` holds one row ``(v1, c1, v2, c2)`` per allowed source coloring;
    a candidate counts if it extends together with at least one row.
    """
    k = cand.shape[0]
    result = np.zeros(k, dtype=np.bool_)
    out = np.empty(masks.shape[0], dtype=np.int64)
    work = masks.copy()
    for i in range(k):
        a = cand[i, 0]
        b = cand[i, 1]
        for j in range(pins.shape[0]):
            for v in range(masks.shape[0]):
                work[v] = masks[v]
            ok = True
            for t in range(2):
                w = pins[j, 2 * t]
                col = np.int64(1) << pins[j, 2 * t + 1]
                if work[w] & col == 0:
                    ok = False
                work[w] &= col
            if work[p] & (np.int64(1) << a) == 0 or work[q] & (np.int64(1) << b) == 0:
                ok = False
            if not ok:
                continue
            work[p] &= np.int64(1) << a
            work[q] &= np.int64(1) << b
            if search(indptr, indices, work, 1, out) > 0:
                result[i] = True
                break
    return result
