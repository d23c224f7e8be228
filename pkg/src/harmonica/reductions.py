"""Democratic reductions: delete a boundary path whose lists share a color pair."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .canvas import Canvas, Subgraph
from .errors import ImproperInput, ReductionError
from .plane_graph import cutvertices, delete_vertices
from .solver import Coloring, is_proper_coloring


@dataclass(frozen=True, eq=False)
class DemocraticReduction:
    source: Canvas
    reduced: Canvas
    path: tuple[int, ...]
    L0: frozenset[int]
    x: int
    y: int
    deltas: Mapping[int, frozenset[int]]

    def report(self) -> dict:
        return {
            "L0": sorted(self.L0),
            "center": self.x,
            "deltas": {str(v): sorted(d) for v, d in sorted(self.deltas.items())},
            "path": list(self.path),
            "y": self.y,
        }


def _fail(clause: str, detail: str = ""):
    raise ReductionError(detail or clause, clause)


def _boundary_neighbours(walk: tuple[int, ...], v: int) -> tuple[int, int]:
    i = walk.index(v)
    return walk[i - 1], walk[(i + 1) % len(walk)]


def democratic_reduction(T: Canvas, P: Iterable[int], L0: Iterable[int], x: int) -> DemocraticReduction:
    """Build the reduction of ``P`` with respect to ``L0`` centred at ``x``.

    If ``x`` sits at the far end of ``P`` the path is read backwards.  The
    reduced canvas is returned unvalidated; validity is the claim under test.
    """
    G, S, L = T.graph, T.S, T.lists
    P = tuple(P)
    L0 = frozenset(L0)
    if len(L0) != 2:
        _fail("L0 must have two colors")
    if not P or len(set(P)) != len(P):
        _fail("P must be a nonempty path")
    walk = G.outer
    boundary = set(G.outer_vertices)
    if any(v not in boundary for v in P):
        _fail("P not in outer boundary")
    if any(walk.count(v) != 1 for v in P) or G.outer_extra:
        _fail("P vertex repeated on outer walk")
    if set(P) == set(walk):
        _fail("V(C) = V(P)")
    for a, b in zip(P, P[1:]):
        if not G.is_outer_edge(a, b):
            _fail("P not a subpath of C", f"{a}-{b} is not a boundary edge")
    for i, a in enumerate(P):
        for b in P[i + 2:]:
            if G.has_edge(a, b):
                _fail("P not induced", f"edge {a}-{b}")
    cuts = cutvertices(G)
    for v in P:
        if v in cuts:
            _fail("P vertex is a cutvertex", str(v))
        for u in G.neighbors(v):
            if u in boundary and not G.is_outer_edge(v, u):
                _fail("P vertex is a chord end", f"chord {v}-{u}")
    bad = [v for v in P if not L0 <= L[v]]
    if bad:
        _fail("L0 not contained in L(v)", str(bad))

    if len(P) == 1:
        ends = _boundary_neighbours(walk, P[0])
        if x not in ends:
            _fail("x is not a boundary neighbour of P", str(x))
        y = ends[1] if ends[0] == x else ends[0]
    else:
        def outside(end, inner):
            a, b = _boundary_neighbours(walk, end)
            return b if a == inner else a

        x1, yk = outside(P[0], P[1]), outside(P[-1], P[-2])
        if x == x1:
            y = yk
        elif x == yk:
            P = P[::-1]
            y = x1
        else:
            _fail("x is not a boundary neighbour of P", str(x))
    if not (L[x] - L0):
        _fail("L(x) - L0 empty")

    inP = set(P)
    near = {u for v in P for u in G.neighbors(v) if u not in inP}
    clash = sorted(u for u in near if u in S.vertices and u not in (x, y))
    if clash:
        _fail("neighbour of P inside S", str(clash))

    G2 = delete_vertices(G, inP)
    deltas = {}
    lists2 = dict(L)
    for w in G2.vertices:
        if w == x or (w != y and w in near):
            removed = L[w] & L0
            lists2[w] = L[w] - L0
            if removed:
                deltas[w] = removed
    verts = set(S.vertices) - inP
    edges = {e for e in S.edges if e[0] not in inP and e[1] not in inP}
    if len(lists2[x]) < 3:
        verts.add(x)
    reduced = Canvas(G2, Subgraph(frozenset(verts), frozenset(edges)), lists2)
    return DemocraticReduction(T, reduced, P, L0, x, y, deltas)


def extend_reduced_coloring(R: DemocraticReduction, phi: Mapping[int, int]) -> Coloring:
    """Color ``P`` back in from the far end, preferring the smaller color of ``L0``."""
    red = R.reduced
    if not is_proper_coloring(red.graph, red.lists, phi):
        raise ImproperInput("coloring is not a proper L'-coloring of the reduced graph")
    out = dict(phi)
    nxt = phi[R.y]
    for v in reversed(R.path):
        out[v] = min(R.L0 - {nxt})
        nxt = out[v]
    return out
