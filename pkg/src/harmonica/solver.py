"""Exhaustive list-coloring search and extension sets.

Everything here is exact.  The compiled search lives in ``_kernels`` (numba
when available); :func:`enumerate_colorings` is a separate pure-Python
generator in lexicographic order and doubles as the cross-check oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import networkx as nx
import numpy as np

from . import _kernels
from .errors import HarmonicaError, NotASeparatingChord, PinnedConflict, PreconditionViolated
from .plane_graph import PlaneGraph, chords_of_outer, edge_key

Coloring = dict[int, int]
Lists = Mapping[int, Iterable[int]]

MAX_COLOR = 62


def _adjacency(graph) -> Mapping[int, Iterable[int]]:
    if isinstance(graph, PlaneGraph):
        return graph.rotations
    return graph


def _check_pinned(adj, lists, pinned: Mapping[int, int]) -> None:
    for v, c in pinned.items():
        if v not in adj:
            raise PinnedConflict(f"pinned vertex {v} not in graph")
        if c not in lists[v]:
            raise PinnedConflict(f"pinned color {c} not in list of {v}")
        for u in adj[v]:
            if u in pinned and pinned[u] == c:
                raise PinnedConflict(f"pinned neighbours {v},{u} share color {c}")


class _Problem:
    __slots__ = ("ids", "index", "indptr", "indices", "masks")

    def __init__(self, graph, lists: Lists, pinned: Mapping[int, int] | None = None):
        adj = _adjacency(graph)
        self.ids = sorted(adj)
        self.index = {v: i for i, v in enumerate(self.ids)}
        missing = [v for v in self.ids if v not in lists]
        if missing:
            raise HarmonicaError(f"no list for vertices {missing}", "missing list")
        pinned = dict(pinned or {})
        _check_pinned(adj, lists, pinned)
        indptr = [0]
        indices: list[int] = []
        for v in self.ids:
            indices.extend(self.index[u] for u in adj[v])
            indptr.append(len(indices))
        masks = np.zeros(len(self.ids), dtype=np.int64)
        for i, v in enumerate(self.ids):
            colors = [pinned[v]] if v in pinned else lists[v]
            for c in colors:
                if not 0 <= c <= MAX_COLOR:
                    raise HarmonicaError(f"color {c} outside 0..{MAX_COLOR}", "color range")
                masks[i] |= np.int64(1) << np.int64(c)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.masks = masks

    def run(self, limit: int) -> tuple[int, np.ndarray]:
        out = np.full(len(self.ids), -1, dtype=np.int64)
        count = _kernels.search(self.indptr, self.indices, self.masks, limit, out)
        return int(count), out


def find_coloring(graph, lists: Lists, pinned: Mapping[int, int] | None = None) -> Coloring | None:
    """A proper list coloring extending ``pinned``, or ``None`` if none exists."""
    prob = _Problem(graph, lists, pinned)
    count, out = prob.run(1)
    if count == 0:
        return None
    return {v: int(out[i]) for i, v in enumerate(prob.ids)}


def count_colorings(graph, lists: Lists, pinned: Mapping[int, int] | None = None) -> int:
    return _Problem(graph, lists, pinned).run(0)[0]


def enumerate_colorings(graph, lists: Lists, pinned: Mapping[int, int] | None = None) -> Iterator[Coloring]:
    """Yield every proper list coloring extending ``pinned`` exactly once.

    Order is lexicographic: vertices by id, colors ascending.
    """
    adj = _adjacency(graph)
    pinned = dict(pinned or {})
    _check_pinned(adj, lists, pinned)
    order = sorted(adj)
    domains = {v: [pinned[v]] if v in pinned else sorted(lists[v]) for v in order}
    current: Coloring = {}

    def rec(i: int) -> Iterator[Coloring]:
        if i == len(order):
            yield dict(current)
            return
        v = order[i]
        for c in domains[v]:
            if all(current.get(u) != c for u in adj[v]):
                current[v] = c
                yield from rec(i + 1)
                del current[v]

    yield from rec(0)


def is_proper_coloring(graph, lists: Lists, coloring: Mapping[int, int]) -> bool:
    adj = _adjacency(graph)
    if set(coloring) != set(adj):
        return False
    if any(coloring[v] not in lists[v] for v in adj):
        return False
    return all(coloring[u] != coloring[v] for u in adj for v in adj[u])


# --- extension sets -------------------------------------------------------
@dataclass(frozen=True)
class EdgeColoringSet:
    """A set of proper colorings of the edge ``path = (p1, p2)``.

    Members are stored as color pairs ``(phi(p1), phi(p2))``.
    """

    path: tuple[int, int]
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        p, q = self.path
        if p == q:
            raise ValueError("path needs two distinct vertices")
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in self.pairs))
        bad = [pr for pr in self.pairs if pr[0] == pr[1]]
        if bad:
            raise ValueError(f"improper colorings {bad} of {self.path}")

    @classmethod
    def of(cls, path, pairs) -> "EdgeColoringSet":
        return cls(tuple(path), frozenset(map(tuple, pairs)))

    @classmethod
    def from_colorings(cls, path, colorings: Iterable[Mapping[int, int]]) -> "EdgeColoringSet":
        p, q = path
        return cls((p, q), frozenset((phi[p], phi[q]) for phi in colorings))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def colorings(self) -> list[Coloring]:
        p, q = self.path
        return [{p: a, q: b} for a, b in self]

    def colors_at(self, v: int) -> frozenset[int]:
        i = self.path.index(v)
        return frozenset(pr[i] for pr in self.pairs)

    def oriented(self, path) -> "EdgeColoringSet":
        """Same set, read along ``path`` (which must name the same edge)."""
        path = tuple(path)
        if path == self.path:
            return self
        if path == self.path[::-1]:
            return EdgeColoringSet(path, frozenset((b, a) for a, b in self.pairs))
        raise ValueError(f"{path} is not the edge {self.path}")

    def with_pairs(self, pairs) -> "EdgeColoringSet":
        return EdgeColoringSet(self.path, frozenset(pairs))

    def respects(self, lists: Lists) -> bool:
        p, q = self.path
        return all(a in lists[p] and b in lists[q] for a, b in self.pairs)

    def to_json(self) -> dict:
        return {"path": list(self.path), "colorings": [list(pr) for pr in self]}


def _check_edge(G: PlaneGraph, P, name: str) -> tuple[int, int]:
    P = tuple(P)
    if len(P) != 2 or not G.has_edge(*P):
        raise PreconditionViolated(f"{name}={list(P)} is not an edge", f"{name} not an edge")
    return P


def _coerce_set(P, C) -> EdgeColoringSet:
    if isinstance(C, EdgeColoringSet):
        return C.oriented(P)
    return EdgeColoringSet.of(P, C)


def extension_set(T, P, C, P2) -> EdgeColoringSet:
    """Colorings of ``P2`` that extend to the whole graph with ``P`` colored from ``C``.

    ``T`` is anything with ``.graph`` and ``.lists`` (usually a Canvas).
    One pinned existence query per candidate and source coloring.
    """
    G, lists = T.graph, T.lists
    P = _check_edge(G, P, "P")
    P2 = _check_edge(G, P2, "P'")
    C = _coerce_set(P, C)
    p, q = P2
    prob = _Problem(G, lists)
    cand = [(a, b) for a in sorted(lists[p]) for b in sorted(lists[q]) if a != b]
    src = [(P[0], a, P[1], b) for a, b in C if a in lists[P[0]] and b in lists[P[1]]]
    if not cand or not src:
        return EdgeColoringSet(P2, frozenset())
    idx = prob.index
    pins = np.array([(idx[v1], c1, idx[v2], c2) for v1, c1, v2, c2 in src], dtype=np.int64)
    cand_arr = np.array(cand, dtype=np.int64)
    hits = _kernels.extendable_pairs(prob.indptr, prob.indices, prob.masks, idx[p], idx[q], pins, cand_arr)
    return EdgeColoringSet(P2, frozenset(c for c, h in zip(cand, hits) if h))


def extension_set_by_enumeration(T, P, C, P2) -> EdgeColoringSet:
    """Reference route: enumerate full colorings and project onto ``P2``."""
    G, lists = T.graph, T.lists
    P = _check_edge(G, P, "P")
    P2 = _check_edge(G, P2, "P'")
    C = _coerce_set(P, C)
    found = set()
    for a, b in C:
        if a not in lists[P[0]] or b not in lists[P[1]]:
            continue
        for phi in enumerate_colorings(G, lists, {P[0]: a, P[1]: b}):
            found.add((phi[P2[0]], phi[P2[1]]))
    return EdgeColoringSet(P2, frozenset(found))


def separates(G: PlaneGraph, U, P, P2) -> bool:
    """Whether removing ``V(U)`` puts ``P - U`` and ``P2 - U`` in different components."""
    cut = set(U)
    rest = G.to_networkx()
    rest.remove_nodes_from(cut)
    side1 = [v for v in P if v not in cut]
    side2 = [v for v in P2 if v not in cut]
    if not side1 or not side2:
        return False
    comp = nx.node_connected_component(rest, side1[0])
    return all(v in comp for v in side1) and not any(v in comp for v in side2)


def check_chord_composition(T, P, C, U, P2) -> bool:
    """Compare Phi(P2, Phi(U, C)) with Phi(P2, C) for a separating chord ``U``.

    ``U`` equal to ``P2`` is accepted as the degenerate separation.
    """
    G = T.graph
    U = tuple(U)
    if edge_key(*U) != edge_key(*tuple(P2)):
        if edge_key(*U) not in chords_of_outer(G):
            raise NotASeparatingChord(f"{list(U)} is not a chord of the outer cycle")
        if not separates(G, U, P, P2):
            raise NotASeparatingChord(f"{list(U)} does not separate {list(P)} from {list(P2)}")
    via_chord = extension_set(T, U, extension_set(T, P, C, U), P2)
    direct = extension_set(T, P, C, P2)
    return via_chord.pairs == direct.pairs


def count_bad_wheel_colorings(T) -> int:
    """Number of proper colorings of the path ``S = p-q-r`` that do not extend."""
    G, S, lists = T.graph, T.S, T.lists
    if len(S.vertices) != 3 or len(S.edges) != 2:
        raise PreconditionViolated("S is not a path of length two", "S not a 2-path")
    deg = {v: sum(v in e for e in S.edges) for v in S.vertices}
    q = next((v for v, d in deg.items() if d == 2), None)
    if q is None:
        raise PreconditionViolated("S is not a path of length two", "S not a 2-path")
    p, r = sorted(v for v in S.vertices if v != q)
    if G.has_edge(p, r):
        raise PreconditionViolated("S is not induced", "S not induced")
    outer = G.outer_vertices
    # an outer walk that is not a cycle (G = S, say) has no chords to speak of
    if any(a in outer and b in outer and not G.is_outer_edge(a, b) for a, b in G.edges):
        raise PreconditionViolated("outer cycle has a chord", "chord present")
    for e in S.edges:
        if not G.is_outer_edge(*e):
            raise PreconditionViolated(f"S edge {e} not on the outer cycle", "S not in boundary")
    bad = 0
    for a, b, c in itertools.product(sorted(lists[p]), sorted(lists[q]), sorted(lists[r])):
        if a == b or b == c:
            continue
        if find_coloring(G, lists, {p: a, q: b, r: c}) is None:
            bad += 1
    return bad
