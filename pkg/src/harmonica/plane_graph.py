"""Plane graphs given by a rotation system plus a designated outer face.

Faces are traced with the rule ``(u, v) -> (v, succ_v(u))`` where
``succ_v`` is the cyclic successor in the rotation of ``v``.  Every face is
stored as the closed walk of dart tails.  Subgraphs inherit the restricted
rotation; their outer face is found by merging host faces across every
removed edge, so deletions never need geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    EmbeddingError,
    EmptyResult,
    NonPlanarEmbedding,
    OuterWalkNotAFace,
    OuterWalkNotCycle,
    ParallelEdgeOrLoop,
)

Edge = tuple[int, int]
Walk = tuple[int, ...]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _walk_darts(walk: Sequence[int]) -> list[Edge]:
    if len(walk) < 2:
        return []
    return [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]


def _canonical_walk(walk: Sequence[int]) -> Walk:
    """Rotate a closed walk so it reads lexicographically smallest."""
    walk = tuple(walk)
    if not walk:
        return walk
    return min(walk[i:] + walk[:i] for i in range(len(walk)))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """Immutable embedded graph.

    ``outer`` is the outer walk of one component; ``outer_extra`` holds the
    outer walks of any further components (a lone vertex has walk ``(v,)``).
    Use :func:`build_plane_graph` to construct a validated instance.
    """

    rotations: Mapping[int, tuple[int, ...]]
    outer: Walk
    outer_extra: tuple[Walk, ...] = field(default=())

    # --- basic structure -------------------------------------------------
    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.rotations))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset(edge_key(u, v) for u, nbrs in self.rotations.items() for v in nbrs)

    @cached_property
    def _adj(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(nbrs) for v, nbrs in self.rotations.items()}

    @cached_property
    def _pos(self) -> dict[Edge, int]:
        return {(v, u): i for v, nbrs in self.rotations.items() for i, u in enumerate(nbrs)}

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def __contains__(self, v: object) -> bool:
        return v in self.rotations

    def __len__(self) -> int:
        return len(self.rotations)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (
            dict(self.rotations) == dict(other.rotations)
            and self.outer_darts == other.outer_darts
            and set(self.outer_walks) == set(other.outer_walks)
        )

    __hash__ = None  # type: ignore[assignment]

    def next_dart(self, u: int, v: int) -> Edge:
        rot = self.rotations[v]
        return (v, rot[(self._pos[(v, u)] + 1) % len(rot)])

    # --- faces ------------------------------------------------------------
    @cached_property
    def faces(self) -> tuple[Walk, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def face_of_dart(self) -> dict[Edge, int]:
        out = {}
        for i, walk in enumerate(self.faces):
            for d in _walk_darts(walk):
                out[d] = i
        return out

    @property
    def outer_walks(self) -> tuple[Walk, ...]:
        return (self.outer,) + tuple(self.outer_extra)

    @cached_property
    def outer_darts(self) -> frozenset[Edge]:
        return frozenset(d for w in self.outer_walks for d in _walk_darts(w))

    @cached_property
    def outer_vertices(self) -> frozenset[int]:
        return frozenset(v for w in self.outer_walks for v in w)

    def is_outer_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.outer_darts or (v, u) in self.outer_darts

    def outer_is_cycle(self) -> bool:
        w = self.outer
        return not self.outer_extra and len(w) >= 3 and len(set(w)) == len(w)

    def components(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in nx.connected_components(self.to_networkx())]

    def is_connected(self) -> bool:
        return len(self) > 0 and len(self.components()) == 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    # --- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "outer": list(self.outer),
            "rotations": {str(v): list(self.rotations[v]) for v in self.vertices},
            "vertices": list(self.vertices),
        }
        if self.outer_extra:
            out["outer_extra"] = [list(w) for w in self.outer_extra]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PlaneGraph":
        rotations = {int(k): [int(x) for x in v] for k, v in data["rotations"].items()}
        for v in data.get("vertices", []):
            rotations.setdefault(int(v), [])
        extra = [[int(x) for x in w] for w in data.get("outer_extra", [])]
        return build_plane_graph(rotations, [int(x) for x in data["outer"]], extra)


def trace_faces(G: PlaneGraph) -> list[Walk]:
    """All faces as closed walks; each dart is used exactly once.

    Isolated vertices contribute the one-vertex walk ``(v,)``.
    """
    seen: set[Edge] = set()
    faces: list[Walk] = []
    for u in G.vertices:
        if not G.rotations[u]:
            faces.append((u,))
            continue
        for v in G.rotations[u]:
            if (u, v) in seen:
                continue
            walk = []
            d = (u, v)
            while d not in seen:
                seen.add(d)
                walk.append(d[0])
                d = G.next_dart(*d)
            faces.append(tuple(walk))
    return faces


def _match_face(G: PlaneGraph, walk: Sequence[int]) -> int | None:
    if len(walk) == 1:
        v = walk[0]
        if v in G and not G.rotations[v]:
            return G.faces.index((v,))
        return None
    darts = _walk_darts(walk)
    if not darts or any(d not in G.face_of_dart for d in darts):
        return None
    idx = G.face_of_dart[darts[0]]
    face = G.faces[idx]
    if len(face) != len(walk) or any(G.face_of_dart[d] != idx for d in darts):
        return None
    return idx


def build_plane_graph(
    vertex_lists: Mapping[int, Sequence[int]],
    outer_walk: Sequence[int],
    outer_extra: Iterable[Sequence[int]] = (),
) -> PlaneGraph:
    """Validate rotations and outer walk(s) and return a :class:`PlaneGraph`.

    Every connected component needs exactly one designated outer walk, and
    each must be one traced face.
    """
    rotations = {int(v): tuple(int(u) for u in nbrs) for v, nbrs in vertex_lists.items()}
    for v, nbrs in rotations.items():
        if v in nbrs:
            raise ParallelEdgeOrLoop(f"loop at {v}")
        if len(set(nbrs)) != len(nbrs):
            raise ParallelEdgeOrLoop(f"repeated neighbour in rotation of {v}")
        for u in nbrs:
            if u not in rotations:
                raise EmbeddingError(f"rotation of {v} names unknown vertex {u}", "unknown vertex")
            if v not in rotations[u]:
                raise EmbeddingError(f"edge {v}-{u} missing from rotation of {u}", "asymmetric rotation")
    G = PlaneGraph(rotations, tuple(int(x) for x in outer_walk), tuple(tuple(int(x) for x in w) for w in outer_extra))

    comps = G.components()
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    faces_per_comp = [0] * len(comps)
    for walk in G.faces:
        faces_per_comp[comp_of[walk[0]]] += 1
    for i, comp in enumerate(comps):
        n_edges = sum(1 for (a, b) in G.edges if a in comp)
        if len(comp) - n_edges + faces_per_comp[i] != 2:
            raise NonPlanarEmbedding(
                f"component {sorted(comp)}: V-E+F = {len(comp)}-{n_edges}+{faces_per_comp[i]} != 2"
            )

    if not G.outer:
        raise OuterWalkNotAFace("empty outer walk")
    claimed = set()
    for walk in G.outer_walks:
        if any(v not in rotations for v in walk):
            raise OuterWalkNotAFace(f"walk {list(walk)} names unknown vertices")
        if _match_face(G, walk) is None:
            raise OuterWalkNotAFace(f"walk {list(walk)} is not a traced face")
        c = comp_of[walk[0]]
        if c in claimed:
            raise OuterWalkNotAFace(f"two outer walks in component {sorted(comps[c])}")
        claimed.add(c)
    if len(claimed) != len(comps):
        missing = [sorted(comps[i]) for i in range(len(comps)) if i not in claimed]
        raise OuterWalkNotAFace(f"components without outer walk: {missing}")
    return G


def chords_of_outer(G: PlaneGraph) -> frozenset[Edge]:
    if not G.outer_is_cycle():
        raise OuterWalkNotCycle(f"outer walk {list(G.outer)} repeats a vertex")
    on_cycle = set(G.outer)
    cycle_edges = {edge_key(a, b) for a, b in _walk_darts(G.outer)}
    return frozenset(e for e in G.edges if e[0] in on_cycle and e[1] in on_cycle and e not in cycle_edges)


def cutvertices(G: PlaneGraph) -> frozenset[int]:
    return frozenset(nx.articulation_points(G.to_networkx()))


# --- subgraphs -----------------------------------------------------------
def _outer_face_roots(G: PlaneGraph, keep_edges: frozenset[Edge]) -> tuple[_UnionFind, set[int]]:
    uf = _UnionFind(len(G.faces))
    for a, b in G.edges:
        if (a, b) not in keep_edges:
            uf.union(G.face_of_dart[(a, b)], G.face_of_dart[(b, a)])
    roots = set()
    for walk in G.outer_walks:
        idx = _match_face(G, walk)
        roots.add(uf.find(idx))
    if len(roots) > 1:
        first = min(roots)
        for r in list(roots):
            uf.union(first, r)
        roots = {uf.find(first)}
    return uf, roots


def sub_outer_incidence(
    G: PlaneGraph, vertices: Iterable[int], edges: Iterable[Edge] | None = None
) -> tuple[frozenset[int], frozenset[Edge]]:
    """Vertices and darts on the outer face of a subgraph of ``G``.

    The subgraph inherits ``G``'s embedding.  ``edges`` defaults to the
    induced edge set.
    """
    keep_v = frozenset(vertices)
    if edges is None:
        keep_e = frozenset(e for e in G.edges if e[0] in keep_v and e[1] in keep_v)
    else:
        keep_e = frozenset(edge_key(*e) for e in edges)
    uf, roots = _outer_face_roots(G, keep_e)
    out_darts = set()
    out_vertices = set()
    for a, b in keep_e:
        for d in ((a, b), (b, a)):
            if uf.find(G.face_of_dart[d]) in roots:
                out_darts.add(d)
                out_vertices.add(d[0])
    for v in keep_v:
        if v in out_vertices:
            continue
        if not G.rotations[v]:
            out_vertices.add(v)
        elif not any(edge_key(v, t) in keep_e for t in G.rotations[v]):
            if uf.find(G.face_of_dart[(v, G.rotations[v][0])]) in roots:
                out_vertices.add(v)
    return frozenset(out_vertices), frozenset(out_darts)


def _longest_arc(face_darts: set[Edge], old_outer: Walk) -> int:
    darts = _walk_darts(old_outer)
    if not darts:
        return 0
    present = [d in face_darts for d in darts]
    if all(present):
        return len(darts)
    best = run = 0
    for flag in present + present:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


def subgraph(G: PlaneGraph, vertices: Iterable[int], edges: Iterable[Edge] | None = None) -> PlaneGraph:
    """Embedded subgraph on ``vertices`` (and ``edges``, default induced).

    The main outer walk is the outer face holding the longest surviving arc
    of ``G.outer``; ties go to the face with the smallest vertex id.
    """
    keep_v = frozenset(vertices)
    if not keep_v:
        raise EmptyResult("subgraph has no vertices")
    missing = keep_v - set(G.rotations)
    if missing:
        raise EmbeddingError(f"unknown vertices {sorted(missing)}", "unknown vertex")
    if edges is None:
        keep_e = frozenset(e for e in G.edges if e[0] in keep_v and e[1] in keep_v)
    else:
        keep_e = frozenset(edge_key(*e) for e in edges)
        bad = [e for e in keep_e if e not in G.edges or e[0] not in keep_v or e[1] not in keep_v]
        if bad:
            raise EmbeddingError(f"edges {sorted(bad)} not available", "unknown edge")
    rotations = {
        v: tuple(u for u in G.rotations[v] if edge_key(v, u) in keep_e) for v in sorted(keep_v)
    }
    H = PlaneGraph(rotations, ())
    _, out_darts = sub_outer_incidence(G, keep_v, keep_e)

    comp_of = {v: i for i, c in enumerate(H.components()) for v in c}
    chosen: dict[int, Walk] = {}
    for walk in H.faces:
        c = comp_of[walk[0]]
        if len(walk) == 1:
            chosen[c] = walk
        elif _walk_darts(walk)[0] in out_darts:
            chosen[c] = _canonical_walk(walk)
    walks = list(chosen.values())

    def rank(w: Walk):
        return (-_longest_arc(set(_walk_darts(w)), G.outer), min(w))

    walks.sort(key=rank)
    main, extra = walks[0], tuple(sorted(walks[1:], key=min))
    return build_plane_graph(rotations, main, extra)


def delete_vertices(G: PlaneGraph, X: Iterable[int]) -> PlaneGraph:
    X = frozenset(X)
    unknown = X - set(G.rotations)
    if unknown:
        raise EmbeddingError(f"cannot delete unknown vertices {sorted(unknown)}", "unknown vertex")
    keep = [v for v in G.vertices if v not in X]
    if not keep:
        raise EmptyResult("deleting every vertex")
    return subgraph(G, keep)
