"""Canvases: a plane graph, a precolored part of its outer boundary, and lists."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidCanvas
from .plane_graph import Edge, PlaneGraph, edge_key

ListAssignment = Mapping[int, frozenset[int]]

DEFAULT_PALETTE = tuple(range(1, 9))


def make_lists(lists: Mapping[int, Iterable[int]]) -> dict[int, frozenset[int]]:
    return {int(v): frozenset(int(c) for c in cs) for v, cs in lists.items()}


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset[int]
    edges: frozenset[Edge] = frozenset()

    @classmethod
    def of(cls, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()) -> "Subgraph":
        edges = frozenset(edge_key(int(a), int(b)) for a, b in edges)
        verts = frozenset(int(v) for v in vertices) | {v for e in edges for v in e}
        return cls(frozenset(verts), edges)

    @classmethod
    def path(cls, *vertices: int) -> "Subgraph":
        return cls.of(vertices, zip(vertices, vertices[1:]))

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in sorted(self.edges)], "vertices": sorted(self.vertices)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Subgraph":
        return cls.of(data.get("vertices", []), data.get("edges", []))


class Violation(NamedTuple):
    clause: str
    vertex: object
    detail: str = ""


@dataclass(frozen=True, eq=False)
class Canvas:
    graph: PlaneGraph
    S: Subgraph
    lists: ListAssignment

    @property
    def boundary(self) -> frozenset[int]:
        return self.graph.outer_vertices

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["S"] = self.S.to_json()
        out["lists"] = {str(v): sorted(self.lists[v]) for v in sorted(self.lists)}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Canvas":
        graph = PlaneGraph.from_json(data)
        S = Subgraph.from_json(data.get("S", {}))
        lists = make_lists({int(k): v for k, v in data["lists"].items()})
        return validate_canvas(graph, S, lists)


def s_colorable(S: Subgraph, lists: Mapping[int, Iterable[int]]) -> bool:
    """Brute force over the (tiny) precolored part only."""
    order = sorted(S.vertices)
    for combo in itertools.product(*(sorted(lists[v]) for v in order)):
        phi = dict(zip(order, combo))
        if all(phi[a] != phi[b] for a, b in S.edges):
            return True
    return False


def canvas_violations(graph: PlaneGraph, S: Subgraph, lists: Mapping[int, Iterable[int]]) -> list[Violation]:
    out: list[Violation] = []
    outer = graph.outer_vertices
    for v in graph.vertices:
        if v not in lists:
            out.append(Violation("missing list", v))
        elif not lists[v]:
            out.append(Violation("empty list", v))
    for v in sorted(S.vertices):
        if v not in graph:
            out.append(Violation("S vertex not in graph", v))
        elif v not in outer:
            out.append(Violation("S not in outer boundary", v))
    for e in sorted(S.edges):
        if not graph.has_edge(*e) or not graph.is_outer_edge(*e):
            out.append(Violation("S edge not in outer boundary", e))
    if out:
        return out
    for v in graph.vertices:
        size = len(lists[v])
        if v not in outer and size < 5:
            out.append(Violation("interior vertex below 5", v, f"|L|={size}"))
        elif v not in S.vertices and size < 3:
            out.append(Violation("outer vertex below 3", v, f"|L|={size}"))
    if not s_colorable(S, lists):
        out.append(Violation("S not L-colorable", sorted(S.vertices)))
    return out


def validate_canvas(graph: PlaneGraph, S: Subgraph, lists: Mapping[int, Iterable[int]]) -> Canvas:
    """Return the canvas, or raise :class:`InvalidCanvas` listing every violation.

    Lists for vertices outside the graph are kept and ignored.
    """
    lists = make_lists(lists)
    violations = canvas_violations(graph, S, lists)
    if violations:
        raise InvalidCanvas(violations)
    return Canvas(graph, S, lists)


def contains_canvas(T: Canvas, T2: Canvas) -> bool:
    G, H = T.graph, T2.graph
    if not set(H.vertices) <= set(G.vertices) or not H.edges <= G.edges:
        return False
    if T.S != T2.S:
        return False
    return all(T.lists[v] == T2.lists[v] for v in H.vertices)
