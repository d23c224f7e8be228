"""Coloring harmonicas: triangle-chain obstructions to list coloring.

A certificate is the chain of triangles that realises the recursive
definition.  Three step kinds occur:

``start`` ``(u, x, y)``
    from the vertex ``u`` (list of size one) into the edge ``xy``.
``step`` ``(u, v, z)``
    from the edge ``uv`` to the vertex ``z``; ``dropped`` names which of
    ``u, v`` are deleted (at least one).
``base`` ``(u, v, w)``
    the final triangle, all three lists equal of size two.

Containment is with the host's lists; the graph of a certificate is the
union of its triangles and every stage is checked on what is left of it,
including incidence with the outer face of that remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple

import networkx as nx

from .plane_graph import PlaneGraph, edge_key, sub_outer_incidence

START, STEP, BASE = "start", "step", "base"


@dataclass(frozen=True)
class Step:
    kind: str
    verts: tuple[int, int, int]
    residual: tuple[int, ...]
    dropped: tuple[int, ...] = field(default=())

    def edges(self) -> list[tuple[int, int]]:
        a, b, c = self.verts
        return [edge_key(a, b), edge_key(a, c), edge_key(b, c)]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "verts": list(self.verts), "residual": list(self.residual)}
        if self.kind == STEP:
            out["dropped"] = list(self.dropped)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Step":
        return cls(
            data["kind"],
            tuple(int(v) for v in data["verts"]),
            tuple(sorted(int(c) for c in data["residual"])),
            tuple(int(v) for v in data.get("dropped", ())),
        )


@dataclass(frozen=True)
class HarmonicaCertificate:
    origin: int | tuple[int, int]
    target: int
    steps: tuple[Step, ...]

    @property
    def from_edge(self) -> bool:
        return isinstance(self.origin, tuple)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for s in self.steps for v in s.verts)

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for s in self.steps for e in s.edges())

    def to_json(self) -> dict:
        origin = list(self.origin) if self.from_edge else self.origin
        return {"from": origin, "to": self.target, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data: Mapping) -> "HarmonicaCertificate":
        origin = data["from"]
        origin = tuple(int(v) for v in origin) if isinstance(origin, list) else int(origin)
        return cls(origin, int(data["to"]), tuple(Step.from_json(s) for s in data["steps"]))


class Verdict(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class _Fail(Exception):
    pass


def _require(cond: bool, clause: str) -> None:
    if not cond:
        raise _Fail(clause)


def _residual(colors) -> tuple[int, ...]:
    return tuple(sorted(colors))


class _Stage:
    """What is left of the certificate graph at one point of the recursion."""

    def __init__(self, host: PlaneGraph, alive: set[int], edges: frozenset[tuple[int, int]]):
        self.alive = frozenset(alive)
        self.edges = frozenset(e for e in edges if e[0] in alive and e[1] in alive)
        self.outer_v, self.outer_d = sub_outer_incidence(host, self.alive, self.edges)

    def connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(self.alive)
        g.add_edges_from(self.edges)
        return nx.is_connected(g)

    def on_outer(self, *vs: int) -> bool:
        return all(v in self.outer_v for v in vs)

    def outer_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.outer_d or (b, a) in self.outer_d


def _check(graph: PlaneGraph, lists, cert: HarmonicaCertificate) -> None:
    steps = cert.steps
    _require(len(steps) > 0, "certificate has no steps")
    _require(steps[-1].kind == BASE, "last step is not a base triangle")
    _require(all(s.kind != BASE for s in steps[:-1]), "base triangle before the end")
    for s in steps:
        _require(s.kind in (START, STEP, BASE), f"unknown step kind {s.kind}")
        _require(len(set(s.verts)) == 3, "triangle vertices not distinct")
        for a, b in s.edges():
            _require(a in graph and b in graph and graph.has_edge(a, b), f"triangle edge {a}-{b} not in graph")

    edges = cert.edges()
    alive = set(cert.vertices())
    w = cert.target
    _require(w in alive, "target not in certificate graph")
    lam = {v: frozenset(lists[v]) for v in alive}
    current: int | tuple[int, int] = cert.origin

    for s in steps:
        stage = _Stage(graph, alive, edges)
        _require(stage.connected(), "graph of the stage is not connected")
        if isinstance(current, int):
            u = current
            _require(s.kind == START and s.verts[0] == u, f"expected start triangle at {u}")
            _, x, y = s.verts
            _require(len({u, x, y, w}) == 4, "u, x, y, w not distinct")
            _require({x, y} <= alive, "triangle uses a deleted vertex")
            _require(stage.on_outer(u, x, y, w), "vertex not incident with the outer face")
            _require(stage.outer_edge(u, x) or stage.outer_edge(u, y), "no edge at u on the outer face")
            _require(len(lam[u]) == 1, "|L(u)|=1")
            mx, my = lam[x] - lam[u], lam[y] - lam[u]
            _require(mx == my, "L(x)-L(u)=L(y)-L(u)")
            _require(len(mx) == 2, "|L(x)-L(u)|=2")
            _require(s.residual == _residual(mx), "recorded residual mismatch")
            lam[x], lam[y] = mx, my
            alive.discard(u)
            current = (x, y)
            continue

        a, b = current
        u, v, t = s.verts
        _require({u, v} == {a, b}, f"expected a triangle on the edge {a}{b}")
        _require(s.kind in (STEP, BASE), "expected a step or base triangle")
        _require(len({u, v, w}) == 3, "u, v, w not distinct")
        _require(stage.outer_edge(u, v), "uv not incident with the outer face")
        _require(lam[u] == lam[v], "L(u)=L(v)")
        _require(len(lam[u]) == 2, "|L(u)|=2")
        _require(s.residual == _residual(lam[u]), "recorded residual mismatch")
        if s.kind == BASE:
            _require(t == w, "base triangle does not end at the target")
            _require(alive == {u, v, w}, "G is not a triangle at the base")
            _require(len(stage.edges) == 3, "G is not a triangle at the base")
            _require(stage.on_outer(u, v, w), "vertex not incident with the outer face")
            _require(lam[u] == lam[w], "L(u)=L(v)=L(w)")
            return
        z = t
        _require(z in alive and z not in (u, v, w), "z must be a fresh vertex")
        _require(stage.on_outer(u, v, w, z), "vertex not incident with the outer face")
        _require(lam[u] <= lam[z], "L(u) subset of L(z)")
        _require(len(lam[z]) == 3, "|L(z)|=3")
        dropped = set(s.dropped)
        _require(bool(dropped) and dropped <= {u, v}, "must delete one or both of u, v")
        lam[z] = lam[z] - lam[u]
        alive -= dropped
        current = z
    raise _Fail("chain ended without a base triangle")


def verify_coloring_harmonica(
    graph: PlaneGraph,
    lists,
    cert: HarmonicaCertificate,
    origin: int | tuple[int, int] | None = None,
    target: int | None = None,
) -> Verdict:
    """Check that ``graph`` with ``lists`` contains the certified harmonica.

    Returns a falsy :class:`Verdict` naming the first failing clause.
    """
    if origin is not None:
        o = tuple(origin) if isinstance(origin, (tuple, list)) else origin
        co = cert.origin
        same = set(o) == set(co) if isinstance(o, tuple) and isinstance(co, tuple) else o == co
        if not same:
            return Verdict(False, f"certificate starts at {co}, not {o}")
    if target is not None and target != cert.target:
        return Verdict(False, f"certificate ends at {cert.target}, not {target}")
    try:
        if cert.from_edge:
            a, b = cert.origin
            if not graph.has_edge(a, b):
                return Verdict(False, "origin is not an edge")
        _check(graph, lists, cert)
    except _Fail as exc:
        return Verdict(False, str(exc))
    except KeyError as exc:
        return Verdict(False, f"unknown vertex {exc}")
    return Verdict(True)


def certificate_list_pattern(lists, cert: HarmonicaCertificate) -> list[tuple[str, tuple[int, ...]]]:
    """Per step, the sizes of the lists seen by the recursion (host lists after updates)."""
    lam = {v: frozenset(lists[v]) for v in cert.vertices()}
    out = []
    for s in cert.steps:
        if s.kind == START:
            u, x, y = s.verts
            out.append((START, (len(lam[u]), len(lam[x] - lam[u]), len(lam[y] - lam[u]))))
            lam[x], lam[y] = lam[x] - lam[u], lam[y] - lam[u]
        elif s.kind == STEP:
            u, v, z = s.verts
            out.append((STEP, (len(lam[u]), len(lam[v]), len(lam[z]))))
            lam[z] = lam[z] - lam[u]
        else:
            u, v, w = s.verts
            out.append((BASE, (len(lam[u]), len(lam[v]), len(lam[w]))))
    return out


# --- detection -------------------------------------------------------------
class _Search:
    def __init__(self, graph: PlaneGraph, lists, target: int):
        self.G = graph
        self.L = {v: frozenset(lists[v]) for v in graph.vertices}
        self.w = target
        self.lists = lists

    def from_vertex(self, u, lam, deleted, kept, steps) -> Iterator[list[Step]]:
        G, w = self.G, self.w
        if len(lam[u]) != 1:
            return
        nbrs = sorted(G.neighbors(u))
        for x in nbrs:
            for y in nbrs:
                if y <= x or not G.has_edge(x, y):
                    continue
                if w in (x, y) or x in deleted or y in deleted:
                    continue
                if kept is not None and kept not in (x, y):
                    continue
                lx, ly = lam.get(x, self.L[x]), lam.get(y, self.L[y])
                mx, my = lx - lam[u], ly - lam[u]
                if mx != my or len(mx) != 2:
                    continue
                step = Step(START, (u, x, y), _residual(mx))
                yield from self.from_edge(x, y, {x: mx, y: my}, deleted | {u}, steps + [step])

    def from_edge(self, a, b, lam, deleted, steps) -> Iterator[list[Step]]:
        G, w = self.G, self.w
        m = lam[a]
        if lam[b] != m or len(m) != 2:
            return
        common = sorted(G.neighbors(a) & G.neighbors(b))
        if w in common and self.L[w] == m:
            yield steps + [Step(BASE, (a, b, w), _residual(m))]
        for z in common:
            if z == w or z in deleted or len(self.L[z]) != 3 or not m <= self.L[z]:
                continue
            rest = self.L[z] - m
            for keep in (None, a, b):
                dropped = tuple(sorted({a, b} - {keep}))
                step = Step(STEP, (a, b, z), _residual(m), dropped)
                lam2 = {z: rest}
                if keep is not None:
                    lam2[keep] = m
                yield from self.from_vertex(z, lam2, deleted | set(dropped), keep, steps + [step])


def iter_coloring_harmonicas(graph: PlaneGraph, lists, origin, target: int) -> Iterator[HarmonicaCertificate]:
    """Every verifying certificate from ``origin`` (vertex or edge) to ``target``."""
    if target not in graph:
        return
    search = _Search(graph, lists, target)
    if isinstance(origin, (tuple, list)):
        a, b = origin
        if not graph.has_edge(a, b) or target in (a, b):
            return
        origin = (a, b)
        chains = search.from_edge(a, b, {a: search.L[a], b: search.L[b]}, frozenset(), [])
    else:
        if origin not in graph or origin == target:
            return
        chains = search.from_vertex(origin, {origin: search.L[origin]}, frozenset(), None, [])
    for steps in chains:
        cert = HarmonicaCertificate(origin, target, tuple(steps))
        if verify_coloring_harmonica(graph, lists, cert):
            yield cert


def find_coloring_harmonica(graph: PlaneGraph, lists, p1, p2: int) -> HarmonicaCertificate | None:
    """First verifying certificate in search order, or ``None`` (the search is complete)."""
    return next(iter_coloring_harmonicas(graph, lists, p1, p2), None)
