"""Harmonicas carrying a government along a chain, and their conversion.

A government harmonica is recorded as a trace of rule applications.  Each
entry names the rule (1 to 4), the edge it starts from, the government on
that edge and, for the recursive rules, the apex, the next edge and the
vertices the rule deletes.  The certificate graph is the union of every
edge the trace touches; verification replays the trace on shrinking
subgraphs of it and checks that every stage is a canvas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .canvas import Subgraph, canvas_violations
from .errors import HarmonicaError, HypothesisViolated
from .governments import Government, as_government, classify, democracy, dictatorship
from .harmonicas import BASE, START, STEP, HarmonicaCertificate, Step, Verdict, verify_coloring_harmonica
from .plane_graph import PlaneGraph, edge_key, subgraph
from .solver import EdgeColoringSet, extension_set

TRIVIAL, JOINED, TRIANGLE, APEX = 1, 2, 3, 4


@dataclass(frozen=True)
class Rule:
    kind: int
    path: tuple[int, int]
    government: Government
    apex: int | None = None
    next_path: tuple[int, int] | None = None
    L0: frozenset[int] = frozenset()
    color: int | None = None
    deleted: frozenset[int] = frozenset()

    def edges(self, target: tuple[int, int]) -> set[tuple[int, int]]:
        out = {edge_key(*self.path)}
        if self.kind == JOINED:
            out.add(edge_key(*target))
        elif self.kind == TRIANGLE:
            a, b = self.next_path
            out |= {edge_key(self.apex, a), edge_key(self.apex, b), edge_key(a, b)}
        elif self.kind == APEX:
            out |= {edge_key(self.apex, p) for p in self.path}
        return out

    def to_json(self) -> dict:
        out = {"rule": self.kind, "path": list(self.path), "government": self.government.to_json()}
        if self.kind in (TRIANGLE, APEX):
            out.update(
                apex=self.apex,
                next=list(self.next_path),
                L0=sorted(self.L0),
                color=self.color,
                deleted=sorted(self.deleted),
            )
        return out


@dataclass(frozen=True, eq=False)
class GovernmentHarmonica:
    host: PlaneGraph
    lists: Mapping[int, frozenset[int]]
    P: tuple[int, int]
    target: tuple[int, int]
    government: Government
    rules: tuple[Rule, ...]

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for r in self.rules for e in r.edges(self.target))

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges() for v in e)

    @property
    def graph(self) -> PlaneGraph:
        return subgraph(self.host, self.vertices(), self.edges())

    def extension(self) -> EdgeColoringSet:
        """Extensions to ``P'`` of the government inside the harmonica's own canvas."""
        return extension_set(_View(self.graph, self.lists), self.P, self.government.members, self.target)

    def to_json(self) -> dict:
        return {
            "P": list(self.P),
            "P'": list(self.target),
            "edges": [list(e) for e in sorted(self.edges())],
            "government": self.government.to_json(),
            "rules": [r.to_json() for r in self.rules],
        }


@dataclass(frozen=True)
class _View:
    graph: PlaneGraph
    lists: Mapping


class _Fail(Exception):
    pass


def _require(cond: bool, clause: str) -> None:
    if not cond:
        raise _Fail(clause)


def _government_on(C, P) -> Government:
    if isinstance(C, Government):
        members = C.members.oriented(P)
    elif isinstance(C, EdgeColoringSet):
        members = C.oriented(P)
    else:
        members = EdgeColoringSet.of(P, C)
    return as_government(members)


def _colors(gov: Government, v: int) -> frozenset[int]:
    return gov.members.colors_at(v)


# --- verification ---------------------------------------------------------
def _check_stage(host, lists, alive, edges, U, target) -> None:
    sub_edges = [e for e in edges if e[0] in alive and e[1] in alive]
    try:
        Gk = subgraph(host, alive, sub_edges)
    except HarmonicaError as exc:
        raise _Fail(f"stage graph is not embeddable: {exc}") from exc
    _require(Gk.is_connected(), "stage graph is not connected")
    _require(Gk.has_edge(*target) and Gk.is_outer_edge(*target), "P' not on the outer face of the stage")
    bad = canvas_violations(Gk, Subgraph.path(*U), lists)
    if bad:
        raise _Fail(f"stage is not a canvas: {bad[0].clause} at {bad[0].vertex}")


def _check(gh: GovernmentHarmonica) -> None:
    host, L = gh.host, gh.lists
    rules = gh.rules
    _require(len(rules) > 0, "empty rule trace")
    _require(all(r.kind in (TRIANGLE, APEX) for r in rules[:-1]), "terminal rule before the end")
    _require(rules[-1].kind in (TRIVIAL, JOINED), "trace does not end with rule 1 or 2")
    edges = gh.edges()
    for a, b in edges:
        _require(host.has_edge(a, b), f"edge {a}-{b} not in host")
    alive = set(gh.vertices())
    T2 = gh.target
    path, gov = gh.P, gh.government
    for k, r in enumerate(rules):
        _require(r.path == path, f"rule {k} starts from the wrong edge")
        _require(r.government.members == gov.members, f"rule {k} carries the wrong government")
        _check_stage(host, L, alive, edges, path, T2)
        live_edges = {e for e in edges if e[0] in alive and e[1] in alive}
        if r.kind == TRIVIAL:
            _require(set(path) == set(T2), "rule 1 needs P = P'")
            _require(alive == set(path) and len(live_edges) == 1, "rule 1 needs G = P")
            return
        if r.kind == JOINED:
            _require(gov.is_dictatorship, "rule 2 needs a dictatorship")
            _require(set(path) & set(T2) == {gov.dictator}, "rule 2 needs P, P' to meet in the dictator")
            _require(alive == set(path) | set(T2) and len(live_edges) == 2, "rule 2 needs G = P u P'")
            return
        z = r.apex
        _require(len(r.L0) == 2, "|L0|=2")
        if r.kind == TRIANGLE:
            _require(gov.is_dictatorship and gov.dictator == z, "rule 3 needs the dictator as apex")
            c = gov.color
            _require(r.color == c, "rule 3 color is the dictator's color")
            u1, u2 = r.next_path
            _require(len({z, u1, u2}) == 3, "rule 3 triangle vertices not distinct")
            for e in (edge_key(z, u1), edge_key(z, u2), edge_key(u1, u2)):
                _require(e in live_edges, "rule 3 triangle not in stage")
            for u in (u1, u2):
                if u in path:
                    _require(_colors(gov, u) == r.L0, "C(u_i)=L0 for u_i in P")
                else:
                    _require(L[u] == r.L0 | {c}, "L(u_i)=L0+{c} for u_i not in P")
            deleted = set(path) - {u1, u2}
            nxt = democracy((u1, u2), *sorted(r.L0))
        else:
            _require(gov.is_democracy, "rule 4 needs a democracy")
            p1, p2 = path
            _require(r.L0 == _colors(gov, p1) == _colors(gov, p2), "L0=C(p1)=C(p2)")
            _require(z not in path, "rule 4 apex lies on P")
            _require(edge_key(z, p1) in live_edges and edge_key(z, p2) in live_edges, "z not adjacent to p1, p2")
            c = r.color
            _require(c not in r.L0 and L[z] == r.L0 | {c}, "L(z)=L0+{c}")
            _require(r.next_path[0] == z and r.next_path[1] in path, "rule 4 next edge is z p_(3-i)")
            q = r.next_path[1]
            deleted = set(path) - {q}
            nxt = dictatorship((z, q), z, c, r.L0)
        _require(r.deleted == frozenset(deleted), "recorded deletions mismatch")
        _require(not (deleted & set(T2)), "rule deletes a vertex of P'")
        alive -= deleted
        path, gov = r.next_path, nxt
    raise _Fail("trace ended without a terminal rule")


def verify_government_harmonica(gh: GovernmentHarmonica) -> Verdict:
    try:
        _check(gh)
    except _Fail as exc:
        return Verdict(False, str(exc))
    return Verdict(True)


# --- search ---------------------------------------------------------------
class _Search:
    def __init__(self, G: PlaneGraph, L, target):
        self.G, self.L, self.T2 = G, L, tuple(target)
        self.t2 = set(target)

    def rules(self, path, gov: Government, deleted: frozenset) -> Iterator[list[Rule]]:
        G, L, T2, t2 = self.G, self.L, self.T2, self.t2
        if set(path) == t2:
            yield [Rule(TRIVIAL, path, gov)]
        if gov.is_dictatorship:
            z, c = gov.dictator, gov.color
            p = path[1] if path[0] == z else path[0]
            if set(path) & t2 == {z}:
                yield [Rule(JOINED, path, gov)]
            nbrs = sorted(v for v in G.neighbors(z) if v not in deleted)
            for u1 in nbrs:
                for u2 in nbrs:
                    if u2 <= u1 or not G.has_edge(u1, u2):
                        continue
                    L0s = []
                    for u in (u1, u2):
                        L0s.append(_colors(gov, u) if u == p else (L[u] - {c} if c in L[u] and len(L[u]) == 3 else None))
                    if L0s[0] is None or L0s[0] != L0s[1] or len(L0s[0]) != 2:
                        continue
                    L0 = L0s[0]
                    gone = frozenset(set(path) - {u1, u2})
                    if gone & t2:
                        continue
                    nxt = democracy((u1, u2), *sorted(L0))
                    rule = Rule(TRIANGLE, path, gov, z, (u1, u2), L0, c, gone)
                    for tail in self.rules((u1, u2), nxt, deleted | gone):
                        yield [rule] + tail
        elif gov.is_democracy:
            p1, p2 = path
            L0 = _colors(gov, p1)
            if _colors(gov, p2) != L0:
                return
            for z in sorted(G.neighbors(p1) & G.neighbors(p2)):
                if z in deleted or len(L[z]) != 3 or not L0 <= L[z]:
                    continue
                (c,) = L[z] - L0
                for drop, keep in ((p1, p2), (p2, p1)):
                    if drop in t2:
                        continue
                    U = (z, keep)
                    nxt = dictatorship(U, z, c, L0)
                    rule = Rule(APEX, path, gov, z, U, L0, c, frozenset({drop}))
                    for tail in self.rules(U, nxt, deleted | {drop}):
                        yield [rule] + tail


def iter_government_harmonicas(T, P, P2, C) -> Iterator[GovernmentHarmonica]:
    G = T.graph
    lists = {v: frozenset(T.lists[v]) for v in G.vertices}
    P, P2 = tuple(P), tuple(P2)
    if not (G.has_edge(*P) and G.has_edge(*P2)):
        return
    gov = _government_on(C, P)
    for rules in _Search(G, lists, P2).rules(P, gov, frozenset()):
        gh = GovernmentHarmonica(G, lists, P, P2, gov, tuple(rules))
        if verify_government_harmonica(gh):
            yield gh


def find_government_harmonica(T, P, P2, C) -> GovernmentHarmonica | None:
    """First harmonica from ``P`` to ``P2`` with government ``C`` inside ``T``, or ``None``."""
    return next(iter_government_harmonicas(T, P, P2, C), None)


def list_size_violations(gh: GovernmentHarmonica) -> list[int]:
    """Vertices off ``P`` (and, on ``P'``, of degree at least two) whose list is not of size three."""
    G = gh.graph
    out = []
    for v in G.vertices:
        if v in gh.P:
            continue
        if v in gh.target and G.degree(v) < 2:
            continue
        if len(gh.lists[v]) != 3:
            out.append(v)
    return out


# --- conversion -----------------------------------------------------------
@dataclass(frozen=True, eq=False)
class ConvertedHarmonica:
    graph: PlaneGraph
    lists: Mapping[int, frozenset[int]]
    certificate: HarmonicaCertificate
    dictator: int
    color: int


def _hyp(cond: bool, clause: str) -> None:
    if not cond:
        raise HypothesisViolated(clause, clause)


def convert_harmonica(gh: GovernmentHarmonica, w: int | None = None, d: int | None = None) -> ConvertedHarmonica:
    """Turn a government harmonica with a dictated extension set into a coloring harmonica.

    ``w`` and ``d`` default to the dictator and color read off the extension
    set; when given they must agree with it.
    """
    Gp = gh.graph
    L = gh.lists
    phi = gh.extension()
    _hyp(len(phi) >= 2, "Phi(P',C) is not a dictatorship")
    kind, gov = classify(phi)
    _hyp(kind == "dictatorship", "Phi(P',C) is not a dictatorship")
    w0, d0 = gov.dictator, gov.color
    _hyp(w is None or w == w0, "w is not the dictator of Phi(P',C)")
    _hyp(d is None or d == d0, "d is not the dictated color")
    w, d = w0, d0
    w2 = gh.target[1] if gh.target[0] == w else gh.target[0]
    C = gh.government
    if C.is_dictatorship:
        u = C.dictator
        v = gh.P[1] if gh.P[0] == u else gh.P[0]
    else:
        u, v = gh.P
    _hyp(len({u, v, w}) == 3, "u, v, w pairwise distinct")
    if C.is_democracy:
        _hyp(len(L[u]) == 2 and len(L[v]) == 2, "|L(u)|=|L(v)|=2")
    else:
        _hyp(len(L[u]) == 1, "|L(u)|=1")
        if Gp.degree(v) >= 2:
            _hyp(len(L[v] - L[u]) == 2, "|L(v)-L(u)|=2")

    steps: list[Step] = []
    rules = gh.rules
    for k, r in enumerate(rules):
        if r.kind == TRIANGLE:
            steps.append(Step(START, (r.apex, *r.next_path), tuple(sorted(r.L0))))
        elif r.kind == APEX:
            nxt = rules[k + 1]
            a, b = r.path
            if nxt.kind in (TRIVIAL, JOINED):
                _hyp(r.apex == w, "final apex is not w")
                steps.append(Step(BASE, (a, b, w), tuple(sorted(r.L0))))
            else:
                dropped = set(r.deleted) | (set(nxt.deleted) & set(r.path))
                steps.append(Step(STEP, (a, b, r.apex), tuple(sorted(r.L0)), tuple(sorted(dropped))))
        else:
            break
    origin = u if C.is_dictatorship else (u, v)
    cert = HarmonicaCertificate(origin, w, tuple(steps))

    drop = {x for x in (v, w2) if Gp.degree(x) == 1}
    keep = set(Gp.vertices) - drop
    graph = subgraph(gh.host, keep, [e for e in Gp.edges if e[0] in keep and e[1] in keep])
    lists = {x: L[x] for x in keep}
    lists[w] = L[w] - {d}
    return ConvertedHarmonica(graph, lists, cert, w, d)


def check_conversion(conv: ConvertedHarmonica) -> Verdict:
    return verify_coloring_harmonica(conv.graph, conv.lists, conv.certificate)
