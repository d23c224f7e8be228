"""Decide colorability with a certificate either way.

``decide_with_certificate`` runs the exhaustive solver and the harmonica
detector independently and refuses to answer if they disagree.
``certify_by_governments`` reaches the same verdict constructively: it adds
a fresh color at ``p2``, pushes a dictatorship (or confederacy) from an
edge at ``p1`` to an edge at ``p2`` and, when no coloring comes out, turns
the government harmonica it finds into a coloring harmonica.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .canvas import make_lists
from .errors import HypothesesViolated, PinnedConflict, ConsistencyViolation
from .government_harmonica import (
    check_conversion,
    convert_harmonica,
    find_government_harmonica,
)
from .governments import classify, find_confederacy
from .harmonicas import HarmonicaCertificate, find_coloring_harmonica, verify_coloring_harmonica
from .plane_graph import PlaneGraph
from .solver import Coloring, EdgeColoringSet, extension_set, find_coloring, is_proper_coloring


@dataclass(frozen=True)
class Colorable:
    coloring: Coloring

    def to_json(self) -> dict:
        return {"colorable": True, "coloring": {str(v): c for v, c in sorted(self.coloring.items())}}


@dataclass(frozen=True)
class Obstructed:
    certificate: HarmonicaCertificate

    def to_json(self) -> dict:
        return {"certificate": self.certificate.to_json(), "colorable": False}


Decision = Colorable | Obstructed


def hypothesis_report(graph: PlaneGraph, lists, p1: int, p2: int) -> dict[str, list]:
    """Every violated list-size or placement condition, keyed by clause."""
    report: dict[str, list] = {}

    def flag(clause, item):
        report.setdefault(clause, []).append(item)

    for v in graph.vertices:
        if v not in lists or not lists[v]:
            flag("missing or empty list", v)
    for name, p in (("p1", p1), ("p2", p2)):
        if p not in graph:
            flag(f"{name} not in graph", p)
        elif p not in graph.outer_vertices:
            flag(f"{name} not on the outer face", p)
    if p1 == p2:
        flag("p1 = p2", p1)
    if not graph.is_connected():
        flag("graph not connected", sorted(graph.vertices))
    if report:
        return report
    outer = graph.outer_vertices
    for v in graph.vertices:
        size = len(lists[v])
        if v == p1:
            continue
        if v == p2:
            if size < 2:
                flag("|L(p2)| >= 2", v)
        elif v not in outer and size < 5:
            flag("interior vertex below 5", v)
        elif v in outer and size < 3:
            flag("outer vertex below 3", v)
    return report


def _audit(graph, lists, p1, p2) -> None:
    report = hypothesis_report(graph, lists, p1, p2)
    if report:
        raise HypothesesViolated(report)


def _dump(graph, lists, p1, p2, **extra) -> dict:
    out = graph.to_json()
    out["lists"] = {str(v): sorted(lists[v]) for v in sorted(graph.vertices)}
    out["p1"], out["p2"] = p1, p2
    out.update(extra)
    return out


def decide_with_certificate(graph: PlaneGraph, lists, p1: int, p2: int) -> Decision:
    lists = make_lists(lists)
    _audit(graph, lists, p1, p2)
    phi = find_coloring(graph, lists)
    cert = find_coloring_harmonica(graph, lists, p1, p2)
    if phi is not None and cert is not None:
        raise ConsistencyViolation("colorable yet contains a harmonica", _dump(graph, lists, p1, p2, coloring=phi, certificate=cert.to_json()))
    if phi is None and cert is None:
        raise ConsistencyViolation("not colorable and no harmonica found", _dump(graph, lists, p1, p2))
    if phi is not None:
        assert is_proper_coloring(graph, lists, phi)
        return Colorable(phi)
    assert verify_coloring_harmonica(graph, lists, cert, p1, p2)
    return Obstructed(cert)


@dataclass(frozen=True)
class _View:
    graph: PlaneGraph
    lists: Mapping


def _boundary_neighbour(graph: PlaneGraph, p: int, avoid: tuple[int, ...]) -> int:
    cands = sorted(u for u in graph.neighbors(p) if graph.is_outer_edge(p, u))
    for u in cands:
        if u not in avoid:
            return u
    return cands[0]


def certify_by_governments(graph: PlaneGraph, lists, p1: int, p2: int) -> Decision:
    """Second route to the verdict, following the constructive argument.

    Raises :class:`ConsistencyViolation` if any step the argument relies on fails.
    """
    lists = make_lists(lists)
    _audit(graph, lists, p1, p2)
    v1 = _boundary_neighbour(graph, p1, (p2,))
    v2 = _boundary_neighbour(graph, p2, (p1, v1))
    P, P2 = (p1, v1), (p2, v2)
    c0 = max(c for cs in lists.values() for c in cs) + 1
    L2 = dict(lists)
    L2[p2] = lists[p2] | {c0}
    pairs = {(c, b) for c in sorted(lists[p1]) for b in lists[v1] if b != c}
    C = EdgeColoringSet(P, frozenset(pairs))
    T = _View(graph, L2)
    phi_set = extension_set(T, P, C, P2)

    def fail(msg, **extra):
        raise ConsistencyViolation(msg, _dump(graph, lists, p1, p2, route="governments", **extra))

    for a, b in phi_set:
        if a == c0:
            continue
        for c, d in C:
            pins = {p1: c, v1: d}
            if any(pins.get(v, col) != col for v, col in ((p2, a), (v2, b))):
                continue
            pins.update({p2: a, v2: b})
            try:
                col = find_coloring(graph, lists, pins)
            except PinnedConflict:
                continue
            if col is not None:
                return Colorable(col)
        fail("extension without a coloring", pair=[a, b])
    if len(lists[p1]) != 1:
        fail("several colors at p1 yet nothing extends")
    if len(C) < 2:
        fail("starting set is not a dictatorship")
    if find_confederacy(phi_set) is not None:
        fail("extension set holds a confederacy of dictated colorings")
    gov = classify(C).government
    gh = find_government_harmonica(T, P, P2, gov)
    if gh is None:
        fail("no government harmonica")
    conv = convert_harmonica(gh, p2, c0)
    verdict = check_conversion(conv)
    if not verdict:
        fail(f"converted harmonica does not verify: {verdict.reason}")
    cert = conv.certificate
    if not verify_coloring_harmonica(graph, lists, cert, p1, p2):
        fail("converted harmonica is not contained in the instance")
    return Obstructed(cert)
