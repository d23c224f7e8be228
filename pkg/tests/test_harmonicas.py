import random
from dataclasses import replace

import pytest

from harmonica.decide import Colorable, Obstructed, certify_by_governments, decide_with_certificate
from harmonica.errors import HypothesesViolated
from harmonica.generators import PROFILES, harmonica_ladder, random_canvas, random_disk_triangulation
from harmonica.harmonicas import (
    HarmonicaCertificate,
    Step,
    certificate_list_pattern,
    find_coloring_harmonica,
    iter_coloring_harmonicas,
    verify_coloring_harmonica,
)
from harmonica.plane_graph import build_plane_graph
from harmonica.solver import find_coloring

from helpers import oracle_contains_harmonica, triangle

K2_CERT = HarmonicaCertificate(1, 4, (Step("start", (1, 2, 3), (2, 3)), Step("base", (2, 3, 4), (2, 3))))


def test_triangle_base_certificate():
    L = {1: {1, 2}, 2: {1, 2}, 3: {1, 2}}
    cert = HarmonicaCertificate((1, 2), 3, (Step("base", (1, 2, 3), (1, 2)),))
    assert verify_coloring_harmonica(triangle(), L, cert, (1, 2), 3)


def test_k2_strip_verifies():
    G, L, u, w = harmonica_ladder(1)
    assert L == {1: {1}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {2, 3}}
    assert verify_coloring_harmonica(G, L, K2_CERT, u, w)
    assert find_coloring(G, L) is None


def test_k2_strip_broken_base():
    G, L, u, w = harmonica_ladder(1)
    L = dict(L)
    L[4] = frozenset({2, 4})
    verdict = verify_coloring_harmonica(G, L, K2_CERT, u, w)
    assert not verdict and verdict.reason == "L(u)=L(v)=L(w)"


def test_wrong_endpoints_rejected():
    G, L, u, w = harmonica_ladder(1)
    assert not verify_coloring_harmonica(G, L, K2_CERT, 2, w)
    assert not verify_coloring_harmonica(G, L, K2_CERT, u, 3)


def test_step_must_drop_something():
    G, L, u, w = harmonica_ladder(2)
    cert = find_coloring_harmonica(G, L, u, w)
    steps = list(cert.steps)
    steps[1] = replace(steps[1], dropped=())
    assert not verify_coloring_harmonica(G, L, replace(cert, steps=tuple(steps)))
    steps[1] = replace(steps[1], dropped=(2,))
    # keeping vertex 3 leaves it dangling; the base is then not a triangle
    assert not verify_coloring_harmonica(G, L, replace(cert, steps=tuple(steps)))


def test_find_on_k2_strip():
    G, L, u, w = harmonica_ladder(1)
    assert find_coloring_harmonica(G, L, u, w) == K2_CERT


def test_single_edge_has_no_harmonica():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    L = {1: {1}, 2: {1, 2}}
    assert find_coloring_harmonica(G, L, 1, 2) is None
    assert decide_with_certificate(G, L, 1, 2) == Colorable({1: 1, 2: 2})


def test_k3_strip_unique_certificate():
    G, L, u, w = harmonica_ladder(2)
    certs = list(iter_coloring_harmonicas(G, L, u, w))
    assert len(certs) == 1
    kinds = [s.kind for s in certs[0].steps]
    assert kinds == ["start", "step", "start", "base"]
    assert certs[0].steps[1].dropped == (2, 3)
    assert oracle_contains_harmonica(G, L, u, w)
    assert find_coloring(G, L) is None


def test_certificate_json_roundtrip():
    G, L, u, w = harmonica_ladder(3)
    cert = find_coloring_harmonica(G, L, u, w)
    assert HarmonicaCertificate.from_json(cert.to_json()) == cert
    assert list(cert.to_json()) == ["from", "to", "steps"]


def test_list_pattern_on_ladders():
    expected = {"start": (1, 2, 2), "step": (2, 2, 3), "base": (2, 2, 2)}
    for k in range(1, 5):
        G, L, u, w = harmonica_ladder(k)
        cert = find_coloring_harmonica(G, L, u, w)
        assert all(sizes == expected[kind] for kind, sizes in certificate_list_pattern(L, cert))


def test_decide_k2_strip():
    G, L, u, w = harmonica_ladder(1)
    d = decide_with_certificate(G, L, u, w)
    assert isinstance(d, Obstructed) and d.certificate == K2_CERT


def test_decide_rejects_bad_hypotheses():
    G, L, u, w = harmonica_ladder(1)
    with pytest.raises(HypothesesViolated) as err:
        decide_with_certificate(G, L, u, u)
    assert "p1 = p2" in err.value.report
    L2 = dict(L)
    L2[w] = frozenset({2})
    L2[2] = frozenset({1, 2})
    with pytest.raises(HypothesesViolated) as err:
        decide_with_certificate(G, L2, u, w)
    assert set(err.value.report) == {"|L(p2)| >= 2", "outer vertex below 3"}


SMALL = replace(PROFILES["thm3"], outer=(3, 6), interior=(0, 2), max_vertices=8)


def test_detector_matches_brute_force_oracle():
    positives = 0
    for i in range(200):
        inst = random_canvas(SMALL, random.Random(f"oracle:{i}"))
        G, L, r = inst.graph, inst.lists, inst.roles
        fast = find_coloring_harmonica(G, L, r["p1"], r["p2"]) is not None
        slow = oracle_contains_harmonica(G, L, r["p1"], r["p2"])
        assert fast == slow, inst.to_json()
        positives += slow
    assert positives >= 20


def test_two_colors_at_p1_always_colorable():
    rng = random.Random(2)
    for _ in range(500):
        G = random_disk_triangulation(rng, rng.randint(3, 7), rng.randint(0, 3))
        outer = G.outer_vertices
        p1, p2 = rng.sample(sorted(outer), 2)
        L = {v: frozenset(rng.sample(range(1, 6), 3 if v in outer else 5)) for v in G.vertices}
        L[p1] = frozenset(rng.sample(range(1, 6), 2))
        L[p2] = frozenset(rng.sample(range(1, 6), 2))
        assert isinstance(decide_with_certificate(G, L, p1, p2), Colorable)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_routes_agree_on_ladders(k):
    for extra in (False, True):
        G, L, u, w = harmonica_ladder(k, extra)
        a, b = decide_with_certificate(G, L, u, w), certify_by_governments(G, L, u, w)
        assert type(a) is type(b)
        if isinstance(b, Obstructed):
            assert verify_coloring_harmonica(G, L, b.certificate, u, w)
