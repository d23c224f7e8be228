import random

import pytest

from harmonica.errors import InfeasibleParameters
from harmonica.generators import PROFILES, harmonica_ladder, random_canvas, random_disk_triangulation
from harmonica.plane_graph import chords_of_outer, cutvertices, trace_faces
from harmonica.suite import PROFILE_NAMES, audit, replay, run_property_suite


def test_triangle_from_three():
    G = random_disk_triangulation(1, 3, 0)
    assert len(G) == 3 and len(G.edges) == 3


def test_four_cycle_with_hub():
    G = random_disk_triangulation(1, 4, 1)
    inner = [f for f in trace_faces(G) if f != G.outer and set(f) != set(G.outer)]
    assert len(inner) == 4
    assert len(G.outer) == 4


def test_interior_faces_are_triangles():
    for seed in range(20):
        G = random_disk_triangulation(seed, 8, 4)
        faces = trace_faces(G)
        assert len(G) - len(G.edges) + len(faces) == 2
        assert sum(len(f) != 3 for f in faces) == 1
        assert G.outer_is_cycle() and not cutvertices(G)


def test_infeasible():
    with pytest.raises(InfeasibleParameters):
        random_disk_triangulation(0, 2, 0)
    with pytest.raises(InfeasibleParameters):
        random_canvas("thm3", 0, palette=4)
    with pytest.raises(InfeasibleParameters):
        harmonica_ladder(0)


def test_thm1_profile_shape():
    for i in range(30):
        inst = random_canvas("thm1", random.Random(i))
        p1, p2 = inst.roles["p1"], inst.roles["p2"]
        assert inst.graph.is_outer_edge(p1, p2)
        assert len(inst.lists[p1]) == len(inst.lists[p2]) == 1 and inst.lists[p1] != inst.lists[p2]


def test_thm3_profile_shape():
    for i in range(30):
        inst = random_canvas("thm3", random.Random(i))
        L, p1, p2 = inst.lists, inst.roles["p1"], inst.roles["p2"]
        assert len(L[p1]) in (1, 2) and len(L[p2]) == 2
        for v in inst.graph.vertices:
            if v not in (p1, p2):
                assert len(L[v]) == (3 if v in inst.graph.outer_vertices else 5)


def test_lemma5_profile_is_chordless():
    for i in range(30):
        inst = random_canvas("lemma5", random.Random(i))
        assert not chords_of_outer(inst.graph)
        p, q, r = inst.roles["S"]
        assert not inst.graph.has_edge(p, r)


@pytest.mark.parametrize("name", PROFILE_NAMES)
def test_every_profile_passes_its_audit(name):
    for i in range(25):
        inst = random_canvas(name, random.Random(f"audit:{name}:{i}"))
        assert audit(inst) == []
        assert len(inst.graph) <= PROFILES[name].max_vertices


def test_same_seed_same_instance():
    a = random_canvas("thm9", random.Random("x"))
    b = random_canvas("thm9", random.Random("x"))
    assert a.to_json() == b.to_json()


def test_suite_report_is_deterministic():
    r1 = run_property_suite(["thm3", "reduction"], 20, seed=5)
    r2 = run_property_suite(["thm3", "reduction"], 20, seed=5)
    assert r1.dumps() == r2.dumps()
    assert "elapsed_seconds" not in r1.dumps()
    assert "elapsed_seconds" in r1.dumps(timing=True)


def test_small_runs_are_clean():
    rep = run_property_suite(PROFILE_NAMES, 10, seed=3)
    assert rep.failures == 0, rep.counterexamples[:1]


def test_replay_rebuilds_instance():
    inst = random_canvas("chords", random.Random(8))
    again = replay({"instance": inst.to_json()})
    assert again.graph == inst.graph
    assert again.lists == inst.lists
    assert again.roles == inst.roles


def test_unknown_profile():
    with pytest.raises(ValueError):
        run_property_suite(["nope"], 1)
