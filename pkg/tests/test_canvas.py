import pytest

from harmonica.canvas import Canvas, Subgraph, canvas_violations, contains_canvas, validate_canvas
from harmonica.errors import InvalidCanvas
from harmonica.plane_graph import build_plane_graph, delete_vertices

from helpers import diamond, triangle, wheel


def clauses(violations):
    return {v.clause for v in violations}


def test_single_edge_precolored():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    T = validate_canvas(G, Subgraph.path(1, 2), {1: {1}, 2: {2}})
    assert isinstance(T, Canvas)


def test_same_singletons_on_precolored_edge():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    with pytest.raises(InvalidCanvas) as err:
        validate_canvas(G, Subgraph.path(1, 2), {1: {1}, 2: {1}})
    assert "S not L-colorable" in clauses(err.value.violations)


def test_outer_vertex_below_three():
    bad = canvas_violations(triangle(), Subgraph.of(), {1: {1, 2, 3}, 2: {1, 2, 3}, 3: {1, 2}})
    assert [(v.clause, v.vertex) for v in bad] == [("outer vertex below 3", 3)]


def test_wheel_hub_below_five():
    G = wheel(5)
    L = {v: {1, 2, 3} for v in range(1, 6)}
    L[0] = {1, 2, 3, 4}
    bad = canvas_violations(G, Subgraph.of(), L)
    assert [(v.clause, v.vertex) for v in bad] == [("interior vertex below 5", 0)]


def test_every_violation_reported():
    G = wheel(4)
    L = {0: {1}, 1: {1}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {1, 2}}
    assert clauses(canvas_violations(G, Subgraph.of(), L)) == {"interior vertex below 5", "outer vertex below 3"}
    assert clauses(canvas_violations(G, Subgraph.of([0]), L)) == {"S not in outer boundary"}


def test_extra_lists_are_ignored():
    L = {1: {1, 2, 3}, 2: {1, 2, 3}, 3: {1, 2, 3}, 99: {7}}
    validate_canvas(triangle(), Subgraph.of(), L)


def test_validation_idempotent():
    L = {1: {1, 2, 3}, 2: {1, 2, 3}, 3: {4, 5, 6}}
    T = validate_canvas(triangle(), Subgraph.path(1, 2), L)
    T2 = validate_canvas(T.graph, T.S, T.lists)
    assert contains_canvas(T, T2) and contains_canvas(T2, T)
    assert Canvas.from_json(T.to_json()).lists == T.lists


def test_containment():
    L = {1: {1, 2}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {1, 2, 3}}
    S = Subgraph.of([1])
    T = validate_canvas(diamond(), S, L)
    assert contains_canvas(T, T)
    smaller = build_plane_graph({1: [2, 3], 2: [4, 1], 3: [1, 4], 4: [3, 2]}, [1, 2, 4, 3])
    assert contains_canvas(T, validate_canvas(smaller, S, L))
    shrunk = dict(L)
    shrunk[2] = {1, 2, 4}
    assert not contains_canvas(T, validate_canvas(diamond(), S, shrunk))


def test_subcanvas_after_deletion_revalidates():
    L = {v: {1, 2, 3} for v in range(1, 6)}
    L[0] = {1, 2, 3, 4, 5}
    T = validate_canvas(wheel(5), Subgraph.of(), L)
    H = delete_vertices(T.graph, {1})
    # the hub becomes an outer vertex; a list of five is still fine
    validate_canvas(H, Subgraph.of(), L)
