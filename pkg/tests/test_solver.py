import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmonica import _kernels
from harmonica.canvas import Subgraph, validate_canvas
from harmonica.errors import NotASeparatingChord, PinnedConflict, PreconditionViolated
from harmonica.generators import random_disk_triangulation
from harmonica.plane_graph import build_plane_graph
from harmonica.solver import (
    EdgeColoringSet,
    _Problem,
    check_chord_composition,
    count_bad_wheel_colorings,
    count_colorings,
    enumerate_colorings,
    extension_set,
    extension_set_by_enumeration,
    find_coloring,
    is_proper_coloring,
)

from helpers import cycle, diamond, from_faces, triangle


class View:
    def __init__(self, graph, lists):
        self.graph, self.lists = graph, lists


def brute_colorings(G, L, order):
    """Every proper coloring, by plain product over ``order``."""
    out = []
    for combo in itertools.product(*(sorted(L[v]) for v in order)):
        phi = dict(zip(order, combo))
        if all(phi[a] != phi[b] for a, b in G.edges):
            out.append(phi)
    return out


def test_triangle_two_colors_uncolorable():
    assert find_coloring(triangle(), {1: {1, 2}, 2: {1, 2}, 3: {1, 2}}) is None


def test_triangle_third_color_forced():
    L = {1: {1, 2}, 2: {1, 2}, 3: {1, 2, 3}}
    phi = find_coloring(triangle(), L)
    assert phi[3] == 3 and {phi[1], phi[2]} == {1, 2}
    # the 12 raw assignments contain exactly two proper ones
    assert len(brute_colorings(triangle(), L, [1, 2, 3])) == 2


def test_single_edge():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    assert find_coloring(G, {1: {1}, 2: {1, 2}}) == {1: 1, 2: 2}
    assert count_colorings(G, {1: {1, 2}, 2: {1, 2}}) == 2
    assert len(list(enumerate_colorings(G, {1: {1, 2}, 2: {1, 2}}))) == 2


def test_triangle_three_colors_six_ways():
    L = {v: {1, 2, 3} for v in (1, 2, 3)}
    sols = list(enumerate_colorings(triangle(), L))
    assert len(sols) == 6
    keys = [tuple(phi[v] for v in (1, 2, 3)) for phi in sols]
    assert keys == sorted(keys)


def test_pinned_conflicts():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    L = {1: {1, 2}, 2: {1, 2}}
    with pytest.raises(PinnedConflict):
        find_coloring(G, L, {1: 1, 2: 1})
    with pytest.raises(PinnedConflict):
        find_coloring(G, L, {1: 3})
    assert find_coloring(G, L, {1: 2}) == {1: 2, 2: 1}


DIAMOND_L = {1: {1, 2}, 2: {1, 2, 3}, 3: {1, 2, 3}, 4: {1, 2, 3}}


def test_diamond_recount_in_reverse_order():
    G = diamond()
    n = len(list(enumerate_colorings(G, DIAMOND_L)))
    assert n == len(brute_colorings(G, DIAMOND_L, [4, 3, 2, 1])) == count_colorings(G, DIAMOND_L)


def test_phi_single_edge_is_identity():
    G = build_plane_graph({1: [2], 2: [1]}, [1, 2])
    L = {1: {1, 2, 3}, 2: {1, 2, 3}}
    C = EdgeColoringSet.of((1, 2), [(1, 2), (3, 1)])
    assert extension_set(View(G, L), (1, 2), C, (1, 2)) == C


def test_phi_triangle():
    L = {1: {1, 2}, 2: {1, 2}, 3: {1, 2, 3}}
    C = EdgeColoringSet.of((1, 2), [(1, 2)])
    got = extension_set(View(triangle(), L), (1, 2), C, (2, 3))
    assert got.pairs == {(2, 3)}


def test_phi_diamond_and_chord_composition():
    # a=1, b=2, c=3, d=4; P=ab, P'=dc
    T = validate_canvas(diamond(), Subgraph.path(1, 2), DIAMOND_L)
    C = EdgeColoringSet.of((1, 2), [(1, 2)])
    got = extension_set(T, (1, 2), C, (4, 3))
    assert got.pairs == {(1, 3)}
    assert got == extension_set_by_enumeration(T, (1, 2), C, (4, 3))
    via = extension_set(T, (2, 3), extension_set(T, (1, 2), C, (2, 3)), (4, 3))
    assert via == got
    assert check_chord_composition(T, (1, 2), C, (2, 3), (4, 3))
    assert check_chord_composition(T, (1, 2), C, (4, 3), (4, 3))


def test_chord_composition_rejects_non_chords():
    T = validate_canvas(diamond(), Subgraph.path(1, 2), DIAMOND_L)
    C = EdgeColoringSet.of((1, 2), [(1, 2)])
    with pytest.raises(NotASeparatingChord):
        check_chord_composition(T, (1, 2), C, (1, 3), (4, 3))


def test_bad_wheel_colorings_when_graph_is_s():
    G = build_plane_graph({1: [2], 2: [3, 1], 3: [2]}, [1, 2, 3, 2])
    T = validate_canvas(G, Subgraph.path(1, 2, 3), {1: {1, 2}, 2: {1, 2, 3}, 3: {2, 3}})
    assert count_bad_wheel_colorings(T) == 0


def test_bad_wheel_fan():
    # five outer vertices 1..5 around a hub 0; S = 1-2-3
    faces = [[(i % 5) + 1, i, 0] for i in range(1, 6)]
    G = from_faces([1, 2, 3, 4, 5], faces)
    rng = random.Random(11)
    for _ in range(20):
        L = {v: frozenset(rng.sample(range(1, 7), 3)) for v in range(1, 6)}
        L[0] = frozenset(rng.sample(range(1, 7), 5))
        T = validate_canvas(G, Subgraph.path(1, 2, 3), L)
        assert count_bad_wheel_colorings(T) <= 1


def test_bad_wheel_needs_induced_chordless():
    T = validate_canvas(triangle(), Subgraph.path(1, 2, 3), {v: {1, 2, 3} for v in (1, 2, 3)})
    with pytest.raises(PreconditionViolated):
        count_bad_wheel_colorings(T)


def test_four_cycle_has_no_chords():
    G = cycle(1, 2, 3, 4)
    T = validate_canvas(G, Subgraph.path(1, 2, 3), {v: {1, 2, 3} for v in (1, 2, 3, 4)})
    assert count_bad_wheel_colorings(T) == 0


def random_instance(seed, outer, inner, palette, size):
    rng = random.Random(seed)
    G = random_disk_triangulation(rng, outer, inner)
    L = {v: frozenset(rng.sample(range(1, palette + 1), size)) for v in G.vertices}
    return G, L, rng


seeds = st.integers(0, 10**6)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(3, 6), st.integers(0, 4), st.integers(2, 4))
def test_find_agrees_with_enumeration(seed, outer, inner, size):
    G, L, _ = random_instance(seed, outer, inner, 5, size)
    sols = list(enumerate_colorings(G, L))
    found = find_coloring(G, L)
    assert (found is None) == (not sols)
    if found is not None:
        assert is_proper_coloring(G, L, found)
    assert count_colorings(G, L) == len(sols)
    assert len(brute_colorings(G, L, sorted(G.vertices, reverse=True))) == len(sols)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(3, 6), st.integers(0, 3))
def test_kernel_matches_python_source(seed, outer, inner):
    G, L, _ = random_instance(seed, outer, inner, 5, 3)
    prob = _Problem(G, L)
    out1 = np.full(len(prob.ids), -1, dtype=np.int64)
    out2 = np.full(len(prob.ids), -1, dtype=np.int64)
    n1 = _kernels.search(prob.indptr, prob.indices, prob.masks, 0, out1)
    n2 = _kernels.search.py_func(prob.indptr, prob.indices, prob.masks, 0, out2)
    assert n1 == n2
    assert (out1 == out2).all()


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(3, 6), st.integers(0, 3))
def test_phi_routes_and_monotonicity(seed, outer, inner):
    G, L, rng = random_instance(seed, outer, inner, 5, 3)
    outer_edges = sorted({tuple(sorted((a, b))) for a, b in zip(G.outer, G.outer[1:] + G.outer[:1])})
    P = rng.choice(outer_edges)
    P2 = rng.choice(outer_edges)
    allp = [(a, b) for a in sorted(L[P[0]]) for b in sorted(L[P[1]]) if a != b]
    C2 = EdgeColoringSet.of(P, rng.sample(allp, rng.randint(1, len(allp))))
    C1 = C2.with_pairs(rng.sample(sorted(C2.pairs), rng.randint(1, len(C2))))
    T = View(G, L)
    phi1, phi2 = extension_set(T, P, C1, P2), extension_set(T, P, C2, P2)
    assert phi1 == extension_set_by_enumeration(T, P, C1, P2)
    assert phi1.pairs <= phi2.pairs
    assert phi2.respects(L)
