"""Random instances for the property suites.

Every generator takes an explicit :class:`random.Random` so a trial is a
pure function of its seed.  Graphs are near-triangulations of a disk: an
outer cycle whose bounded faces are all triangles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations, product

from .canvas import Canvas, Subgraph, s_colorable, validate_canvas
from .errors import InfeasibleParameters
from .governments import is_government
from .plane_graph import PlaneGraph, build_plane_graph, chords_of_outer, edge_key
from .solver import EdgeColoringSet, separates


# --- triangulations -------------------------------------------------------
def _rotations(n_total: int, outer: list[int], faces: set[tuple[int, int, int]]) -> dict[int, list[int]]:
    succ: dict[int, dict[int, int]] = {v: {} for v in range(n_total)}
    walks = list(faces) + [tuple(outer)]
    for walk in walks:
        k = len(walk)
        for i in range(k):
            a, b, c = walk[i - 1], walk[i], walk[(i + 1) % k]
            succ[b][a] = c
    rot = {}
    for v, s in succ.items():
        start = min(s)
        order, cur = [start], s[start]
        while cur != start:
            order.append(cur)
            cur = s[cur]
        rot[v] = order
    return rot


def _canon(face) -> tuple[int, int, int]:
    i = face.index(min(face))
    return tuple(face[i:] + face[:i])


def _flip(faces: set, outer_set: set, edges: set, n: int, rng: random.Random, chords: bool) -> None:
    dart_face = {}
    for f in faces:
        for i in range(3):
            dart_face[(f[i], f[(i + 1) % 3])] = f
    cands = sorted(e for e in edges if not (e[0] in outer_set and e[1] in outer_set and abs(e[0] - e[1]) in (1, n - 1)))
    if not cands:
        return
    a, b = rng.choice(cands)
    f1, f2 = dart_face.get((a, b)), dart_face.get((b, a))
    if f1 is None or f2 is None:
        return
    c = next(v for v in f1 if v not in (a, b))
    d = next(v for v in f2 if v not in (a, b))
    if c == d or edge_key(c, d) in edges:
        return
    if not chords and c in outer_set and d in outer_set:
        return
    # f1 traced a->b->c, f2 traced b->a->d; the quad is a->d->b->c
    faces.discard(f1)
    faces.discard(f2)
    faces.add(_canon((a, d, c)))
    faces.add(_canon((d, b, c)))
    edges.discard(edge_key(a, b))
    edges.add(edge_key(c, d))


def random_disk_triangulation(seed, outer_len: int, interior_count: int, chords: bool = False, flips: int | None = None) -> PlaneGraph:
    """Near-triangulated disk with ``outer_len`` boundary and ``interior_count`` inner vertices.

    Without interior vertices the polygon is triangulated by random ears, so
    chords are unavoidable beyond the triangle.  With interior vertices a
    hub is joined to the whole cycle, further vertices split random faces,
    and random flips reshape the result; ``chords`` lets flips create chords.
    Vertex ids are ``1..n`` in a random order.
    """
    if outer_len < 3 or interior_count < 0:
        raise InfeasibleParameters(f"outer_len={outer_len}, interior_count={interior_count}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = outer_len
    outer = list(range(n))
    faces: set[tuple[int, int, int]] = set()
    edges = {edge_key(i, (i + 1) % n) for i in range(n)}
    if interior_count == 0:
        poly = list(range(n))
        while len(poly) > 3:
            i = rng.randrange(len(poly))
            prev, cur, nxt = poly[i - 1], poly[i], poly[(i + 1) % len(poly)]
            faces.add(_canon((nxt, cur, prev)))
            edges.add(edge_key(prev, nxt))
            poly.pop(i)
        faces.add(_canon((poly[2], poly[1], poly[0])))
    else:
        hub = n
        for i in range(n):
            faces.add(_canon(((i + 1) % n, i, hub)))
            edges.add(edge_key(i, hub))
        for x in range(n + 1, n + interior_count):
            a, b, c = rng.choice(sorted(faces))
            faces.discard((a, b, c))
            faces.update({_canon((a, b, x)), _canon((b, c, x)), _canon((c, a, x))})
            edges.update({edge_key(a, x), edge_key(b, x), edge_key(c, x)})
        count = 2 * interior_count if flips is None else flips
        for _ in range(count):
            _flip(faces, set(outer), edges, n, rng, chords)
    total = n + interior_count
    rot = _rotations(total, outer, faces)
    labels = list(range(1, total + 1))
    rng.shuffle(labels)
    relabel = dict(zip(range(total), labels))
    rot2 = {relabel[v]: [relabel[u] for u in nb] for v, nb in rot.items()}
    return build_plane_graph(rot2, [relabel[v] for v in outer])


def harmonica_ladder(length: int, extra_color: bool = False):
    """Triangle strip of ``length`` start stages joined at cutvertices.

    Stage ``i`` is the diamond ``z, x_i, y_i, z'`` with chord ``x_i y_i``
    where ``z`` is the previous joint (the source ``u`` for stage 0) and
    ``z'`` the next joint (the sink ``w`` for the last stage).  Lists make
    the whole strip a coloring harmonica from ``u`` to ``w``; with
    ``extra_color`` the sink gets one fresh color and the strip colors.
    Returns ``(graph, lists, u, w)``.
    """
    if length < 1:
        raise InfeasibleParameters(f"ladder length {length}")
    u = 0
    joints, tops, bottoms = [u], [], []
    nxt = 1
    for i in range(length):
        tops.append(nxt)
        bottoms.append(nxt + 1)
        joints.append(nxt + 2)
        nxt += 3
    w = joints[-1]
    outer = [u]
    for i in range(length):
        outer += [tops[i], joints[i + 1]]
    outer.pop()
    outer.append(w)
    for i in reversed(range(length)):
        outer.append(bottoms[i])
        if i:
            outer.append(joints[i])
    faces = set()
    for i in range(length):
        a, x, y, b = joints[i], tops[i], bottoms[i], joints[i + 1]
        faces.add((x, a, y))
        faces.add((x, y, b))
    rot = _rotations(nxt, outer, faces)
    G = build_plane_graph({v + 1: [t + 1 for t in nb] for v, nb in rot.items()}, [v + 1 for v in outer])
    L = {u + 1: frozenset({1})}
    for i in range(length):
        single, pair = 3 * i + 1, {3 * i + 2, 3 * i + 3}
        L[tops[i] + 1] = L[bottoms[i] + 1] = frozenset(pair | {single})
        L[joints[i + 1] + 1] = frozenset(pair | {single + 3})
    L[w + 1] = frozenset({3 * length - 1, 3 * length} | ({3 * length + 1} if extra_color else set()))
    return G, L, u + 1, w + 1


# --- lists ----------------------------------------------------------------
def _sample(rng: random.Random, palette: int, size: int, must=(), avoid=()) -> frozenset[int]:
    must = set(must)
    pool = [c for c in range(1, palette + 1) if c not in must and c not in avoid]
    if size - len(must) > len(pool):
        raise InfeasibleParameters(f"palette {palette} too small for a list of size {size}")
    return frozenset(must | set(rng.sample(pool, size - len(must))))


def _default_lists(rng, G: PlaneGraph, palette: int) -> dict[int, frozenset[int]]:
    outer = G.outer_vertices
    return {v: _sample(rng, palette, 3 if v in outer else 5) for v in G.vertices}


def _cycle_order(G: PlaneGraph) -> list[int]:
    return list(G.outer)


# --- harmonica planting ---------------------------------------------------
def _plant_chain(rng: random.Random, G: PlaneGraph, p1: int, max_steps: int = 6):
    """A random chain of triangles on boundary vertices starting at ``p1``.

    Returns ``(steps, w)`` with steps in certificate form, or ``None``.
    """
    outer = G.outer_vertices

    def tri_at(u, used):
        nb = [v for v in G.neighbors(u) if v in outer and v not in used]
        out = [(x, y) for x, y in combinations(sorted(nb), 2) if G.has_edge(x, y)]
        rng.shuffle(out)
        return out

    def from_vertex(u, used, kept, depth):
        for x, y in tri_at(u, used - ({kept} if kept is not None else set())):
            if kept is not None and kept not in (x, y):
                continue
            res = from_edge(x, y, used | {u, x, y}, depth, [("start", (u, x, y), ())])
            if res:
                return res
        return None

    def from_edge(a, b, used, depth, acc):
        common = sorted(z for z in G.neighbors(a) & G.neighbors(b) if z in outer and z not in used)
        rng.shuffle(common)
        order = ["base", "step"] if rng.random() < 0.4 or depth >= max_steps else ["step", "base"]
        for kind in order:
            if kind == "base" and common:
                w = common[0]
                return acc + [("base", (a, b, w), ())], w
            if kind == "step" and depth < max_steps:
                for z in common:
                    keep = rng.choice([None, a, b])
                    dropped = tuple(sorted({a, b} - {keep}))
                    res = from_vertex(z, used | {z}, keep, depth + 1)
                    if res:
                        tail, w = res
                        return acc + [("step", (a, b, z), dropped)] + tail, w
        return None

    return from_vertex(p1, {p1}, None, 0)


def _chain_lists(rng, palette: int, steps) -> dict[int, frozenset[int]]:
    """Lists that make ``steps`` a coloring harmonica (host lists)."""
    L: dict[int, frozenset[int]] = {}
    lam: dict[int, frozenset[int]] = {}
    for kind, verts, _ in steps:
        if kind == "start":
            u, x, y = verts
            if u not in L:
                L[u] = _sample(rng, palette, 1)
                lam[u] = L[u]
            (b,) = lam[u]
            kept = [v for v in (x, y) if v in lam]
            M = lam[kept[0]] if kept else _sample(rng, palette, 2, avoid={b})
            for v in (x, y):
                if v not in lam:
                    L[v] = M | {b}
                    lam[v] = M
                else:
                    lam[v] = lam[v] - {b}
        elif kind == "step":
            u, v, z = verts
            M = lam[u]
            L[z] = _sample(rng, palette, 3, must=M)
            lam[z] = L[z] - M
        else:
            u, v, w = verts
            L[w] = lam[u]
    return L


def _perturb(rng, palette: int, L: dict, vertices) -> None:
    v = rng.choice(sorted(vertices))
    cur = set(L[v])
    old = rng.choice(sorted(cur))
    new = rng.choice([c for c in range(1, palette + 1) if c not in cur] or [old])
    L[v] = frozenset(cur - {old} | {new})


# --- profiles -------------------------------------------------------------
@dataclass(frozen=True)
class GeneratorProfile:
    name: str
    outer: tuple[int, int]
    interior: tuple[int, int]
    palette: int = 8
    bias: float = 0.5
    max_vertices: int = 12
    chords: bool = False


PROFILES = {
    "thm1": GeneratorProfile("thm1", (3, 9), (0, 6), max_vertices=14, chords=True),
    "thm2": GeneratorProfile("thm2", (3, 9), (0, 6), max_vertices=14, chords=True),
    "thm3": GeneratorProfile("thm3", (3, 9), (0, 4), bias=0.5, max_vertices=12, chords=True),
    "lemma5": GeneratorProfile("lemma5", (4, 8), (1, 5), palette=5, max_vertices=12),
    "chords": GeneratorProfile("chords", (4, 9), (0, 3), max_vertices=11, chords=True),
    "reduction": GeneratorProfile("reduction", (4, 9), (0, 4), max_vertices=12),
    "thm9": GeneratorProfile("thm9", (3, 6), (0, 2), palette=5, bias=0.5, max_vertices=8, chords=True),
}


@dataclass(frozen=True, eq=False)
class Instance:
    profile: str
    canvas: Canvas
    roles: dict = field(default_factory=dict)

    @property
    def graph(self) -> PlaneGraph:
        return self.canvas.graph

    @property
    def lists(self):
        return self.canvas.lists

    def to_json(self) -> dict:
        out = self.canvas.to_json()
        out["profile"] = self.profile
        out["roles"] = self.roles
        return out


def _sizes(rng, prof: GeneratorProfile, need_interior: int = 0):
    lo, hi = prof.interior
    n_out = rng.randint(*prof.outer)
    n_in = rng.randint(max(lo, need_interior), hi)
    n_in = max(need_interior, min(n_in, prof.max_vertices - n_out))
    return n_out, n_in


def _graph(rng, prof, need_interior=0, chords=None):
    n_out, n_in = _sizes(rng, prof, need_interior)
    use_chords = prof.chords if chords is None else chords
    return random_disk_triangulation(rng, n_out, n_in, chords=use_chords)


def _thm1(rng, prof):
    G = _graph(rng, prof)
    L = _default_lists(rng, G, prof.palette)
    walk = _cycle_order(G)
    i = rng.randrange(len(walk))
    p1, p2 = walk[i], walk[(i + 1) % len(walk)]
    a, b = rng.sample(range(1, prof.palette + 1), 2)
    L[p1], L[p2] = frozenset({a}), frozenset({b})
    return Instance("thm1", validate_canvas(G, Subgraph.path(p1, p2), L), {"p1": p1, "p2": p2})


def _thm2(rng, prof):
    G = _graph(rng, prof)
    L = _default_lists(rng, G, prof.palette)
    p1, p2 = rng.sample(sorted(G.outer_vertices), 2)
    L[p1] = _sample(rng, prof.palette, 2)
    L[p2] = _sample(rng, prof.palette, 2)
    return Instance("thm2", validate_canvas(G, Subgraph.of([p1, p2]), L), {"p1": p1, "p2": p2})


def _thm3(rng, prof):
    G = _graph(rng, prof, chords=rng.random() < 0.7)
    L = _default_lists(rng, G, prof.palette)
    outer = sorted(G.outer_vertices)
    planted = False
    if rng.random() < prof.bias:
        starts = rng.sample(outer, len(outer))
        found = None
        for p1 in starts:
            found = _plant_chain(rng, G, p1)
            if found is not None:
                break
        if found is not None:
            steps, p2 = found
            L.update(_chain_lists(rng, prof.palette, steps))
            planted = "chain"
            if rng.random() < 0.3:
                chain = {v for _, vs, _ in steps for v in vs} - {p1, p2}
                _perturb(rng, prof.palette, L, chain)
                planted = "near-miss"
    if not planted:
        p1, p2 = rng.sample(outer, 2)
        L[p1] = _sample(rng, prof.palette, 1 if rng.random() < 0.8 else 2)
        L[p2] = _sample(rng, prof.palette, 2)
    roles = {"p1": p1, "p2": p2, "planted": planted}
    return Instance("thm3", validate_canvas(G, Subgraph.of([p1, p2]), L), roles)


def _lemma5(rng, prof):
    G = _graph(rng, prof, need_interior=1, chords=False)
    L = _default_lists(rng, G, prof.palette)
    walk = _cycle_order(G)
    i = rng.randrange(len(walk))
    p, q, r = walk[i - 1], walk[i], walk[(i + 1) % len(walk)]
    S = Subgraph.path(p, q, r)
    while True:
        for v in (p, q, r):
            L[v] = _sample(rng, prof.palette, rng.choice((1, 2, 3, 3)))
        if s_colorable(S, L):
            break
    planted = rng.random() < prof.bias
    if planted:
        # aim one S-coloring at a 2-colored remainder so that it is likely not to extend
        proper = [t for t in product(sorted(L[p]), sorted(L[q]), sorted(L[r])) if t[0] != t[1] != t[2]]
        target = dict(zip((p, q, r), rng.choice(proper)))
        M = _sample(rng, prof.palette, 2, avoid=set(target.values()))
        outer = G.outer_vertices
        for v in G.vertices:
            if v in target:
                continue
            seen = sorted({target[u] for u in G.neighbors(v) if u in target})
            if v in outer:
                extra = seen[:1] or sorted(_sample(rng, prof.palette, 1, avoid=M))
                L[v] = M | set(extra)
            else:
                L[v] = _sample(rng, prof.palette, 5, must=M | set(seen[:3]))
    return Instance("lemma5", validate_canvas(G, S, L), {"S": [p, q, r], "planted": planted})


def _chords(rng, prof):
    for _ in range(100):
        n_out, n_in = _sizes(rng, prof)
        G = random_disk_triangulation(rng, n_out, n_in, chords=True, flips=4 * n_in)
        chords = sorted(chords_of_outer(G))
        if not chords:
            continue
        U = rng.choice(chords)
        walk = _cycle_order(G)
        bedges = [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]
        pairs = [(P, P2) for P in bedges for P2 in bedges if P != P2 and separates(G, U, P, P2)]
        if not pairs:
            continue
        P, P2 = rng.choice(pairs)
        L = _default_lists(rng, G, prof.palette)
        for v in P:
            L[v] = _sample(rng, prof.palette, rng.choice((1, 2, 3)))
        proper = [(a, b) for a in sorted(L[P[0]]) for b in sorted(L[P[1]]) if a != b]
        if not proper:
            continue
        C = rng.sample(proper, rng.randint(1, len(proper)))
        T = validate_canvas(G, Subgraph.path(*P), L)
        return Instance("chords", T, {"P": list(P), "P2": list(P2), "U": list(U), "C": sorted(map(list, C))})
    raise InfeasibleParameters("no separating chord found")


def _reduction(rng, prof):
    for _ in range(100):
        G = _graph(rng, prof, chords=False)
        if chords_of_outer(G):
            continue
        walk = _cycle_order(G)
        n = len(walk)
        k = rng.randint(1, max(1, min(3, n - 3)))
        i = rng.randrange(n)
        P = [walk[(i + j) % n] for j in range(k)]
        left, right = walk[(i - 1) % n], walk[(i + k) % n]
        x, y = (left, right) if rng.random() < 0.5 else (right, left)
        L0 = frozenset(rng.sample(range(1, prof.palette + 1), 2))
        L = _default_lists(rng, G, prof.palette)
        for v in P:
            L[v] = _sample(rng, prof.palette, 3, must=L0)
        near = {u for v in P for u in G.neighbors(v)} - set(P)
        S_verts, S_edges = set(), []
        mode = rng.choice(("none", "x", "edge"))
        if mode == "x":
            L[x] = _sample(rng, prof.palette, rng.choice((1, 2)), must=[rng.choice(sorted(set(range(1, prof.palette + 1)) - L0))])
            S_verts.add(x)
        elif mode == "edge":
            far = [(walk[j], walk[(j + 1) % n]) for j in range(n)]
            far = [e for e in far if not (set(e) & (near | set(P) | {x, y}))]
            if far:
                a, b = rng.choice(far)
                L[a], L[b] = _sample(rng, prof.palette, 1), _sample(rng, prof.palette, 2)
                S_edges.append((a, b))
        if not (L[x] - L0):
            L[x] = L[x] | _sample(rng, prof.palette, 1, avoid=L0 | L[x])
        T = validate_canvas(G, Subgraph.of(S_verts, S_edges), L)
        return Instance("reduction", T, {"path": P, "L0": sorted(L0), "x": x})
    raise InfeasibleParameters("no reducible path found")


def _thm9(rng, prof):
    if rng.random() < prof.bias:
        inst = _thm9_planted(rng, prof)
        if inst is not None:
            return inst
    G = _graph(rng, prof)
    L = _default_lists(rng, G, prof.palette)
    walk = _cycle_order(G)
    n = len(walk)
    i, j = rng.randrange(n), rng.randrange(n)
    P, P2 = (walk[i], walk[(i + 1) % n]), (walk[j], walk[(j + 1) % n])
    for v in P:
        L[v] = _sample(rng, prof.palette, rng.choice((2, 3)))
    C = _random_government_set(rng, L, P)
    if C is None:
        return _thm9(rng, prof)
    return Instance("thm9", validate_canvas(G, Subgraph.path(*P), L), {"P": list(P), "P2": list(P2), "C": C[1], "kind": C[0]})


def _random_government_set(rng, L, P):
    p, q = P
    proper = [(a, b) for a in sorted(L[p]) for b in sorted(L[q]) if a != b]
    dicts = []
    for i in (0, 1):
        for c in sorted(L[P[i]]):
            group = [pr for pr in proper if pr[i] == c]
            if len(group) >= 2:
                dicts.append(group)
    demos = [[(a, b), (b, a)] for a, b in proper if a < b and (b, a) in proper]
    govs = [sorted(rng.sample(g, rng.randint(2, len(g)))) for g in dicts] + demos
    if not govs:
        return None
    if rng.random() < 0.5 and len(govs) >= 2:
        g1, g2 = rng.sample(govs, 2)
        union = sorted(set(g1) | set(g2))
        if not is_government(EdgeColoringSet.of(P, union)):
            return "confederacy", [list(pr) for pr in union]
    return "government", [list(pr) for pr in rng.choice(govs)]


def _thm9_planted(rng, prof):
    """The shape used when proving the two-vertex theorem: dictatorship at ``p1``, fresh color at ``p2``."""
    G = _graph(rng, prof, chords=True)
    outer = sorted(G.outer_vertices)
    p1 = rng.choice(outer)
    found = _plant_chain(rng, G, p1, max_steps=2)
    if found is None:
        return None
    steps, p2 = found
    L = _default_lists(rng, G, prof.palette)
    L.update(_chain_lists(rng, prof.palette, steps))
    _, (u, x, y), _ = steps[0]
    v1 = x if G.is_outer_edge(p1, x) else (y if G.is_outer_edge(p1, y) else None)
    if v1 is None:
        return None
    v2 = next((z for z in sorted(G.neighbors(p2)) if G.is_outer_edge(p2, z) and z != p1), None)
    if v2 is None:
        return None
    fresh = prof.palette + 1
    L[p2] = L[p2] | {fresh}
    (c,) = L[p1]
    C = [[c, b] for b in sorted(L[v1] - {c})]
    if len(C) < 2:
        return None
    T = validate_canvas(G, Subgraph.path(p1, v1), L)
    return Instance("thm9", T, {"P": [p1, v1], "P2": [p2, v2], "C": C, "kind": "government", "planted": True})


_BUILDERS = {
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "lemma5": _lemma5,
    "chords": _chords,
    "reduction": _reduction,
    "thm9": _thm9,
}


def random_canvas(profile: str | GeneratorProfile, seed, palette: int | None = None) -> Instance:
    """One instance of ``profile``; ``seed`` is an int, string or ``random.Random``."""
    prof = PROFILES[profile] if isinstance(profile, str) else profile
    if palette is not None:
        if palette < 5:
            raise InfeasibleParameters(f"palette {palette} cannot hold a list of five colors")
        prof = replace(prof, palette=palette)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _BUILDERS[prof.name](rng, prof)
