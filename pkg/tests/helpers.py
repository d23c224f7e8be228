"""Small graph builders and a brute-force harmonica oracle for the tests."""

from itertools import combinations

import networkx as nx

from harmonica.plane_graph import build_plane_graph, sub_outer_incidence


def from_faces(outer, inner_faces, extra_vertices=()):
    """Plane graph from its outer walk and the other faces.

    Each inner face is listed so that it traverses every shared edge in the
    direction opposite to its neighbour (the outer walk included).
    """
    succ = {}
    for walk in [outer, *inner_faces]:
        k = len(walk)
        for i in range(k):
            a, b, c = walk[i - 1], walk[i], walk[(i + 1) % k]
            succ.setdefault(b, {})[a] = c
    rot = {}
    for v, s in succ.items():
        start = min(s)
        order, cur = [start], s[start]
        while cur != start:
            order.append(cur)
            cur = s[cur]
        rot[v] = order
    for v in extra_vertices:
        rot.setdefault(v, [])
    return build_plane_graph(rot, outer)


def triangle(u=1, v=2, w=3):
    return from_faces([u, v, w], [[w, v, u]])


def diamond(a=1, b=2, c=3, d=4):
    """Outer cycle a-b-d-c with chord bc."""
    return from_faces([a, b, d, c], [[a, c, b], [b, c, d]])


def k4():
    return from_faces([1, 2, 3], [[2, 1, 4], [3, 2, 4], [1, 3, 4]])


def wheel(rim):
    """Hub 0 joined to the cycle 1..rim."""
    cyc = list(range(1, rim + 1))
    faces = [[cyc[(i + 1) % rim], cyc[i], 0] for i in range(rim)]
    return from_faces(cyc, faces)


def cycle(*vs):
    return from_faces(list(vs), [list(reversed(vs))])


def bowtie():
    """Two triangles 1-2-3 and 3-4-5 glued at 3."""
    return from_faces([1, 2, 3, 4, 5, 3], [[3, 2, 1], [5, 4, 3]])


# --- literal harmonica recursion -----------------------------------------
def host_triangles(G):
    return [t for t in combinations(sorted(G.vertices), 3) if all(G.has_edge(a, b) for a, b in combinations(t, 2))]


class _Sub:
    def __init__(self, host, verts, edges):
        self.host = host
        self.verts = frozenset(verts)
        self.edges = frozenset(e for e in edges if e[0] in self.verts and e[1] in self.verts)
        self.outer_v, darts = sub_outer_incidence(host, self.verts, self.edges)
        self.outer_e = {frozenset(d) for d in darts}
        g = nx.Graph()
        g.add_nodes_from(self.verts)
        g.add_edges_from(self.edges)
        self.connected = nx.is_connected(g)
        self.g = g

    def minus(self, drop):
        return _Sub(self.host, self.verts - set(drop), self.edges)

    def adjacent(self, a, b):
        return self.g.has_edge(a, b)


def _from_edge(H, L, u, v, w):
    if not H.connected or len({u, v, w}) < 3 or not {u, v, w} <= H.outer_v:
        return False
    if frozenset((u, v)) not in H.outer_e:
        return False
    if H.verts == {u, v, w} and len(H.edges) == 3 and L[u] == L[v] == L[w] and len(L[u]) == 2:
        return True
    if not (L[u] == L[v] and len(L[u]) == 2):
        return False
    for z in sorted(H.verts - {u, v}):
        if z not in H.outer_v or not (H.adjacent(u, z) and H.adjacent(v, z)):
            continue
        if not L[u] <= L[z] or len(L[z]) != 3:
            continue
        for drop in ({u}, {v}, {u, v}):
            L2 = dict(L)
            L2[z] = L[z] - L[u]
            if z != w and _from_vertex(H.minus(drop), L2, z, w):
                return True
    return False


def _from_vertex(H, L, u, w):
    if not H.connected or u == w or not {u, w} <= H.outer_v or len(L[u]) != 1:
        return False
    for x, y in combinations(sorted(H.verts - {u}), 2):
        if not {x, y} <= H.outer_v or not (H.adjacent(u, x) and H.adjacent(u, y) and H.adjacent(x, y)):
            continue
        mx, my = L[x] - L[u], L[y] - L[u]
        if mx != my or len(mx) != 2:
            continue
        L2 = dict(L)
        L2[x], L2[y] = mx, my
        if _from_edge(H.minus({u}), L2, x, y, w):
            return True
    return False


def oracle_contains_harmonica(G, lists, p1, p2):
    """Does ``(G, lists)`` contain a coloring harmonica from ``p1`` to ``p2``?

    Any contained harmonica can be thinned to the union of the triangles its
    recursion names, so every union of host triangles is tried as the
    candidate subgraph and checked against the recursive definition.
    """
    tris = host_triangles(G)
    at_p1 = [t for t in tris if p1 in t]
    at_p2 = [t for t in tris if p2 in t]
    if not at_p1 or not at_p2:
        return False
    for k in range(1, len(tris) + 1):
        for chosen in combinations(tris, k):
            verts = {v for t in chosen for v in t}
            if p1 not in verts or p2 not in verts:
                continue
            edges = {tuple(sorted(e)) for t in chosen for e in combinations(t, 2)}
            H = _Sub(G, verts, edges)
            L = {v: frozenset(lists[v]) for v in verts}
            if _from_vertex(H, L, p1, p2):
                return True
    return False
