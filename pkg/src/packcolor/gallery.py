"""Named graphs, polyhedral embeddings and small-graph generators."""
from __future__ import annotations

import itertools
import random
from typing import Iterator

import networkx as nx
import numpy as np

from . import _gen
from .graph import Graph, PlaneEmbedding


def from_networkx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(idx[a], idx[b]) for a, b in h.edges()])


def embed_networkx(h: nx.Graph) -> PlaneEmbedding:
    """Plane embedding of a planar networkx graph (one of possibly many)."""
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise ValueError("graph is not planar")
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    g = from_networkx(h)
    rot = [[idx[w] for w in emb.neighbors_cw_order(v)] if h.degree(v) else [] for v in nodes]
    return PlaneEmbedding(g, rot)


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph())


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def octahedron() -> PlaneEmbedding:
    return embed_networkx(nx.octahedral_graph())


def cube() -> PlaneEmbedding:
    return embed_networkx(nx.cubical_graph())


def dodecahedron() -> PlaneEmbedding:
    return embed_networkx(nx.dodecahedral_graph())


def icosahedron() -> PlaneEmbedding:
    return embed_networkx(nx.icosahedral_graph())


def k4() -> PlaneEmbedding:
    return embed_networkx(nx.complete_graph(4))


def triangle() -> PlaneEmbedding:
    return PlaneEmbedding(complete(3), [[1, 2], [2, 0], [0, 1]])


_GADGET_EDGES = (
    "0-1 0-3 0-7 0-8 1-2 1-10 1-11 2-3 2-11 2-14 3-8 3-14 4-5 4-6 4-10 4-11 5-9 5-10 5-13 "
    "6-8 6-11 6-14 7-9 7-12 7-15 8-14 9-13 9-15 10-12 12-13 12-15 13-15")


def pentagon_triangle_gadget() -> PlaneEmbedding:
    """4-regular, 3-connected plane graph with a 5-face whose only 3-face
    neighbour is a triangle with no other 5+-face neighbour.

    Found as the medial graph of a small plane graph; 3-connectivity makes
    the face structure independent of the embedding chosen.
    """
    return embed_networkx(nx.Graph([tuple(map(int, x.split("-"))) for x in _GADGET_EDGES.split()]))


# ---------------------------------------------------------------- random plane graphs

def _insert_after(rot: list[list[int]], v: int, after: int, x: int) -> None:
    r = rot[v]
    r.insert(r.index(after) + 1, x)


def random_triangulation(n: int, rng: random.Random) -> PlaneEmbedding:
    """Stacked triangulation: repeatedly put a new vertex inside a random face."""
    if n < 3:
        raise ValueError("need n >= 3")
    rot = [[1, 2], [2, 0], [0, 1]]
    faces = [(0, 1, 2), (0, 2, 1)]
    for x in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        # face walk a -> b -> c: succ_b(a) = c, succ_c(b) = a, succ_a(c) = b
        _insert_after(rot, b, a, x)
        _insert_after(rot, c, b, x)
        _insert_after(rot, a, c, x)
        rot.append([b, a, c])
        faces += [(a, b, x), (b, c, x), (c, a, x)]
    edges = {(min(u, w), max(u, w)) for u in range(n) for w in rot[u]}
    return PlaneEmbedding(Graph(n, sorted(edges)), rot)


def random_quadrangulation(n: int, rng: random.Random) -> PlaneEmbedding:
    """Start from a 4-cycle; split a random 4-face a b c d by a new vertex on a, c."""
    if n < 4:
        raise ValueError("need n >= 4")
    rot = [[1, 3], [2, 0], [3, 1], [0, 2]]
    faces = [(0, 1, 2, 3), (0, 3, 2, 1)]
    for x in range(4, n):
        a, b, c, d = faces.pop(rng.randrange(len(faces)))
        if rng.random() < 0.5:
            a, b, c, d = b, c, d, a
        # walk a b c d: succ_a(d) = b and succ_c(b) = d
        _insert_after(rot, a, d, x)
        _insert_after(rot, c, b, x)
        rot.append([a, c])
        faces += [(a, b, c, x), (c, d, a, x)]
    edges = {(min(u, w), max(u, w)) for u in range(n) for w in rot[u]}
    return PlaneEmbedding(Graph(n, sorted(edges)), rot)


def delete_edges(e: PlaneEmbedding, drop) -> PlaneEmbedding:
    gone = {frozenset(x) for x in drop}
    rot = [[w for w in e.rotation[v] if frozenset((v, w)) not in gone] for v in range(e.graph.n)]
    g = Graph(e.graph.n, [x for x in e.graph.edges() if frozenset(x) not in gone])
    return PlaneEmbedding(g, rot)


def random_bounded_plane_graph(n: int, rng: random.Random, max_degree: int = 4,
                               min_degree: int = 0, extra_drop: float = 0.0,
                               tries: int = 50) -> PlaneEmbedding | None:
    """Random connected plane graph with max degree bounded, from a triangulation.

    Edges at overfull vertices are removed (preferring partners that stay
    at or above ``min_degree``); then each remaining edge is dropped with
    probability ``extra_drop`` when that keeps the bounds and connectivity.
    Returns None if no attempt produced a valid graph.
    """
    for _ in range(tries):
        e = random_triangulation(n, rng)
        adj = [set(e.graph.adj[v]) for v in range(n)]
        removed = set()
        stuck = False
        while True:
            over = [v for v in range(n) if len(adj[v]) > max_degree]
            if not over:
                break
            v = rng.choice(over)
            cand = sorted(adj[v], key=lambda w: (-(len(adj[w]) > max(min_degree, 1)), -len(adj[w]), rng.random()))
            w = cand[0]
            if len(adj[w]) <= 1:
                stuck = True
                break
            adj[v].discard(w)
            adj[w].discard(v)
            removed.add((v, w))
        if stuck:
            continue
        for u, w in sorted(e.graph.edges(), key=lambda _: rng.random()):
            if (u, w) in removed or (w, u) in removed or rng.random() >= extra_drop:
                continue
            if len(adj[u]) > min_degree and len(adj[w]) > min_degree:
                adj[u].discard(w)
                adj[w].discard(u)
                if _connected(adj):
                    removed.add((u, w))
                else:
                    adj[u].add(w)
                    adj[w].add(u)
        if not _connected(adj):
            continue
        if min(len(a) for a in adj) < min_degree:
            continue
        return delete_edges(e, removed)
    return None


def _connected(adj) -> bool:
    seen, todo = {0}, [0]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(adj)


# ---------------------------------------------------------------- exhaustive small graphs

def connected_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs on n vertices up to isomorphism (n <= 8).

    n <= 7 comes from the networkx atlas; n = 8 extends every connected
    7-vertex graph by a vertex joined to a nonempty subset, then removes
    isomorphic duplicates (every connected graph has a non-cut vertex).
    """
    if n <= 7:
        for h in nx.graph_atlas_g():
            if h.number_of_nodes() == n and (n == 0 or nx.is_connected(h)):
                yield from_networkx(h)
        return
    if n != 8:
        raise ValueError("exhaustive generation is limited to n <= 8")
    buckets: dict[tuple, list[nx.Graph]] = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != 7 or not nx.is_connected(h):
            continue
        for mask in range(1, 1 << 7):
            k = h.copy()
            k.add_edges_from((7, i) for i in range(7) if mask >> i & 1)
            key = _invariant(k)
            group = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(k, o) for o in group):
                continue
            group.append(k)
    for key in sorted(buckets):
        for k in buckets[key]:
            yield from_networkx(k)


def plane_graphs_small(max_n: int = 7, max_degree: int = 4) -> Iterator[PlaneEmbedding]:
    """Every connected planar graph with n <= max_n (<= 7) and bounded degree, one embedding each."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n or not nx.is_connected(h):
            continue
        if max(d for _, d in h.degree()) > max_degree:
            continue
        if nx.check_planarity(h)[0]:
            yield embed_networkx(h)


def _invariant(h: nx.Graph) -> tuple:
    """Isomorphism invariant used to bucket graphs before exact tests."""
    a = nx.to_numpy_array(h, nodelist=sorted(h.nodes()))
    spec = tuple(np.round(np.linalg.eigvalsh(a), 6) + 0.0)
    tri = tuple(sorted(nx.triangles(h).values()))
    return tuple(sorted(d for _, d in h.degree())), tri, spec


def _unique(graphs) -> list[nx.Graph]:
    buckets: dict[tuple, list[nx.Graph]] = {}
    for h in graphs:
        group = buckets.setdefault(_invariant(h), [])
        if not any(nx.is_isomorphic(h, o) for o in group):
            group.append(h)
    return [h for key in sorted(buckets) for h in buckets[key]]


def degree_34_graphs(n: int, lemma_prune: bool = True, triangle_mode: int = 0) -> list[Graph]:
    """All connected graphs on n vertices with every degree 3 or 4, up to isomorphism.

    With ``lemma_prune`` graphs with two adjacent 3-vertices or a 3-vertex
    on a triangle are skipped during the search.  ``triangle_mode`` 1 also
    skips graphs where two triangles share an edge or a triangle meets two
    others; mode 2 skips graphs where two triangles share exactly one
    vertex or a triangle has two edges on other triangles.
    """
    pairs = list(itertools.combinations(range(n), 2))
    found = []
    for t in range(0, n + 1):
        if (4 * n - t) % 2 or (lemma_prune and 3 * t > 4 * (n - t)):
            continue
        tdeg = np.array([4] * (n - t) + [3] * t, np.int64)
        cap = 1 << 12
        while True:
            out = np.zeros((cap, len(pairs)), np.bool_)
            got = _gen.degree_graphs(tdeg, lemma_prune, out, cap, triangle_mode)
            if got <= cap:
                break
            cap = got
        for row in out[:got]:
            h = nx.Graph([pairs[q] for q in np.flatnonzero(row)])
            h.add_nodes_from(range(n))
            found.append(h)
    return [from_networkx(h) for h in _unique(found)]


def _rot_key(rot) -> tuple:
    out = []
    for c in rot:
        c = list(c)
        i = c.index(min(c)) if c else 0
        out.append(tuple(c[i:] + c[:i]))
    return tuple(out)


def _block(cyc: tuple, members: set) -> tuple[list, list] | None:
    """Split a cyclic order into (block, rest) if ``members`` are consecutive."""
    L = len(cyc)
    for s in range(L):
        if cyc[s] in members and cyc[s - 1] not in members:
            block = [cyc[(s + i) % L] for i in range(L) if cyc[(s + i) % L] in members]
            if all(cyc[(s + i) % L] in members for i in range(len(block))):
                return block, [cyc[(s + len(block) + i) % L] for i in range(L - len(block))]
            return None
    return None


def _pieces(g: Graph, cut: tuple[int, ...]) -> list[set[int]]:
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    h.remove_nodes_from(cut)
    return [set(c) for c in nx.connected_components(h)]


def all_embeddings(g: Graph) -> list[PlaneEmbedding]:
    """Every plane rotation system of a connected planar graph (mirror images included).

    Closure of one embedding under flips at separation pairs and cut
    vertices and under moving a block to another angle at a cut vertex;
    each candidate is kept only if it has the planar face count.
    """
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    e0 = embed_networkx(h)
    want = g.m - g.n + 2
    cuts = []
    for a in range(g.n):
        ps = _pieces(g, (a,))
        if len(ps) > 1:
            cuts.append(((a,), ps))
    for a, b in itertools.combinations(range(g.n), 2):
        ps = _pieces(g, (a, b))
        if len(ps) > 1:
            if g.has_edge(a, b):
                ps.append(set())
            cuts.append(((a, b), ps))

    def flipped(rot, cut, verts, edge_piece):
        new = list(rot)
        for v in verts:
            new[v] = tuple(reversed(rot[v]))
        for a in cut:
            members = {w for w in rot[a] if w in verts}
            if edge_piece:
                members |= {b for b in cut if b != a and b in rot[a]}
            sp = _block(rot[a], members)
            if sp is None:
                return None
            new[a] = tuple(reversed(sp[0])) + tuple(sp[1])
        return new

    def moved(rot, a, verts):
        sp = _block(rot[a], {w for w in rot[a] if w in verts})
        if sp is None:
            return []
        block, rest = sp
        out = []
        for i in range(1, len(rest)):
            new = list(rot)
            new[a] = tuple(rest[:i]) + tuple(block) + tuple(rest[i:])
            out.append(new)
        return out

    start = [e0.rotation, tuple(tuple(reversed(c)) for c in e0.rotation)]
    seen = {_rot_key(r): r for r in start}
    todo = list(start)
    while todo:
        rot = todo.pop()
        cands = []
        for cut, ps in cuts:
            for r in range(1, len(ps) + 1):
                for sub in itertools.combinations(range(len(ps)), r):
                    verts = set().union(*(ps[i] for i in sub))
                    edge_piece = any(not ps[i] for i in sub)
                    cands.append(flipped(rot, cut, verts, edge_piece))
                    if len(cut) == 1 and not edge_piece:
                        cands.extend(moved(rot, cut[0], verts))
        for c in cands:
            if c is None:
                continue
            k = _rot_key(c)
            if k in seen:
                continue
            e = PlaneEmbedding(g, c)
            if len(e.faces()) == want:
                seen[k] = c
                todo.append(c)
    return [PlaneEmbedding(g, seen[k]) for k in sorted(seen)]


def plane_degree_34_graphs(n: int, lemma_prune: bool = True, triangle_mode: int = 0) -> list[PlaneEmbedding]:
    """Planar members of ``degree_34_graphs``, every embedding of each."""
    out = []
    for g in degree_34_graphs(n, lemma_prune, triangle_mode):
        if nx.check_planarity(nx.Graph(g.edges()))[0]:
            out.extend(all_embeddings(g))
    return out
