"""Search for the extremal 8-vertex example and certify its non-colorability."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .graph import Graph, PlaneEmbedding, diameter, independence_number
from .solver import PackingSpec, capacity_bound, solve

SHARP_SPECS = (PackingSpec(1, 5), PackingSpec(2, 3))


@dataclass
class SharpnessCertificate:
    graph: Graph
    embedding: PlaneEmbedding
    alpha: int
    diameter: int
    max_degree: int
    capacity: dict[str, int]
    search_unsat: dict[str, bool]
    nodes: dict[str, int]

    @property
    def ok(self) -> bool:
        n = self.graph.n
        return (n == 8 and self.alpha == 2 and self.diameter == 2 and self.max_degree <= 4
                and self.embedding.euler_characteristic() == 2
                and all(c < n for c in self.capacity.values()) and all(self.search_unsat.values()))

    def format(self) -> str:
        lines = [f"n {self.graph.n}", f"edges {' '.join(f'{u}-{v}' for u, v in self.graph.edges())}",
                 f"max-degree {self.max_degree}", f"alpha {self.alpha}", f"diameter {self.diameter}",
                 f"faces {' '.join(str(f.size) for f in self.embedding.faces())}"]
        for s in self.capacity:
            lines.append(f"spec ({s}) capacity {self.capacity[s]} < {self.graph.n}: "
                         f"{self.capacity[s] < self.graph.n}; search {'UNSAT' if self.search_unsat[s] else 'SAT'}"
                         f" ({self.nodes[s]} nodes)")
        lines.append(f"certified {self.ok}")
        return "\n".join(lines) + "\n"


def _candidates(n: int = 8, max_degree: int = 4):
    """Graphs on n vertices with every triple spanning an edge and degrees <= max_degree.

    Pairs are decided in lexicographic order; a triple is checked as soon
    as its last pair is decided.
    """
    pairs = list(itertools.combinations(range(n), 2))
    closing: list[list[tuple[int, int, int]]] = [[] for _ in pairs]
    pos = {p: i for i, p in enumerate(pairs)}
    for t in itertools.combinations(range(n), 3):
        last = max(pos[(t[0], t[1])], pos[(t[0], t[2])], pos[(t[1], t[2])])
        closing[last].append(t)
    edge = [[False] * n for _ in range(n)]
    deg = [0] * n

    def rec(i: int):
        if i == len(pairs):
            yield [p for p in pairs if edge[p[0]][p[1]]]
            return
        u, v = pairs[i]
        for take in (True, False):
            if take and (deg[u] >= max_degree or deg[v] >= max_degree):
                continue
            edge[u][v] = edge[v][u] = take
            if take:
                deg[u] += 1
                deg[v] += 1
            if all(edge[a][b] or edge[a][c] or edge[b][c] for a, b, c in closing[i]):
                yield from rec(i + 1)
            if take:
                deg[u] -= 1
                deg[v] -= 1
            edge[u][v] = edge[v][u] = False

    yield from rec(0)


def sharpness_search(n: int = 8) -> SharpnessCertificate:
    """First graph (in search order) that is planar, alpha 2, diameter 2, max degree <= 4."""
    for edges in _candidates(n):
        g = Graph(n, edges)
        if diameter(g) != 2 or independence_number(g) != 2:
            continue
        h = nx.Graph(edges)
        ok, emb = nx.check_planarity(h)
        if not ok:
            continue
        rot = [list(emb.neighbors_cw_order(v)) for v in range(n)]
        return certify(g, PlaneEmbedding(g, rot))
    raise RuntimeError("no 8-vertex planar graph with alpha 2, diameter 2 and max degree 4 found")


def certify(g: Graph, e: PlaneEmbedding) -> SharpnessCertificate:
    cap, unsat, nodes = {}, {}, {}
    for s in SHARP_SPECS:
        cap[str(s)] = capacity_bound(g, s)
        r = solve(g, s)
        unsat[str(s)] = not r.sat
        nodes[str(s)] = r.nodes
    return SharpnessCertificate(g, e, independence_number(g), diameter(g), g.max_degree(), cap, unsat, nodes)
