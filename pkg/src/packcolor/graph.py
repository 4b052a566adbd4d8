"""Simple graphs, rotation-system embeddings and small exact invariants."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INFINITE = math.inf


class GraphError(ValueError):
    pass


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Instances are immutable; ``labels`` are display names used by reports
    and by the configuration builders.
    """

    __slots__ = ("n", "adj", "labels", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("negative vertex count")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GraphError("label count does not match n")
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_labeled_edges(cls, edges: Iterable[tuple[str, str]], extra: Iterable[str] = ()) -> "Graph":
        edges = list(edges)
        names = sorted({x for e in edges for x in e} | set(extra), key=_natural_key)
        idx = {x: i for i, x in enumerate(names)}
        return cls(len(names), [(idx[a], idx[b]) for a, b in edges], names)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, (int,)) or not 0 <= v < self.n:
            raise GraphError(f"unknown vertex id {v!r}")

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def square(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(dist2_ball(self, v)) for v in range(self.n))

    def subgraph_without(self, removed: Iterable[int]) -> "Graph":
        """Same vertex set with every edge at a removed vertex dropped."""
        gone = set(removed)
        return Graph(self.n, [(u, v) for u, v in self.edges() if u not in gone and v not in gone], self.labels)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges() + list(extra), self.labels)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs(self, 0)) == self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _natural_key(s: str):
    head = s.rstrip("0123456789")
    tail = s[len(head):]
    return (head, int(tail) if tail else -1, s)


def _bfs(g: Graph, src: int, limit: int | None = None) -> dict[int, int]:
    dist = {src: 0}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        if limit is not None and dist[u] == limit:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                todo.append(w)
    return dist


def dist2_ball(g: Graph, v: int) -> set[int]:
    """Vertices at distance 1 or 2 from ``v``; ``v`` itself is excluded."""
    g.check_vertex(v)
    out = set(g.adj[v])
    for u in g.adj[v]:
        out |= g.adj[u]
    out.discard(v)
    return out


def diameter(g: Graph) -> int | float:
    """Largest pairwise distance, or ``INFINITE`` when disconnected."""
    if g.n == 0:
        return 0
    best = 0
    for v in range(g.n):
        d = _bfs(g, v)
        if len(d) < g.n:
            return INFINITE
        best = max(best, max(d.values()))
    return best


def independence_number(g: Graph, cap: int = 24) -> int:
    """Exact maximum independent set size by branching on bitmasks."""
    if g.n > cap:
        raise GraphError(f"independence_number: n={g.n} exceeds cap {cap}")
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]

    def best(avail: int) -> int:
        if not avail:
            return 0
        # a vertex of degree <= 1 inside avail can always be taken
        for v in _bits(avail):
            if bin(nbr[v] & avail).count("1") <= 1:
                return 1 + best(avail & ~(nbr[v] | (1 << v)))
        v = max(_bits(avail), key=lambda x: bin(nbr[x] & avail).count("1"))
        with_v = 1 + best(avail & ~(nbr[v] | (1 << v)))
        without_v = best(avail & ~(1 << v))
        return max(with_v, without_v)

    return best((1 << g.n) - 1)


def max_2_independent(g: Graph, cap: int = 24) -> int:
    """Largest set of vertices pairwise at distance at least three."""
    if g.n > cap:
        raise GraphError(f"max_2_independent: n={g.n} exceeds cap {cap}")
    sq = g.square()
    return independence_number(Graph(g.n, [(u, v) for u in range(g.n) for v in sq[u] if u < v]), cap)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Face:
    walk: tuple[int, ...]
    darts: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.walk)

    def edges(self) -> list[frozenset[int]]:
        return [frozenset(d) for d in self.darts]


class PlaneEmbedding:
    """Rotation system: ``rotation[v]`` lists the neighbours of v in cyclic order."""

    def __init__(self, graph: Graph, rotation: Sequence[Sequence[int]]):
        if len(rotation) != graph.n:
            raise GraphError("rotation must list every vertex")
        for v, cyc in enumerate(rotation):
            if len(cyc) != len(set(cyc)):
                raise GraphError(f"malformed rotation at {v}: repeated neighbour")
            if set(cyc) != set(graph.adj[v]):
                missing = set(graph.adj[v]) - set(cyc)
                extra = set(cyc) - set(graph.adj[v])
                raise GraphError(f"malformed rotation at {v}: missing {sorted(missing)} extra {sorted(extra)}")
        self.graph = graph
        self.rotation = tuple(tuple(c) for c in rotation)
        self._pos = [{w: i for i, w in enumerate(c)} for c in self.rotation]
        self._faces: list[Face] | None = None

    def successor(self, v: int, w: int) -> int:
        cyc = self.rotation[v]
        return cyc[(self._pos[v][w] + 1) % len(cyc)]

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._faces = faces(self)
        return self._faces

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + len(self.faces())


def faces(e: PlaneEmbedding) -> list[Face]:
    """Trace faces: the dart after (u, v) is (v, succ_v(u))."""
    g = e.graph
    seen: set[tuple[int, int]] = set()
    out = []
    for u in range(g.n):
        for v in e.rotation[u]:
            if (u, v) in seen:
                continue
            walk, darts = [], []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                darts.append((a, b))
                a, b = b, e.successor(b, a)
            out.append(Face(tuple(walk), tuple(darts)))
    return out


def parse_edge_list(text: str) -> Graph:
    """``n m`` header then ``m`` lines ``u v`` (0-based)."""
    rows = [ln.split("#")[0].split() for ln in text.splitlines()]
    rows = [(i + 1, r) for i, r in enumerate(rows) if r]
    if not rows:
        raise GraphError("empty edge list")
    line, head = rows[0]
    if len(head) != 2:
        raise GraphError(f"line {line}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError(f"line {line}: non-integer header") from None
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for line, r in body:
        if len(r) != 2:
            raise GraphError(f"line {line}: expected 'u v'")
        try:
            edges.append((int(r[0]), int(r[1])))
        except ValueError:
            raise GraphError(f"line {line}: non-integer vertex") from None
    try:
        return Graph(n, edges)
    except GraphError as exc:
        raise GraphError(f"edge list: {exc}") from None


def format_edge_list(g: Graph) -> str:
    es = g.edges()
    return "\n".join([f"{g.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


def parse_rotation(text: str) -> PlaneEmbedding:
    """Lines ``v: a b c`` giving each vertex's cyclic neighbour order."""
    rot: dict[int, list[int]] = {}
    for i, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#")[0].strip()
        if not ln:
            continue
        if ":" not in ln:
            raise GraphError(f"line {i}: expected 'v: a b ...'")
        head, tail = ln.split(":", 1)
        try:
            v = int(head)
            rot[v] = [int(x) for x in tail.split()]
        except ValueError:
            raise GraphError(f"line {i}: non-integer token") from None
    n = max(rot) + 1 if rot else 0
    if sorted(rot) != list(range(n)):
        raise GraphError("rotation must cover vertices 0..n-1")
    edges = set()
    for v, cyc in rot.items():
        for w in cyc:
            if not 0 <= w < n:
                raise GraphError(f"vertex {v}: neighbour {w} out of range")
            edges.add((min(v, w), max(v, w)))
    g = Graph(n, sorted(edges))
    return PlaneEmbedding(g, [rot[v] for v in range(n)])


def format_rotation(e: PlaneEmbedding) -> str:
    return "".join(f"{v}: {' '.join(map(str, c))}\n" for v, c in enumerate(e.rotation))
