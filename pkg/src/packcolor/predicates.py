"""Structural properties of a minimal counterexample, as checkable predicates.

Each predicate returns a PredicateResult; a violation carries a witness
(plain vertex tuples and face indices into ``embedding.faces()``) that
tests re-check directly against the graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .graph import Graph, GraphError, PlaneEmbedding


@dataclass(frozen=True)
class PredicateResult:
    key: str
    statement: str
    holds: bool
    witness: dict = field(default_factory=dict)


class _Ctx:
    """Cached derived structure shared by all predicates of one run."""

    def __init__(self, g: Graph, e: PlaneEmbedding | None):
        self.g, self.e = g, e
        self.deg = [g.degree(v) for v in range(g.n)]
        self.triangles = [t for t in itertools.combinations(range(g.n), 3)
                          if g.has_edge(t[0], t[1]) and g.has_edge(t[1], t[2]) and g.has_edge(t[0], t[2])]
        if e is not None:
            self.faces = e.faces()
            self.face_of = {}
            for i, f in enumerate(self.faces):
                for d in f.darts:
                    self.face_of[d] = i

    def need_faces(self, key: str) -> None:
        if self.e is None:
            raise GraphError(f"predicate {key!r} needs a plane embedding")

    def size(self, i: int) -> int:
        return self.faces[i].size

    def across(self, i: int) -> list[tuple[tuple[int, int], int]]:
        """(edge, face on the other side) for every boundary edge of face i."""
        return [((a, b), self.face_of[(b, a)]) for a, b in self.faces[i].darts]

    def three_vertices(self, i: int) -> list[int]:
        return sorted({v for v in self.faces[i].walk if self.deg[v] == 3})

    def tri_neighbors(self, i: int) -> list[int]:
        """Adjacent 3-faces, once per shared edge."""
        return [j for _, j in self.across(i) if j != i and self.size(j) == 3]


def _edges_of(t) -> list[frozenset[int]]:
    return [frozenset(p) for p in itertools.combinations(t, 2)]


def p_min_degree(c: _Ctx) -> dict | None:
    for v in range(c.g.n):
        if c.deg[v] < 3:
            return {"vertex": v, "degree": c.deg[v]}
    return None


def p_no_adjacent_3_vertices(c: _Ctx) -> dict | None:
    for u, v in c.g.edges():
        if c.deg[u] == 3 and c.deg[v] == 3:
            return {"edge": (u, v)}
    return None


def p_triangle_vertices_degree_4(c: _Ctx) -> dict | None:
    for t in c.triangles:
        for v in t:
            if c.deg[v] != 4:
                return {"triangle": t, "vertex": v}
    return None


def p_triangles_share_no_edge(c: _Ctx) -> dict | None:
    for s, t in itertools.combinations(c.triangles, 2):
        if len(set(s) & set(t)) == 2:
            return {"triangles": (s, t)}
    return None


def p_triangle_meets_one_triangle(c: _Ctx) -> dict | None:
    for t in c.triangles:
        meet = [s for s in c.triangles if s != t and set(s) & set(t)]
        if len(meet) >= 2:
            return {"triangle": t, "others": tuple(meet[:2])}
    return None


def p_triangle_edge_shared_once(c: _Ctx) -> dict | None:
    for t in c.triangles:
        shared = []
        for e in _edges_of(t):
            other = [s for s in c.triangles if s != t and e <= set(s)]
            if other:
                shared.append((tuple(sorted(e)), other[0]))
        if len(shared) >= 2:
            return {"triangle": t, "shared": tuple(shared[:2])}
    return None


def p_no_bowtie(c: _Ctx) -> dict | None:
    for s, t in itertools.combinations(c.triangles, 2):
        if len(set(s) & set(t)) == 1:
            return {"triangles": (s, t)}
    return None


def p_3_vertex_one_4_face(c: _Ctx) -> dict | None:
    c.need_faces("3-vertex-in-one-4-face")
    for v in range(c.g.n):
        if c.deg[v] != 3:
            continue
        quads = [i for i, f in enumerate(c.faces) if f.size == 4 and v in f.walk]
        if len(quads) >= 2:
            return {"vertex": v, "faces": tuple(quads[:2])}
    return None


def p_3_face_one_4_face_edge(c: _Ctx) -> dict | None:
    c.need_faces("3-face-meets-4-faces-once")
    for i, f in enumerate(c.faces):
        if f.size != 3:
            continue
        hits = [(e, j) for e, j in c.across(i) if c.size(j) == 4]
        if len(hits) >= 2:
            return {"face": i, "edges": tuple(e for e, _ in hits[:2]), "faces": tuple(j for _, j in hits[:2])}
    return None


def p_adjacent_3_faces_no_4_face(c: _Ctx) -> dict | None:
    c.need_faces("3-face-pair-avoids-4-faces")
    for i, f in enumerate(c.faces):
        if f.size != 3:
            continue
        tri = [j for _, j in c.across(i) if j != i and c.size(j) == 3]
        quad = [j for _, j in c.across(i) if c.size(j) == 4]
        if tri and quad:
            return {"face": i, "triangle_face": tri[0], "quad_face": quad[0]}
    return None


def p_5_face_two_3_faces(c: _Ctx) -> dict | None:
    c.need_faces("5-face-at-most-two-3-faces")
    for i, f in enumerate(c.faces):
        if f.size == 5:
            tri = c.tri_neighbors(i)
            if len(tri) >= 3:
                return {"face": i, "triangle_faces": tuple(tri)}
    return None


def _5_face_pairs(c: _Ctx, share: bool, key: str) -> dict | None:
    c.need_faces(key)
    for i, f in enumerate(c.faces):
        if f.size != 5:
            continue
        threes = c.three_vertices(i)
        if not threes:
            continue
        tri = sorted(set(c.tri_neighbors(i)))
        for a, b in itertools.combinations(tri, 2):
            common = set(c.faces[a].walk) & set(c.faces[b].walk)
            if bool(common) == share:
                return {"face": i, "vertex": threes[0], "triangle_faces": (a, b)}
    return None


def p_5_face_3_vertex_touching(c: _Ctx) -> dict | None:
    return _5_face_pairs(c, True, "5-face-3-vertex-touching-3-faces")


def p_5_face_3_vertex_disjoint(c: _Ctx) -> dict | None:
    return _5_face_pairs(c, False, "5-face-3-vertex-disjoint-3-faces")


def p_5_face_two_3_vertices(c: _Ctx) -> dict | None:
    c.need_faces("5-face-two-3-vertices")
    for i, f in enumerate(c.faces):
        if f.size != 5:
            continue
        threes = c.three_vertices(i)
        tri = c.tri_neighbors(i)
        if len(threes) >= 2 and tri:
            return {"face": i, "vertices": tuple(threes[:2]), "triangle_face": tri[0]}
    return None


Predicate = tuple[str, str, bool, Callable[[_Ctx], "dict | None"]]

# (key, statement, needs embedding, check)
PREDICATES: dict[str, Predicate] = {p[0]: p for p in [
    ("min-degree", "minimum degree is at least 3", False, p_min_degree),
    ("no-adjacent-3-vertices", "no two 3-vertices are adjacent", False, p_no_adjacent_3_vertices),
    ("triangle-vertices-degree-4", "every vertex of a 3-cycle is a 4-vertex", False, p_triangle_vertices_degree_4),
    ("triangles-share-no-edge", "no two 3-cycles share an edge", False, p_triangles_share_no_edge),
    ("triangle-meets-one-triangle", "a 3-cycle shares vertices with at most one other 3-cycle", False,
     p_triangle_meets_one_triangle),
    ("triangle-edge-shared-once", "a 3-cycle shares edges with other 3-cycles along at most one edge", False,
     p_triangle_edge_shared_once),
    ("no-bowtie", "two 3-cycles never share a vertex without sharing an edge", False, p_no_bowtie),
    ("3-vertex-in-one-4-face", "a 3-vertex lies on at most one 4-face", True, p_3_vertex_one_4_face),
    ("3-face-meets-4-faces-once", "a 3-face shares at most one edge with 4-faces", True, p_3_face_one_4_face_edge),
    ("3-face-pair-avoids-4-faces", "a 3-face sharing an edge with a 3-face shares no edge with a 4-face", True,
     p_adjacent_3_faces_no_4_face),
    ("5-face-at-most-two-3-faces", "a 5-face is adjacent to at most two 3-faces", True, p_5_face_two_3_faces),
    ("5-face-3-vertex-touching-3-faces", "a 5-face with a 3-vertex is not adjacent to two 3-faces sharing a vertex",
     True, p_5_face_3_vertex_touching),
    ("5-face-3-vertex-disjoint-3-faces", "a 5-face with a 3-vertex is not adjacent to two vertex-disjoint 3-faces",
     True, p_5_face_3_vertex_disjoint),
    ("5-face-two-3-vertices", "a 5-face with two 3-vertices is adjacent to no 3-face", True, p_5_face_two_3_vertices),
]}

THEOREM_PREDICATES: dict[int, tuple[str, ...]] = {
    # packing (1, 2^10)
    1: ("min-degree", "no-adjacent-3-vertices", "triangle-vertices-degree-4", "triangles-share-no-edge",
        "triangle-meets-one-triangle", "3-vertex-in-one-4-face", "3-face-meets-4-faces-once",
        "5-face-at-most-two-3-faces", "5-face-3-vertex-touching-3-faces", "5-face-3-vertex-disjoint-3-faces",
        "5-face-two-3-vertices"),
    # packing (1^2, 2^7)
    2: ("min-degree", "no-adjacent-3-vertices", "triangle-vertices-degree-4", "3-vertex-in-one-4-face",
        "triangle-edge-shared-once", "3-face-pair-avoids-4-faces", "no-bowtie", "3-face-meets-4-faces-once",
        "5-face-3-vertex-disjoint-3-faces", "5-face-two-3-vertices"),
}


def structural_predicates(g: Graph, e: PlaneEmbedding | None = None, theorem: int | None = None,
                          keys: tuple[str, ...] | None = None) -> list[PredicateResult]:
    if e is not None and e.graph != g:
        raise GraphError("embedding belongs to a different graph")
    if keys is None and theorem is not None:
        keys = THEOREM_PREDICATES[theorem]
    elif keys is None:
        # nothing requested: run whatever the input supports
        keys = tuple(k for k, p in PREDICATES.items() if e is not None or not p[2])
    ctx = _Ctx(g, e)
    out = []
    for key in keys:
        try:
            _, statement, faced, fn = PREDICATES[key]
        except KeyError:
            raise GraphError(f"unknown predicate {key!r}") from None
        if faced:
            ctx.need_faces(key)
        w = fn(ctx)
        out.append(PredicateResult(key, statement, w is None, w or {}))
    return out


def first_violation(results: list[PredicateResult]) -> PredicateResult | None:
    return next((r for r in results if not r.holds), None)
