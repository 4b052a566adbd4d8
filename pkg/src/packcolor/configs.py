"""Reducible-configuration checking by exhaustive boundary enumeration.

A configuration is a fragment G around a deleted set S, the reduced graph
G' = (G - S) + added edges, and a partition of the boundary B (vertices
within distance two of S) into claws.  Each claw takes a catalog entry;
a product that is conflict-free in G' is *bad* if it has no extension to
S in G (undetermined centers resolved to some 1-color).
"""
from __future__ import annotations

import itertools
import logging
import multiprocessing as mp
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _engine
from .claws import BIG, SMALL, ClawColoring, catalog
from .graph import Graph, GraphError, dist2_ball
from .solver import UNCOLORED, UNDETERMINED, PackingSpec, check_coloring, extend

log = logging.getLogger(__name__)

DEFAULT_SPEC = PackingSpec(2, 7)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Claw:
    center: int
    leaves: tuple[int, ...]

    @property
    def kind(self) -> str:
        return SMALL if len(self.leaves) == 2 else BIG

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center,) + self.leaves


@dataclass
class Configuration:
    name: str
    g: Graph
    g_prime: Graph
    deleted: tuple[int, ...]
    claws: tuple[Claw, ...]
    added_edges: tuple[tuple[int, int], ...] = ()
    aliases: tuple[str, ...] = ()
    boundary: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        self.boundary = tuple(v for c in self.claws for v in c.vertices)
        self.validate()

    def validate(self) -> None:
        g, gp, S = self.g, self.g_prime, set(self.deleted)
        if gp.n != g.n:
            raise ConfigError(f"{self.name}: G and G' have different vertex sets")
        for c in self.claws:
            if len(c.leaves) not in (2, 3):
                raise ConfigError(f"{self.name}: claw at {g.labels[c.center]} has {len(c.leaves)} leaves")
            for leaf in c.leaves:
                if not gp.has_edge(c.center, leaf):
                    raise ConfigError(f"{self.name}: claw edge {g.labels[c.center]}-{g.labels[leaf]} missing from G'")
        if len(set(self.boundary)) != len(self.boundary):
            raise ConfigError(f"{self.name}: claws overlap")
        if S & set(self.boundary):
            raise ConfigError(f"{self.name}: a claw uses a deleted vertex")
        near = set()
        for s in S:
            near |= dist2_ball(g, s)
        near -= S
        if near != set(self.boundary):
            odd = sorted(g.labels[v] for v in near ^ set(self.boundary))
            raise ConfigError(f"{self.name}: claws do not cover exactly the boundary (mismatch at {odd})")
        if set(range(g.n)) != S | near:
            raise ConfigError(f"{self.name}: fragment has vertices outside S and its boundary")
        for s in S:
            if gp.adj[s]:
                raise ConfigError(f"{self.name}: deleted vertex {g.labels[s]} still has edges in G'")
        # a boundary coloring that is proper in G' must be proper in G
        sq, sqp = g.square(), gp.square()
        for u in self.boundary:
            for w in sq[u]:
                if w in S:
                    continue
                if w not in sqp[u]:
                    raise ConfigError(f"{self.name}: {g.labels[u]},{g.labels[w]} within distance 2 in G but not in G'")
                if g.has_edge(u, w) and not gp.has_edge(u, w):
                    raise ConfigError(f"{self.name}: edge {g.labels[u]}-{g.labels[w]} missing from G'")

    def label(self, v: int) -> str:
        return self.g.labels[v]

    def describe(self) -> str:
        L = self.g.labels
        claws = ", ".join(f"{L[c.center]}({' '.join(L[x] for x in c.leaves)})" for c in self.claws)
        return (f"{self.name}: |S|={len(self.deleted)} |B|={len(self.boundary)} "
                f"added={' '.join(f'{L[a]}{L[b]}' for a, b in self.added_edges)} claws={claws}")


def build_configuration(name: str, g_edges: str, deleted: Sequence[str], added: str,
                        claws: Sequence[tuple[str, Sequence[str]]], aliases: Sequence[str] = ()) -> Configuration:
    """Build from ``a-b`` edge strings over vertex labels."""
    pairs = [tuple(tok.split("-")) for tok in g_edges.split()]
    g = Graph.from_labeled_edges(pairs)
    add = [(g.index(a), g.index(b)) for a, b in (tuple(t.split("-")) for t in added.split())]
    for a, b in add:
        if g.has_edge(a, b):
            raise ConfigError(f"{name}: added edge {g.labels[a]}-{g.labels[b]} already in G")
    S = tuple(g.index(x) for x in deleted)
    gp = g.subgraph_without(S).with_edges(add)
    cl = tuple(Claw(g.index(c), tuple(g.index(x) for x in ls)) for c, ls in claws)
    return Configuration(name, g, gp, S, cl, tuple(add), tuple(aliases))


def _big_leaves(c: str, i: int) -> str:
    return f" {c}-x{i} {c}-y{i} {c}-z{i}"


def _three_face_two_quads() -> Configuration:
    edges = ("u1-u2 u1-u3 u2-u3 u2-u4 u4-u5 u5-u1 u1-u7 u3-u6 u6-u7 u2-v2 u3-v3 "
             "u4-v4 u4-w4 u5-v5 u5-w5 u6-v6 u6-w6 u7-v7 u7-w7")
    edges += _big_leaves("v2", 2) + _big_leaves("v3", 3)
    return build_configuration(
        "3-face-meets-two-4-cycles", edges, ["u1", "u2", "u3"], "v2-u4 v3-u6 u5-u7",
        [("v2", ["x2", "y2", "z2"]), ("v3", ["x3", "y3", "z3"]), ("u4", ["v4", "w4"]),
         ("u5", ["v5", "w5"]), ("u6", ["v6", "w6"]), ("u7", ["v7", "w7"])],
        aliases=("lemma-3.8",))


def _pentagon_disjoint_triangles() -> Configuration:
    edges = ("u1-u2 u1-u5 u1-v1 u2-u3 u2-u6 u2-v2 u3-u4 u3-u6 u3-v3 u4-u5 u4-u7 u4-v4 "
             "u5-u7 u5-v5 u6-v6 u6-w6 u7-v7 u7-w7")
    edges += "".join(_big_leaves(f"v{i}", i) for i in range(1, 6))
    return build_configuration(
        "5-face-3-vertex-disjoint-3-faces", edges, ["u1", "u2", "u3", "u4", "u5"], "u6-v2 u6-v3 u7-v4 u7-v5",
        [("u6", ["v6", "w6"]), ("v2", ["x2", "y2", "z2"]), ("v3", ["x3", "y3", "z3"]),
         ("u7", ["v7", "w7"]), ("v4", ["x4", "y4", "z4"]), ("v5", ["x5", "y5", "z5"]),
         ("v1", ["x1", "y1", "z1"])],
        aliases=("lemma-3.9",))


def _pentagon_two_3_vertices() -> Configuration:
    edges = ("u1-u2 u1-u5 u1-v1 u1-w1 u2-u3 u2-v2 u3-u4 u3-u6 u3-v3 u4-u5 u4-u6 u4-v4 "
             "u5-v5 u6-v6 u6-w6")
    edges += "".join(_big_leaves(f"v{i}", i) for i in range(2, 6))
    return build_configuration(
        "5-face-two-3-vertices-3-face", edges, ["u2", "u3", "u4", "u5"], "u1-v2 u1-v5 u6-v3 u6-v4",
        [("u1", ["v1", "w1"]), ("v2", ["x2", "y2", "z2"]), ("v5", ["x5", "y5", "z5"]),
         ("u6", ["v6", "w6"]), ("v3", ["x3", "y3", "z3"]), ("v4", ["x4", "y4", "z4"])],
        aliases=("lemma-3.10",))


_BUILDERS = (_three_face_two_quads, _pentagon_disjoint_triangles, _pentagon_two_3_vertices)


def builtin_configs() -> dict[str, Configuration]:
    return {c.name: c for c in (b() for b in _BUILDERS)}


def get_config(name: str) -> Configuration:
    for c in builtin_configs().values():
        if name == c.name or name in c.aliases:
            return c
    raise ConfigError(f"unknown configuration {name!r}")


# ---------------------------------------------------------------- enumeration

def _claw_entries(claw: Claw, spec: PackingSpec) -> tuple[ClawColoring, ...]:
    return catalog(claw.kind, spec)


def _consistent(gp_adj, gp_sq, spec: PackingSpec, col: Sequence[int], verts: Iterable[int]) -> bool:
    for v in verts:
        c = col[v]
        if spec.is_one(c):
            if any(col[w] == c for w in gp_adj[v]):
                return False
        elif spec.is_two(c):
            if any(col[w] == c for w in gp_sq[v]):
                return False
    return True


def enumerate_boundary_colorings(cfg: Configuration, spec: PackingSpec = DEFAULT_SPEC,
                                 first_occurrence: bool = True) -> Iterator[tuple[int, ...]]:
    """Catalog products that are conflict-free in G', in claw order.

    With ``first_occurrence`` only products whose 2-colors first appear in
    increasing order (along the boundary order) are produced; every
    2-color relabeling class keeps exactly one member.
    """
    gp = cfg.g_prime
    sq = gp.square()
    cats = [_claw_entries(c, spec) for c in cfg.claws]
    col = [UNCOLORED] * cfg.g.n

    def rec(i: int, fresh: int):
        if i == len(cfg.claws):
            yield tuple(col)
            return
        claw = cfg.claws[i]
        for e in cats[i]:
            nxt = fresh
            if first_occurrence:
                ok = True
                for x in e.colors():
                    if spec.is_two(x):
                        if x == spec.j + 1 + nxt:
                            nxt += 1
                        elif x > spec.j + 1 + nxt:
                            ok = False
                            break
                if not ok:
                    continue
            for v, x in zip(claw.vertices, e.colors()):
                col[v] = x
            if _consistent(gp.adj, sq, spec, col, claw.vertices):
                yield from rec(i + 1, nxt)
            for v in claw.vertices:
                col[v] = UNCOLORED

    yield from rec(0, 0)


def _entry_for(claw: Claw, col: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return col[claw.center], tuple(sorted(col[x] for x in claw.leaves))


def extension_check(cfg: Configuration, col: Sequence[int], spec: PackingSpec = DEFAULT_SPEC,
                    order: Sequence[int] | None = None):
    """Extend a boundary coloring to S inside G; returns the solver result."""
    return extend(cfg.g, spec, col, order=order)


# ---------------------------------------------------------------- canonical form

def canonical_form(cfg: Configuration, col: Sequence[int], spec: PackingSpec = DEFAULT_SPEC,
                   catalog_normal: bool = True) -> tuple[int, ...]:
    """Lexicographically least image under 2-color relabeling and 1_a/1_b swap.

    The image is read claw by claw as (center, sorted leaves); leaves of a
    claw are twins, so sorting them is part of the normal form.  With
    ``catalog_normal`` a 1-colored leaf under a 2-colored center keeps 1_a
    after the swap, as in the catalogs; without it the swap acts on the
    concrete colors.
    """
    claws = [_entry_for(c, col) for c in cfg.claws]
    best: list[tuple[int, ...] | None] = [None]
    j = spec.j
    swaps = [dict()] if j < 2 else [dict(), {1: 2, 2: 1}]
    for sw in swaps:
        # a 1-colored leaf under a 2-colored center is stored as 1_a either way
        start = [(sw.get(c, c), tuple(1 if catalog_normal and c > j and spec.is_one(x) else sw.get(x, x) for x in ls))
                 for c, ls in claws]
        _relabel(start, 0, {}, j, (), best)
    return best[0]


def _relabel(claws, i, mapping, j, prefix, best):
    if best[0] is not None and prefix > best[0][:len(prefix)]:
        return
    if i == len(claws):
        if best[0] is None or prefix < best[0]:
            best[0] = prefix
        return
    center, leaves = claws[i]
    m = dict(mapping)
    nxt = j + 1 + len(m)
    if center > j and center not in m:
        m[center] = nxt
        nxt += 1
    new_c = m.get(center, center)
    fresh = sorted({x for x in leaves if x > j and x not in m})
    for perm in itertools.permutations(fresh) if fresh else [()]:
        mm = dict(m)
        for t, x in enumerate(perm):
            mm[x] = nxt + t
        img = (new_c,) + tuple(sorted(mm.get(x, x) for x in leaves))
        _relabel(claws, i + 1, mm, j, prefix + img, best)


def _canonical_coloring(cfg: Configuration, form: tuple[int, ...]) -> tuple[int, ...]:
    col = [UNCOLORED] * cfg.g.n
    pos = 0
    for c in cfg.claws:
        for v in c.vertices:
            col[v] = form[pos]
            pos += 1
    return tuple(col)


# ---------------------------------------------------------------- compiled driver

def _pad(rows: Sequence[Iterable[int]], width: int | None = None, keep_order: bool = False) -> np.ndarray:
    rows = [list(r) if keep_order else sorted(r) for r in rows]
    w = width or max(1, max((len(r) for r in rows), default=1))
    a = -np.ones((len(rows), w), np.int64)
    for i, r in enumerate(rows):
        a[i, :len(r)] = r
    return a


def claw_order(cfg: Configuration) -> list[int]:
    """Enumeration order: the claw least tied to the others goes last, then
    a greedy order that keeps each new claw close to the ones placed."""
    sqp = cfg.g_prime.square()
    K = len(cfg.claws)
    links = [[sum(1 for a in cfg.claws[x].vertices for b in cfg.claws[y].vertices if b in sqp[a]) if x != y else 0
              for y in range(K)] for x in range(K)]
    last = min(range(K), key=lambda x: (sum(links[x]), -len(cfg.claws[x].leaves), -x))
    rest = [x for x in range(K) if x != last]
    order = [max(rest, key=lambda x: (len(cfg.claws[x].leaves), sum(links[x]), -x))]
    while len(order) < K - 1:
        cand = [x for x in rest if x not in order]
        order.append(max(cand, key=lambda x: (sum(links[x][y] for y in order), len(cfg.claws[x].leaves), -x)))
    return order + [last]


@dataclass
class _Prepared:
    nclaw: int
    cverts: np.ndarray
    cnv: np.ndarray
    cats: np.ndarray
    catlen: np.ndarray
    adjp: np.ndarray
    sqp: np.ndarray
    S: np.ndarray
    adjg: np.ndarray
    sqg: np.ndarray
    ladj: np.ndarray
    j: int
    ncol: int
    pair_tables: tuple = ()


def _relabeled(entries, perm: dict[int, int] | None):
    if not perm:
        return entries
    out = [ClawColoring(e.kind, perm.get(e.center, e.center), tuple(sorted(perm.get(x, x) for x in e.leaves)), e.type_tag)
           for e in entries]
    return sorted(out)


def _prepare(cfg: Configuration, spec: PackingSpec, order: Sequence[int],
             color_perm: dict[int, int] | None = None) -> _Prepared:
    claws = [cfg.claws[i] for i in order]
    cats = [_relabeled(_claw_entries(c, spec), color_perm) for c in claws]
    maxcat = max(len(c) for c in cats)
    A = np.zeros((len(claws), maxcat, 4), np.int64)
    for i, cat in enumerate(cats):
        for t, e in enumerate(cat):
            A[i, t, :len(e.colors())] = e.colors()
    last = claws[-1]
    ladj = np.zeros((4, 4), np.bool_)
    for a, x in enumerate(last.vertices):
        for b, y in enumerate(last.vertices):
            ladj[a, b] = cfg.g.has_edge(x, y)
    gp, g = cfg.g_prime, cfg.g
    pair_tables = _pair_tables(cfg, spec, claws[-2:], A[-2:], [len(c) for c in cats[-2:]]) \
        if len(claws) >= 2 else _pair_tables(cfg, spec, claws[-1:] * 2, A[-1:].repeat(2, 0), [len(cats[-1])] * 2)
    return _Prepared(
        nclaw=len(claws),
        cverts=_pad([c.vertices for c in claws], 4, keep_order=True),
        cnv=np.array([len(c.vertices) for c in claws], np.int64),
        cats=A,
        catlen=np.array([len(c) for c in cats], np.int64),
        adjp=_pad(gp.adj), sqp=_pad(gp.square()),
        S=np.array(cfg.deleted, np.int64),
        adjg=_pad(g.adj), sqg=_pad(g.square()),
        ladj=ladj, j=spec.j, ncol=spec.ncolors, pair_tables=pair_tables,
    )


def _bits(flags) -> np.ndarray:
    flags = list(flags)
    a = np.zeros(max(1, (len(flags) + 63) // 64), np.uint64)
    for q, f in enumerate(flags):
        if f:
            a[q >> 6] |= np.uint64(1) << np.uint64(q & 63)
    return a


def _fo_new(e: Sequence[int], j: int, f: int) -> int:
    """New 2-colors introduced by ``e`` after ``f`` are in use, or -1 if out of order."""
    mm = f
    for x in e:
        if x > j:
            if x == j + 1 + mm:
                mm += 1
            elif x > j + 1 + mm:
                return -1
    return mm - f


def _pair_tables(cfg: Configuration, spec: PackingSpec, claws, A, lens):
    """Static bitset tables for the last two claws of the enumeration order."""
    gp, g = cfg.g_prime, cfg.g
    sqp = gp.square()
    j, ncol, k = spec.j, spec.ncolors, spec.k

    def clash(v, x, w, y):
        if x <= 0 or y <= 0 or x != y:
            return False
        return w in gp.adj[v] if x <= j else w in sqp[v]

    out = []
    ents = []
    for c, cat, ne in zip(claws, A, lens):
        vs = list(c.vertices)
        es = [tuple(int(x) for x in cat[q, :len(vs)]) for q in range(ne)]
        ents.append((vs, es))
        W = max(1, (ne + 63) // 64)
        E = np.zeros((4, ncol + 2, W), np.uint64)
        M = np.zeros((4, 1 << (j + 1), W), np.uint64)
        for t in range(len(vs)):
            for x in range(-1, ncol + 1):
                if x != 0:
                    E[t, x + 1] = _bits(e[t] == x for e in es)
            for u in range(1 << (j + 1)):
                M[t, u] = _bits(e[t] == -1 and sum(1 << e[s] for s in range(len(vs))
                                                  if g.has_edge(vs[t], vs[s]) and 1 <= e[s] <= j) == u for e in es)
        self_ok = _bits(not any(clash(vs[t], e[t], vs[s], e[s]) for t in range(len(vs)) for s in range(t + 1, len(vs)))
                        for e in es)
        cplx = _bits(any(e[t] == -1 and e[s] == -1 and g.has_edge(vs[t], vs[s])
                         for t in range(len(vs)) for s in range(len(vs))) for e in es)
        fo = np.stack([_bits(_fo_new(e, j, f) >= 0 for e in es) for f in range(k + 1)])
        new = np.array([[max(0, _fo_new(e, j, f)) for e in es] for f in range(k + 1)], np.int64)
        out.append((E, M, self_ok, cplx, fo, new))
    (vs1, es1), (vs2, es2) = ents
    pair = np.stack([_bits(not any(clash(a, x, b, y) for a, x in zip(vs1, e1) for b, y in zip(vs2, e2))
                           for e2 in es2) for e1 in es1])
    xm = np.stack([_bits(any((x == -1 or y == -1) and g.has_edge(a, b) for a, x in zip(vs1, e1) for b, y in zip(vs2, e2))
                         for e2 in es2) for e1 in es1])
    (E1, M1, s1, c1, fo1, new1), (E2, M2, s2, c2, fo2, _) = out
    return (E1, M1, E2, M2, s1, s2, c1, c2, fo1, fo2, new1, pair, xm)


def _run_chunk(args):
    p, lo, hi, cap, use_pool = args
    bad = np.zeros((cap, p.adjg.shape[0]), np.int64)
    ncons, nbad, nfull = _engine.enumerate_claws(
        p.nclaw, p.cverts, p.cnv, p.cats, p.catlen, lo, hi, p.j, p.ncol,
        p.adjp, p.sqp, p.S, p.adjg, p.sqg, p.ladj, bad, use_pool, *p.pair_tables)
    return int(ncons), int(nbad), int(nfull), bad[:min(nbad, cap)].copy()


@dataclass
class VerificationReport:
    name: str
    spec: PackingSpec
    boundary_size: int
    catalog_sizes: dict[str, int]
    consistent: int
    raw_bad: int
    bad: list[tuple[int, ...]]
    concrete_orbits: int = 0
    full_checks: int = 0
    seconds: float = 0.0
    labels: tuple[str, ...] = ()
    boundary_labels: tuple[str, ...] = ()

    @property
    def bad_count(self) -> int:
        return len(self.bad)

    def matches(self, expected: int | None) -> bool:
        return expected is None or expected == self.bad_count

    def format(self, expected: int | None = None) -> str:
        sizes = " ".join(f"{k}={v}" for k, v in sorted(self.catalog_sizes.items()))
        lines = [
            f"# configuration {self.name}",
            f"# spec {self.spec}",
            f"# boundary {self.boundary_size}: {' '.join(self.boundary_labels)}",
            f"# catalog {sizes}",
            f"# consistent (first-occurrence representatives) {self.consistent}",
            f"# bad (representatives) {self.raw_bad}",
            f"# bad (concrete-color orbits) {self.concrete_orbits}",
            f"# bad (canonical orbits) {self.bad_count}",
        ]
        if expected is not None and expected != self.bad_count:
            lines.append(f"# DISCREPANCY expected {expected} canonical bad cases, found {self.bad_count}")
        lines += [" ".join(map(str, b)) for b in self.bad]
        return "\n".join(lines) + "\n"


def verify(cfg: Configuration, spec: PackingSpec = DEFAULT_SPEC, workers: int | None = None,
           use_pool: bool = True, recheck: bool = True, bad_cap: int = 200_000,
           color_perm: dict[int, int] | None = None) -> VerificationReport:
    """Enumerate every consistent boundary coloring and collect the bad ones.

    Bad cases found by the compiled search are re-derived with the pure
    Python solver under a different static vertex order before they are
    reported, and reported in canonical form.  ``color_perm`` relabels the
    2-colors of every catalog entry (and so reorders the catalogs) before
    enumeration; the canonical bad set must not depend on it.
    """
    t0 = time.time()
    order = claw_order(cfg)
    if color_perm and sorted(color_perm) != sorted(color_perm.values()):
        raise ValueError("color_perm must be a permutation")
    if color_perm and any(not spec.is_two(c) for c in color_perm):
        raise ValueError("color_perm may only move 2-colors")
    p = _prepare(cfg, spec, order, color_perm)
    n0 = int(p.catlen[0])
    workers = workers or max(1, min(mp.cpu_count(), 16))
    bounds = np.linspace(0, n0, min(n0, workers * 4) + 1).astype(int)
    tasks = [(p, int(a), int(b), bad_cap, use_pool) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    if workers == 1 or len(tasks) == 1:
        results = [_run_chunk(t) for t in tasks]
    else:
        _run_chunk((p, 0, 0, 1, use_pool))  # compile once before forking
        with mp.get_context("fork").Pool(workers) as pool:
            results = pool.map(_run_chunk, tasks)
    ncons = sum(r[0] for r in results)
    nbad = sum(r[1] for r in results)
    nfull = sum(r[2] for r in results)
    if nbad > bad_cap * len(tasks) or any(r[1] > bad_cap for r in results):
        raise RuntimeError(f"{cfg.name}: bad-case buffer overflow ({nbad})")
    rows = [tuple(int(x) for x in row) for r in results for row in r[3]]
    if recheck:
        rev = list(reversed(cfg.deleted)) + [v for v in reversed(cfg.boundary)]
        for row in rows:
            if extend(cfg.g, spec, row, order=rev).sat:
                raise RuntimeError(f"{cfg.name}: compiled and reference extension disagree on {row}")
    forms = sorted({canonical_form(cfg, row, spec) for row in rows})
    concrete = len({canonical_form(cfg, row, spec, catalog_normal=False) for row in rows})
    log.info("%s: %d consistent, %d bad, %d full checks, %.1fs", cfg.name, ncons, nbad, nfull, time.time() - t0)
    L = cfg.g.labels
    return VerificationReport(
        name=cfg.name, spec=spec, boundary_size=len(cfg.boundary),
        catalog_sizes={SMALL: len(catalog(SMALL, spec)), BIG: len(catalog(BIG, spec))},
        consistent=ncons, raw_bad=nbad, bad=forms, concrete_orbits=concrete, full_checks=nfull, seconds=time.time() - t0,
        labels=L, boundary_labels=tuple(L[v] for v in cfg.boundary),
    )


def witness(cfg: Configuration, col: Sequence[int], spec: PackingSpec = DEFAULT_SPEC) -> tuple[int, ...] | None:
    """Compiled extension of one boundary coloring; None when it is bad."""
    c = np.array(col, np.int64)
    out = np.zeros_like(c)
    ok = _engine.extend_one(c, np.array(cfg.deleted, np.int64), spec.j, spec.ncolors,
                            _pad(cfg.g.adj), _pad(cfg.g.square()), out)
    return tuple(int(x) for x in out) if ok else None


def witness_is_valid(cfg: Configuration, col: Sequence[int], sol: Sequence[int], spec: PackingSpec = DEFAULT_SPEC) -> bool:
    """The extension agrees with the boundary coloring and is proper in G."""
    for v in cfg.boundary:
        if col[v] == UNDETERMINED:
            if not spec.is_one(sol[v]):
                return False
        elif col[v] != sol[v]:
            return False
    if any(sol[s] == UNCOLORED for s in cfg.deleted):
        return False
    return check_coloring(cfg.g, spec, sol).ok


# ---------------------------------------------------------------- shared leaves

@dataclass
class SharedLeafResult:
    ok: bool
    checked: int
    counterexample: tuple[int, ...] | None = None


def merge_leaves(cfg: Configuration, keep: str, drop: str) -> tuple[Graph, Graph, dict[int, int]]:
    """Identify leaf ``drop`` with leaf ``keep`` of a different claw.

    Returns G and G' of the variant on the original index set (``drop``
    isolated) plus the copy map drop -> keep.
    """
    g = cfg.g
    a, b = g.index(keep), g.index(drop)
    owner = {v: i for i, c in enumerate(cfg.claws) for v in c.leaves}
    if a not in owner or b not in owner or owner[a] == owner[b]:
        raise ConfigError("shared-leaf variants merge leaves of two different claws")

    def merged(h: Graph) -> Graph:
        es = {(min(m(u), m(v)), max(m(u), m(v))) for u, v in h.edges()}
        return Graph(h.n, [e for e in es if e[0] != e[1]], h.labels)

    def m(x: int) -> int:
        return a if x == b else x

    return merged(g), merged(cfg.g_prime), {b: a}


def shared_neighbor_reduction_check(cfg: Configuration, keep: str, drop: str,
                                    spec: PackingSpec = DEFAULT_SPEC) -> SharedLeafResult:
    """Colorings of a shared-leaf variant are covered by the distinct-leaf case.

    Enumerates (up to 2-color relabeling) all proper colorings of the two
    involved claws in the variant.  Each is copied onto the distinct-leaf
    configuration (the dropped leaf repeats the shared color) and must be
    proper in its G' and present the same colors to every vertex of S,
    so that the extension problems coincide.
    """
    gv, gpv, copy = merge_leaves(cfg, keep, drop)
    (b, a), = copy.items()
    owner = {v: c for c in cfg.claws for v in c.leaves}
    verts_v = sorted(set(owner[a].vertices) | set(owner[b].vertices) - {b})
    sq_v, sq_d = gpv.square(), cfg.g_prime.square()
    gsq_v, gsq_d = gv.square(), cfg.g.square()
    col = [UNCOLORED] * cfg.g.n
    checked = 0
    colors = list(spec.ones) + list(spec.twos)

    def exposure(g: Graph, gsq, s: int, c: Sequence[int]):
        return (frozenset(c[w] for w in g.adj[s] if spec.is_one(c[w])),
                frozenset(c[w] for w in gsq[s] if spec.is_two(c[w])))

    def rec(i: int, fresh: int):
        nonlocal checked
        if i == len(verts_v):
            checked += 1
            dup = list(col)
            dup[b] = col[a]
            if not _consistent(cfg.g_prime.adj, sq_d, spec, dup, verts_v + [b]):
                return tuple(col)
            for s in cfg.deleted:
                if exposure(gv, gsq_v, s, col) != exposure(cfg.g, gsq_d, s, dup):
                    return tuple(col)
            return None
        v = verts_v[i]
        for x in colors:
            nxt = fresh
            if spec.is_two(x):
                if x > spec.j + 1 + fresh:
                    continue
                if x == spec.j + 1 + fresh:
                    nxt += 1
            col[v] = x
            if _consistent(gpv.adj, sq_v, spec, col, [v]):
                bad = rec(i + 1, nxt)
                if bad is not None:
                    col[v] = UNCOLORED
                    return bad
            col[v] = UNCOLORED
        return None

    bad = rec(0, 0)
    return SharedLeafResult(bad is None, checked, bad)


SHARED_LEAF_VARIANTS = {
    "3-face-meets-two-4-cycles": ("v4", "w5"),
    "5-face-3-vertex-disjoint-3-faces": ("x4", "x5"),
    "5-face-two-3-vertices-3-face": ("x4", "x5"),
}


def relabel_coloring(col: Sequence[int], perm2: dict[int, int], swap_ones: bool = False) -> tuple[int, ...]:
    """Apply a 2-color permutation (and optionally exchange the 1-colors)."""
    out = []
    for c in col:
        if swap_ones and c in (1, 2):
            c = 3 - c
        out.append(perm2.get(c, c))
    return tuple(out)


__all__ = [
    "Claw", "Configuration", "ConfigError", "VerificationReport", "build_configuration",
    "builtin_configs", "get_config", "enumerate_boundary_colorings", "extension_check",
    "canonical_form", "verify", "witness", "witness_is_valid", "shared_neighbor_reduction_check",
    "merge_leaves", "claw_order", "relabel_coloring", "GraphError", "SHARED_LEAF_VARIANTS",
]
