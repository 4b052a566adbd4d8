"""Reader and writer for configuration input files.

Layout (whitespace separated; vertex indices are 0-based):

    <name>
    <number of big claws>
    <center> <leaf> <leaf> <leaf>        one line per big claw
    <number of small claws>
    <center> <leaf> <leaf>               one line per small claw
    <n>
    <strictly upper triangular part of G, row by row>
    <n>
    <strictly upper triangular part of G'>
    deleted: <i> <j> ...                 optional

Matrix entries are 2 for an edge and 1 for a non-edge.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .configs import Claw, ConfigError, Configuration, builtin_configs
from .graph import Graph


class AppendixParseError(ValueError):
    pass


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int

    def where(self) -> str:
        return f"line {self.line}, token {self.col}"


class _Stream:
    def __init__(self, lines: list[tuple[int, str]]):
        self.toks = [_Tok(t, ln, i + 1) for ln, s in lines for i, t in enumerate(s.split())]
        self.pos = 0
        self.last_line = lines[-1][0] if lines else 1

    def next(self, what: str) -> _Tok:
        if self.pos >= len(self.toks):
            raise AppendixParseError(f"line {self.last_line}: unexpected end of input, expected {what}")
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def int(self, what: str, lo: int | None = None, hi: int | None = None) -> int:
        t = self.next(what)
        if not re.fullmatch(r"-?\d+", t.text):
            raise AppendixParseError(f"{t.where()}: expected {what}, got {t.text!r}")
        v = int(t.text)
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise AppendixParseError(f"{t.where()}: {what} {v} out of range")
        return v


def _matrix(st: _Stream, which: str) -> tuple[int, list[tuple[int, int]]]:
    n = st.int(f"vertex count of {which}", lo=1)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            t = st.next(f"{which} entry ({i}, {j})")
            if t.text == "2":
                edges.append((i, j))
            elif t.text != "1":
                raise AppendixParseError(f"{t.where()}: {which} entry ({i}, {j}) must be 1 or 2, got {t.text!r}")
    return n, edges


def parse_appendix(text: str) -> Configuration:
    raw = [(i + 1, ln.split("#")[0].rstrip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, s) for i, s in raw if s.strip()]
    if not lines:
        raise AppendixParseError("line 1: empty input")
    name = lines[0][1].strip()
    deleted_line = None
    if lines[-1][1].strip().startswith("deleted:"):
        deleted_line = lines.pop()
    st = _Stream(lines[1:])
    claws_raw = []
    for kind, size in (("big", 4), ("small", 3)):
        cnt = st.int(f"number of {kind} claws", lo=0)
        for c in range(cnt):
            claws_raw.append([(st.int(f"vertex of {kind} claw {c + 1}", lo=0), st.toks[st.pos - 1])
                              for _ in range(size)])
    n, ge = _matrix(st, "G")
    n2, gpe = _matrix(st, "G'")
    if n2 != n:
        raise AppendixParseError(f"{st.toks[st.pos - 1].where()}: G' has {n2} vertices, G has {n}")
    if st.pos != len(st.toks):
        t = st.toks[st.pos]
        raise AppendixParseError(f"{t.where()}: {len(st.toks) - st.pos} trailing tokens")
    labels = [str(i) for i in range(n)]
    g, gp = Graph(n, ge, labels), Graph(n, gpe, labels)

    claws = []
    seen: dict[int, str] = {}
    for verts in claws_raw:
        for v, tok in verts:
            if v >= n:
                raise AppendixParseError(f"{tok.where()}: claw vertex {v} out of range 0..{n - 1}")
            if v in seen:
                raise AppendixParseError(f"{tok.where()}: vertex {v} appears in two claws")
            seen[v] = tok.where()
        center, ctok = verts[0]
        for leaf, tok in verts[1:]:
            if not gp.has_edge(center, leaf):
                raise AppendixParseError(f"{tok.where()}: claw edge {center}-{leaf} missing in G'")
        claws.append(Claw(center, tuple(v for v, _ in verts[1:])))

    if deleted_line is not None:
        ln, s = deleted_line
        toks = s.split(":", 1)[1].split()
        deleted = []
        for i, t in enumerate(toks):
            if not t.isdigit() or int(t) >= n:
                raise AppendixParseError(f"line {ln}, token {i + 2}: bad deleted vertex {t!r}")
            deleted.append(int(t))
    else:
        deleted = _default_deleted(name, g, gp, set(seen))
    for u, v in g.edges():
        if u not in deleted and v not in deleted and not gp.has_edge(u, v):
            raise AppendixParseError(f"edge {u}-{v} of G is missing from G'")
    added = tuple(e for e in gp.edges() if not g.has_edge(*e))
    try:
        return Configuration(name, g, gp, tuple(deleted), tuple(claws), added)
    except ConfigError as exc:
        raise AppendixParseError(f"invalid configuration: {exc}") from None


def _default_deleted(name: str, g: Graph, gp: Graph, in_claws: set[int]) -> list[int]:
    for cfg in builtin_configs().values():
        if name == cfg.name or name in cfg.aliases:
            return list(cfg.deleted)
    return [v for v in range(g.n) if v not in in_claws and g.degree(v) and not gp.degree(v)]


def _rows(g: Graph) -> list[str]:
    return [" ".join("2" if g.has_edge(i, j) else "1" for j in range(i + 1, g.n)) for i in range(g.n - 1)]


def serialize_appendix(cfg: Configuration, with_deleted: bool = True) -> str:
    big = [c for c in cfg.claws if len(c.leaves) == 3]
    small = [c for c in cfg.claws if len(c.leaves) == 2]
    out = [cfg.name, str(len(big))]
    out += [" ".join(map(str, c.vertices)) for c in big]
    out.append(str(len(small)))
    out += [" ".join(map(str, c.vertices)) for c in small]
    for h in (cfg.g, cfg.g_prime):
        out.append(str(h.n))
        out += _rows(h)
    if with_deleted:
        out.append("deleted: " + " ".join(map(str, cfg.deleted)))
    return "\n".join(out) + "\n"
