"""Packing (1^j, 2^k)-colorings: validity checks and exact backtracking.

Colors are plain integers: 0 is uncolored, -1 is an undetermined 1-color,
1..j are the 1-colors and j+1..j+k the 2-colors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from string import ascii_lowercase
from typing import Sequence

from .graph import Graph, independence_number, max_2_independent

UNCOLORED = 0
UNDETERMINED = -1


@dataclass(frozen=True)
class PackingSpec:
    j: int
    k: int

    def __post_init__(self):
        if self.j < 0 or self.k < 0 or self.j + self.k < 1:
            raise ValueError(f"invalid packing spec (1^{self.j}, 2^{self.k})")

    @property
    def ncolors(self) -> int:
        return self.j + self.k

    @property
    def ones(self) -> range:
        return range(1, self.j + 1)

    @property
    def twos(self) -> range:
        return range(self.j + 1, self.j + self.k + 1)

    def is_one(self, c: int) -> bool:
        return 1 <= c <= self.j

    def is_two(self, c: int) -> bool:
        return self.j < c <= self.j + self.k

    def color_name(self, c: int) -> str:
        if c == UNCOLORED:
            return "0"
        if c == UNDETERMINED:
            return "-1"
        if self.is_one(c):
            if self.j == 1:
                return "1"
            return "1_" + (ascii_lowercase[c - 1] if self.j <= 26 else str(c))
        if self.is_two(c):
            return f"2_{c - self.j}"
        raise ValueError(f"color {c} outside spec {self}")

    def parse_color(self, s: str) -> int:
        s = s.strip()
        if re.fullmatch(r"-?\d+", s):
            c = int(s)
            self.validate_color(c)
            return c
        m = re.fullmatch(r"1_([a-z])", s)
        if m and ascii_lowercase.index(m.group(1)) < self.j:
            return ascii_lowercase.index(m.group(1)) + 1
        if s == "1" and self.j == 1:
            return 1
        m = re.fullmatch(r"2_(\d+)", s)
        if m and 1 <= int(m.group(1)) <= self.k:
            return self.j + int(m.group(1))
        raise ValueError(f"cannot parse color {s!r} under {self}")

    def validate_color(self, c: int) -> None:
        if c == UNDETERMINED and self.j == 0:
            raise ValueError("undetermined 1-color needs j >= 1")
        if not (c in (UNCOLORED, UNDETERMINED) or 1 <= c <= self.ncolors):
            raise ValueError(f"color index {c} out of range for {self}")

    def __str__(self) -> str:
        parts = []
        if self.j:
            parts.append("1" if self.j == 1 else f"1^{self.j}")
        if self.k:
            parts.append("2" if self.k == 1 else f"2^{self.k}")
        return ",".join(parts)


def parse_spec(text: str) -> PackingSpec:
    """Parse ``1^2,2^7`` / ``1,2^5`` style strings (parentheses optional)."""
    j = k = 0
    body = text.strip().strip("()").replace(" ", "")
    if not body:
        raise ValueError("empty spec")
    for part in body.split(","):
        m = re.fullmatch(r"([12])(?:\^(\d+))?", part)
        if not m:
            raise ValueError(f"bad spec component {part!r}")
        cnt = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "1":
            j += cnt
        else:
            k += cnt
    return PackingSpec(j, k)


@dataclass(frozen=True)
class Violation:
    u: int
    v: int
    color: int
    kind: str  # "edge" or "distance-2"


@dataclass
class CheckResult:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    incomplete: list[int] = field(default_factory=list)


def check_coloring(g: Graph, spec: PackingSpec, coloring: Sequence[int], require_total: bool = False) -> CheckResult:
    if len(coloring) != g.n:
        raise ValueError(f"coloring has {len(coloring)} entries for {g.n} vertices")
    for c in coloring:
        spec.validate_color(c)
    res = CheckResult(ok=True)
    res.incomplete = [v for v in range(g.n) if coloring[v] in (UNCOLORED, UNDETERMINED)]
    sq = g.square()
    for u in range(g.n):
        cu = coloring[u]
        if spec.is_one(cu):
            for w in g.adj[u]:
                if w > u and coloring[w] == cu:
                    res.violations.append(Violation(u, w, cu, "edge"))
        elif spec.is_two(cu):
            for w in sq[u]:
                if w > u and coloring[w] == cu:
                    kind = "edge" if w in g.adj[u] else "distance-2"
                    res.violations.append(Violation(u, w, cu, kind))
    res.ok = not res.violations and not (require_total and res.incomplete)
    return res


@dataclass
class ExtendResult:
    sat: bool
    coloring: tuple[int, ...] | None
    nodes: int


class _Search:
    def __init__(self, g: Graph, spec: PackingSpec, partial: Sequence[int], order: Sequence[int] | None, symmetry: bool):
        self.g, self.spec = g, spec
        self.sq = g.square()
        self.col = list(partial)
        self.free = [v for v in range(g.n) if partial[v] in (UNCOLORED, UNDETERMINED)]
        self.only_one = {v for v in self.free if partial[v] == UNDETERMINED}
        for v in self.free:
            self.col[v] = UNCOLORED
        self.order = list(order) if order is not None else None
        self.symmetry = symmetry
        self.nodes = 0
        self.used = [0] * (spec.ncolors + 1)
        for c in self.col:
            if c > 0:
                self.used[c] += 1

    def options(self, v: int) -> list[int]:
        spec, col = self.spec, self.col
        seen1 = {col[w] for w in self.g.adj[v]}
        out = [c for c in spec.ones if c not in seen1]
        if v not in self.only_one and spec.k:
            seen2 = {col[w] for w in self.sq[v]}
            out += [c for c in spec.twos if c not in seen2]
        if self.symmetry:
            out = self._break(out)
        return out

    def _break(self, cands: list[int]) -> list[int]:
        # unused colors of one radius class are interchangeable: keep the first
        out, fresh1, fresh2 = [], False, False
        for c in cands:
            if self.used[c]:
                out.append(c)
            elif self.spec.is_one(c) and not fresh1:
                out.append(c)
                fresh1 = True
            elif self.spec.is_two(c) and not fresh2:
                out.append(c)
                fresh2 = True
        return out

    def pick(self, todo: list[int]) -> tuple[int, list[int]]:
        if self.order is not None:
            v = todo[0]
            return v, self.options(v)
        best_v, best_opts = -1, None
        for v in todo:
            opts = self.options(v)
            if best_opts is None or len(opts) < len(best_opts):
                best_v, best_opts = v, opts
                if not opts:
                    break
        return best_v, best_opts

    def run(self) -> bool:
        if self.order is not None:
            rank = {v: i for i, v in enumerate(self.order)}
            todo = sorted(self.free, key=lambda v: (rank.get(v, len(rank)), v))
        else:
            todo = list(self.free)
        return self._rec(todo)

    def _rec(self, todo: list[int]) -> bool:
        self.nodes += 1
        if not todo:
            return True
        v, opts = self.pick(todo)
        rest = [w for w in todo if w != v]
        for c in opts:
            self.col[v] = c
            self.used[c] += 1
            if self._rec(rest):
                return True
            self.used[c] -= 1
        self.col[v] = UNCOLORED
        return False


def extend(g: Graph, spec: PackingSpec, partial: Sequence[int], order: Sequence[int] | None = None) -> ExtendResult:
    """Exhaustively extend ``partial`` to a total packing coloring of ``g``.

    Uncolored vertices may take any color; undetermined vertices only
    1-colors. ``order`` replaces the default most-constrained-first rule by
    a static vertex order (used to re-check results independently).
    """
    pre = check_coloring(g, spec, partial)
    if not pre.ok:
        v = pre.violations[0]
        raise ValueError(f"partial coloring conflicts at ({v.u}, {v.v}) on color {v.color}")
    s = _Search(g, spec, partial, order, symmetry=False)
    if s.run():
        return ExtendResult(True, tuple(s.col), s.nodes)
    return ExtendResult(False, None, s.nodes)


def solve(g: Graph, spec: PackingSpec) -> ExtendResult:
    """Total coloring from scratch, fixing the first use of each fresh color."""
    s = _Search(g, spec, [UNCOLORED] * g.n, None, symmetry=True)
    if s.run():
        return ExtendResult(True, tuple(s.col), s.nodes)
    return ExtendResult(False, None, s.nodes)


def capacity_bound(g: Graph, spec: PackingSpec) -> int:
    """Upper bound on how many vertices the palette's color classes can cover."""
    alpha = independence_number(g) if spec.j else 0
    beta = max_2_independent(g) if spec.k else 0
    return spec.j * alpha + spec.k * beta


def format_coloring(g: Graph, spec: PackingSpec, coloring: Sequence[int]) -> str:
    return "".join(f"{g.labels[v]} = {spec.color_name(c)}\n" for v, c in enumerate(coloring))
