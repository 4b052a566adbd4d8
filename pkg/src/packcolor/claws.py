"""Catalogs of boundary-claw precolorings for packing (1^2, 2^k)-colorings.

A claw is a center with two (small) or three (big) leaves.  Leaves are
interchangeable, so an entry stores them as a sorted tuple.  Encoding:
-1 undetermined 1-color, 1 = 1_a, 2 = 1_b, 3.. = 2-colors.

Entry patterns (c, d, e distinct 2-colors; x, y the two 1-colors):

    small  T1  center -1, leaves {c, d}
           T2  center x,  leaves {y, c}
           T3  center c,  leaves {1_a, d}
           T4  center c,  leaves {1_a, 1_a}
    big    T1  center -1, leaves {c, d, e}
           T2  center x,  leaves {y, c, d}
           T3  center c,  leaves {1_a, 1_a, d}

A 1-colored leaf of a 2-colored center never constrains the interior, so
its identity is stored as 1_a.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .solver import UNDETERMINED, PackingSpec

A, B = 1, 2
SMALL, BIG = "small", "big"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ClawColoring:
    kind: str
    center: int
    leaves: tuple[int, ...]
    type_tag: str = ""

    def colors(self) -> tuple[int, ...]:
        return (self.center,) + self.leaves

    def key(self) -> tuple:
        return (self.kind, self.center, self.leaves)


def _check_spec(spec: PackingSpec) -> None:
    if spec.j != 2 or spec.k < 3:
        raise CatalogError(f"claw catalogs are defined for (1^2, 2^k) with k >= 3, got {spec}")


def small_claw_catalog(spec: PackingSpec = PackingSpec(2, 7)) -> tuple[ClawColoring, ...]:
    _check_spec(spec)
    return _small(spec.k)


def big_claw_catalog(spec: PackingSpec = PackingSpec(2, 7)) -> tuple[ClawColoring, ...]:
    _check_spec(spec)
    return _big(spec.k)


def catalog(kind: str, spec: PackingSpec = PackingSpec(2, 7)) -> tuple[ClawColoring, ...]:
    if kind == SMALL:
        return small_claw_catalog(spec)
    if kind == BIG:
        return big_claw_catalog(spec)
    raise CatalogError(f"unknown claw kind {kind!r}")


@lru_cache(maxsize=None)
def _small(k: int) -> tuple[ClawColoring, ...]:
    two = range(3, 3 + k)
    out = [ClawColoring(SMALL, UNDETERMINED, p, "T1") for p in itertools.combinations(two, 2)]
    for x, y in ((A, B), (B, A)):
        out += [ClawColoring(SMALL, x, tuple(sorted((y, c))), "T2") for c in two]
    out += [ClawColoring(SMALL, c, (A, d), "T3") for c in two for d in two if c != d]
    out += [ClawColoring(SMALL, c, (A, A), "T4") for c in two]
    return tuple(out)


@lru_cache(maxsize=None)
def _big(k: int) -> tuple[ClawColoring, ...]:
    two = range(3, 3 + k)
    out = [ClawColoring(BIG, UNDETERMINED, p, "T1") for p in itertools.combinations(two, 3)]
    for x, y in ((A, B), (B, A)):
        out += [ClawColoring(BIG, x, (y,) + p, "T2") for p in itertools.combinations(two, 2)]
    out += [ClawColoring(BIG, c, (A, A, d), "T3") for c in two for d in two if c != d]
    return tuple(out)


def type_counts(entries) -> dict[str, int]:
    out: dict[str, int] = {}
    for e in entries:
        out[e.type_tag] = out.get(e.type_tag, 0) + 1
    return out


def is_one(c: int) -> bool:
    return c in (A, B)


def internally_consistent(center: int, leaves: tuple[int, ...]) -> bool:
    """Center-leaf edges and leaf-leaf distance two, ignoring -1."""
    if is_one(center) and center in leaves:
        return False
    twos = [c for c in (center,) + tuple(leaves) if c >= 3]
    return len(twos) == len(set(twos))


def _lookup(kind: str, center: int, leaves, k: int) -> ClawColoring | None:
    target = (kind, center, tuple(sorted(leaves)))
    for e in (_small(k) if kind == SMALL else _big(k)):
        if e.key() == target:
            return e
    return None


def classify(kind: str, center: int, leaves, k: int = 7) -> str:
    """Type tag of a concrete claw coloring; primed tags lie outside the catalog."""
    leaves = tuple(sorted(leaves))
    if kind not in (SMALL, BIG) or len(leaves) != (2 if kind == SMALL else 3):
        raise CatalogError(f"{kind} claw needs {2 if kind == SMALL else 3} leaves")
    if not internally_consistent(center, leaves):
        raise CatalogError(f"claw coloring {center} {leaves} is not internally conflict-free")
    hit = _lookup(kind, center, leaves, k)
    if hit is not None:
        return hit.type_tag
    ones = sum(1 for c in leaves if is_one(c))
    if center == UNDETERMINED:
        raise CatalogError("undetermined center with a 1-colored leaf has no type")
    if ones == 0:
        return "T1'"
    if kind == SMALL:
        if is_one(center):
            return "T2'"
        return "T3'" if ones == 1 else "T4'"
    if is_one(center):
        return "T2''" if ones == 2 else "T2'''"
    if ones == 1:
        return "T2'"
    return "T3'" if ones == 2 else "T3''"


def reduce_primed(c: ClawColoring, k: int = 7) -> tuple[ClawColoring, str]:
    """Map a non-catalog claw coloring to its catalog representative.

    Returns the entry and the recoloring applied.  Every rule recolors only
    vertices of the claw itself: the center becomes -1, a 1-colored center
    gets the other 1-color, a leaf gets a 2-color unused in the claw, or a
    leaf 1-color changes identity.
    """
    center, leaves = c.center, tuple(sorted(c.leaves))
    tag = classify(c.kind, center, leaves, k)
    if not tag.endswith("'"):
        raise CatalogError("already canonical")
    two_free = [x for x in range(3, 3 + k) if x not in (center,) + leaves]
    twos = [x for x in leaves if x >= 3]
    ones = [x for x in leaves if is_one(x)]

    if tag == "T1'":
        out, rule = (UNDETERMINED, leaves), "center recolored to -1"
    elif c.kind == SMALL and tag == "T2'":
        # center x with both leaves y: one leaf takes a 2-color
        out, rule = (center, (ones[0], two_free[0])), "leaf recolored to an unused 2-color"
    elif c.kind == SMALL and tag in ("T3'", "T4'"):
        out, rule = (center, tuple(A for _ in ones) + tuple(twos)), "leaf 1-color identity normalized"
    elif tag == "T2'":
        # 2-colored big center with one 1-colored leaf y: center takes the other 1-color
        y = ones[0]
        out, rule = (B if y == A else A, leaves), "center recolored to the free 1-color"
    elif tag in ("T2''", "T2'''"):
        y = ones[0]
        need = 3 - 1 - len(twos)
        out = (center, (y,) + tuple(twos) + tuple(two_free[:need]))
        rule = "leaves recolored to unused 2-colors"
    elif tag == "T3'":
        out, rule = (center, (A, A) + tuple(twos)), "leaf 1-color identity normalized"
    else:  # T3'': three 1-colored leaves under a 2-colored center
        out, rule = (center, (A, A, two_free[0])), "leaf 1-color normalized and one leaf recolored to an unused 2-color"
    hit = _lookup(c.kind, out[0], out[1], k)
    if hit is None:
        raise CatalogError(f"not reducible by any rule: {c}")
    return hit, rule


def raw_claw_colorings(kind: str, k: int = 7):
    """All internally conflict-free concrete colorings (leaves as multisets)."""
    nleaf = 2 if kind == SMALL else 3
    colors = range(1, 3 + k)
    for center in colors:
        for leaves in itertools.combinations_with_replacement(colors, nleaf):
            if internally_consistent(center, leaves):
                yield ClawColoring(kind, center, leaves)


def dump_catalog(kind: str, spec: PackingSpec = PackingSpec(2, 7)) -> str:
    lines = [f"{e.kind} {e.type_tag} {e.center} {' '.join(map(str, e.leaves))}" for e in catalog(kind, spec)]
    counts = type_counts(catalog(kind, spec))
    lines.append("# " + " ".join(f"{t}={n}" for t, n in sorted(counts.items())) + f" total={sum(counts.values())}")
    return "\n".join(lines) + "\n"
