import random
import time

import pytest

from packcolor.claws import (BIG, SMALL, CatalogError, ClawColoring, big_claw_catalog, catalog, classify,
                             dump_catalog, internally_consistent, raw_claw_colorings, reduce_primed,
                             small_claw_catalog, type_counts)
from packcolor.configs import _consistent, builtin_configs
from packcolor.solver import PackingSpec, extend

SPEC = PackingSpec(2, 7)


def test_small_catalog_counts():
    t0 = time.perf_counter()
    cat = small_claw_catalog(SPEC)
    assert time.perf_counter() - t0 < 1.0
    assert len(cat) == 84
    assert type_counts(cat) == {"T1": 21, "T2": 14, "T3": 42, "T4": 7}


def test_big_catalog_counts():
    cat = big_claw_catalog(SPEC)
    assert len(cat) == 119
    assert type_counts(cat) == {"T1": 35, "T2": 42, "T3": 42}


@pytest.mark.parametrize("kind", [SMALL, BIG])
def test_entries_are_conflict_free_and_distinct(kind):
    cat = catalog(kind)
    assert len({e.key() for e in cat}) == len(cat)
    for e in cat:
        assert internally_consistent(e.center, e.leaves)
        twos = [c for c in e.colors() if c >= 3]
        assert len(twos) == len(set(twos))
        assert classify(kind, e.center, e.leaves) == e.type_tag


def test_wrong_spec():
    with pytest.raises(CatalogError):
        small_claw_catalog(PackingSpec(1, 7))


@pytest.mark.parametrize("kind", [SMALL, BIG])
def test_coverage(kind):
    """Every conflict-free claw coloring is in the catalog or reduces into it."""
    keys = {e.key() for e in catalog(kind)}
    for c in raw_claw_colorings(kind):
        if c.key() in keys:
            continue
        r, _ = reduce_primed(c)
        assert r.key() in keys


def test_undetermined_instances_are_concrete_colorings():
    # a -1 center is the promise of either 1-color; both concrete versions reduce to it
    for e in catalog(SMALL):
        if e.center == -1:
            for x in (1, 2):
                r, rule = reduce_primed(ClawColoring(SMALL, x, e.leaves))
                assert r == e and rule == "center recolored to -1"


def test_reduce_type_1_prime_example():
    r, rule = reduce_primed(ClawColoring(SMALL, 1, (3, 4)))
    assert (r.center, r.leaves, r.type_tag) == (-1, (3, 4), "T1")


def test_reduce_big_leaf_identity():
    r, rule = reduce_primed(ClawColoring(BIG, 3, (2, 2, 4)))
    assert (r.center, r.leaves, r.type_tag) == (3, (1, 1, 4), "T3")
    assert "identity" in rule


def test_reduce_catalog_entry_rejected():
    with pytest.raises(CatalogError, match="already canonical"):
        reduce_primed(catalog(BIG)[0])


def test_reduction_keeps_claw_shape():
    for kind in (SMALL, BIG):
        for c in raw_claw_colorings(kind):
            if c.key() in {e.key() for e in catalog(kind)}:
                continue
            r, _ = reduce_primed(c)
            assert len(r.leaves) == len(c.leaves)


def test_dump_format():
    text = dump_catalog(BIG)
    lines = text.splitlines()
    assert len(lines) == 120
    assert lines[0].split()[:2] == ["big", "T1"]
    assert lines[-1] == "# T1=35 T2=42 T3=42 total=119"


def _place(col, claw, entry, rng):
    leaves = list(entry.leaves)
    rng.shuffle(leaves)
    for v, x in zip(claw.vertices, (entry.center, *leaves)):
        col[v] = x


@pytest.mark.parametrize("name", sorted(builtin_configs()))
def test_reduction_soundness_sampled(name):
    """When the catalog substitute R(c) is a proper boundary coloring and
    extends, the original claw coloring c extends too."""
    cfg = builtin_configs()[name]
    rng = random.Random(2024)
    gp, sq = cfg.g_prime, cfg.g_prime.square()
    raws = {k: [c for c in raw_claw_colorings(k) if classify(k, c.center, c.leaves).endswith("'")]
            for k in (SMALL, BIG)}
    checked = 0
    while checked < 300:
        col = [0] * cfg.g.n
        for claw in cfg.claws:
            _place(col, claw, rng.choice(catalog(claw.kind)), rng)
        if not _consistent(gp.adj, sq, SPEC, col, cfg.boundary):
            continue
        claw = rng.choice(cfg.claws)
        c = rng.choice(raws[claw.kind])
        r, _ = reduce_primed(c)
        with_c, with_r = list(col), list(col)
        _place(with_c, claw, c, rng)
        _place(with_r, claw, r, rng)
        if not (_consistent(gp.adj, sq, SPEC, with_c, cfg.boundary)
                and _consistent(gp.adj, sq, SPEC, with_r, cfg.boundary)):
            continue
        if extend(cfg.g, SPEC, with_r).sat:
            checked += 1
            assert extend(cfg.g, SPEC, with_c).sat, (c, r, with_c)
