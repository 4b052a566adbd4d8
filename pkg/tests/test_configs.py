import itertools
import random

import pytest

from packcolor.appendix import AppendixParseError, parse_appendix, serialize_appendix
from packcolor.claws import catalog
from packcolor.configs import (ConfigError, SHARED_LEAF_VARIANTS, build_configuration, builtin_configs,
                               canonical_form, enumerate_boundary_colorings, get_config,
                               shared_neighbor_reduction_check, verify, witness, witness_is_valid)
from packcolor.solver import PackingSpec, check_coloring, extend

SPEC = PackingSpec(2, 7)
SMALL_SPEC = PackingSpec(2, 4)
TIGHT_SPEC = PackingSpec(2, 3)


def star3():
    return build_configuration(
        "star3", "s-a s-b s-c a-a1 a-a2 b-b1 b-b2 c-c1 c-c2", ["s"], "a-b b-c",
        [("a", ["a1", "a2"]), ("b", ["b1", "b2"]), ("c", ["c1", "c2"])])


def big_small():
    return build_configuration(
        "big-small", "s-b s-c b-b1 b-b2 b-b3 c-c1 c-c2", ["s"], "b-c",
        [("b", ["b1", "b2", "b3"]), ("c", ["c1", "c2"])])


def edge_pair():
    return build_configuration(
        "edge-pair", "s-t s-a t-b t-c a-a1 a-a2 b-b1 b-b2 b-b3 c-c1 c-c2", ["s", "t"], "a-b b-c",
        [("a", ["a1", "a2"]), ("b", ["b1", "b2", "b3"]), ("c", ["c1", "c2"])])


def linked_centers():
    # centers a and b are adjacent in G, so undetermined centers interact
    return build_configuration(
        "linked-centers", "s-a s-b s-c a-b a-a1 a-a2 b-b1 b-b2 c-c1 c-c2", ["s"], "b-c",
        [("a", ["a1", "a2"]), ("b", ["b1", "b2"]), ("c", ["c1", "c2"])])


def linked_pair():
    return build_configuration(
        "linked-pair", "s-a s-b a-b a-a1 a-a2 b-b1 b-b2", ["s"], "",
        [("a", ["a1", "a2"]), ("b", ["b1", "b2"])])


SYNTHETIC = [star3, big_small, edge_pair, linked_centers, linked_pair]


@pytest.mark.parametrize("alias, size", [("lemma-3.8", 20), ("lemma-3.9", 26), ("lemma-3.10", 22)])
def test_boundary_sizes(alias, size):
    cfg = get_config(alias)
    assert len(cfg.boundary) == size
    assert cfg.boundary == tuple(v for c in cfg.claws for v in c.vertices)


def test_builtin_boundary_is_distance_two_halo():
    for cfg in builtin_configs().values():
        S = set(cfg.deleted)
        halo = {v for v in range(cfg.g.n) if v not in S and any(
            w in S for w in cfg.g.adj[v] | {x for u in cfg.g.adj[v] for x in cfg.g.adj[u]})}
        assert halo == set(cfg.boundary)
        for c in cfg.claws:
            assert all(cfg.g_prime.has_edge(c.center, x) for x in c.leaves)
        assert cfg.g_prime.max_degree() <= 4 and cfg.g.max_degree() <= 4


def test_builtin_added_edges():
    cfg = get_config("lemma-3.8")
    L = cfg.g.labels
    assert {frozenset((L[a], L[b])) for a, b in cfg.added_edges} == {
        frozenset(p) for p in (("v2", "u4"), ("v3", "u6"), ("u5", "u7"))}


def test_unknown_config():
    with pytest.raises(ConfigError):
        get_config("lemma-9.9")


def test_claw_edge_must_exist():
    with pytest.raises(ConfigError, match="missing from G'"):
        build_configuration("bad", "s-a s-b a-a1 a-a2 b-b1 b-b2", ["s"], "a-b",
                            [("a", ["a1", "b1"]), ("b", ["a2", "b2"])])


def test_claws_must_cover_boundary():
    with pytest.raises(ConfigError, match="boundary"):
        build_configuration("bad", "s-a s-b a-a1 a-a2 b-b1 b-b2", ["s"], "a-b", [("a", ["a1", "a2"])])


def test_distance_two_pairs_need_added_edges():
    # a and b see each other through s; without the added edge a proper
    # boundary coloring of G' could clash in G
    with pytest.raises(ConfigError, match="within distance 2"):
        build_configuration("bad", "s-a s-b a-a1 a-a2 b-b1 b-b2", ["s"], "",
                            [("a", ["a1", "a2"]), ("b", ["b1", "b2"])])


@pytest.mark.parametrize("name", sorted(builtin_configs()))
def test_enumeration_nonempty_and_consistent(name):
    cfg = builtin_configs()[name]
    for col in itertools.islice(enumerate_boundary_colorings(cfg), 500):
        assert check_coloring(cfg.g_prime, SPEC, col).ok
        assert check_coloring(cfg.g, SPEC, col).ok
        assert all(col[s] == 0 for s in cfg.deleted)


def test_enumeration_claw_entries_come_from_catalogs():
    cfg = get_config("lemma-3.10")
    keys = {k: {e.key() for e in catalog(k)} for k in ("small", "big")}
    for col in itertools.islice(enumerate_boundary_colorings(cfg), 300):
        for c in cfg.claws:
            assert (c.kind, col[c.center], tuple(sorted(col[x] for x in c.leaves))) in keys[c.kind]


def _python_route(cfg, spec):
    """Reference: stream every first-occurrence product and extend it."""
    cons, bad = 0, set()
    for col in enumerate_boundary_colorings(cfg, spec):
        cons += 1
        if not extend(cfg.g, spec, col).sat:
            bad.add(canonical_form(cfg, col, spec))
    return cons, sorted(bad)


@pytest.mark.parametrize("make", SYNTHETIC)
@pytest.mark.parametrize("spec", [TIGHT_SPEC, SMALL_SPEC], ids=str)
def test_engine_matches_python_route(make, spec):
    cfg = make()
    cons, bad = _python_route(cfg, spec)
    rep = verify(cfg, spec, workers=1)
    # the engine walks claws in its own order, so representatives differ;
    # the canonical classes must not
    assert rep.bad == bad
    assert rep.consistent > 0 and cons > 0
    if spec == TIGHT_SPEC:
        assert rep.bad_count > 0


@pytest.mark.parametrize("make", SYNTHETIC)
def test_pool_shortcut_changes_nothing(make):
    cfg = make()
    a = verify(cfg, TIGHT_SPEC, workers=1, use_pool=True)
    b = verify(cfg, TIGHT_SPEC, workers=1, use_pool=False)
    assert (a.consistent, a.raw_bad, a.bad) == (b.consistent, b.raw_bad, b.bad)
    assert a.full_checks <= b.full_checks


@pytest.mark.parametrize("make", SYNTHETIC)
def test_bad_set_invariant_under_catalog_relabeling(make):
    cfg = make()
    rng = random.Random(7)
    base = verify(cfg, TIGHT_SPEC, workers=1).bad
    assert base
    for _ in range(3):
        twos = list(TIGHT_SPEC.twos)
        img = twos[:]
        rng.shuffle(img)
        assert verify(cfg, TIGHT_SPEC, workers=1, color_perm=dict(zip(twos, img))).bad == base


def _random_symmetry(col, spec, rng):
    twos = list(spec.twos)
    img = twos[:]
    rng.shuffle(img)
    perm = dict(zip(twos, img))
    swap = rng.random() < 0.5
    return [3 - c if swap and c in (1, 2) else perm.get(c, c) for c in col]


@pytest.mark.parametrize("make", SYNTHETIC)
def test_canonical_form_is_a_class_invariant(make):
    cfg = make()
    rng = random.Random(11)
    for col in itertools.islice(enumerate_boundary_colorings(cfg, SMALL_SPEC), 0, 4000, 37):
        moved = _random_symmetry(col, SMALL_SPEC, rng)
        assert canonical_form(cfg, moved, SMALL_SPEC) == canonical_form(cfg, col, SMALL_SPEC)
        assert canonical_form(cfg, moved, SMALL_SPEC, catalog_normal=False) == \
            canonical_form(cfg, col, SMALL_SPEC, catalog_normal=False)


def test_canonical_form_is_least_in_class():
    cfg = star3()
    rng = random.Random(3)
    for col in itertools.islice(enumerate_boundary_colorings(cfg, SMALL_SPEC), 0, 3000, 101):
        form = canonical_form(cfg, col, SMALL_SPEC, catalog_normal=False)
        for _ in range(20):
            moved = _random_symmetry(col, SMALL_SPEC, rng)
            flat = tuple(x for c in cfg.claws
                         for x in (moved[c.center],) + tuple(sorted(moved[y] for y in c.leaves)))
            assert form <= flat


@pytest.mark.parametrize("name", sorted(builtin_configs()))
def test_witnesses_for_sampled_colorings(name):
    cfg = builtin_configs()[name]
    rng = random.Random(5)
    stream = enumerate_boundary_colorings(cfg)
    seen = 0
    for col in stream:
        if rng.random() < 0.02:
            sol = witness(cfg, col)
            if sol is None:
                assert not extend(cfg.g, SPEC, col).sat
            else:
                assert witness_is_valid(cfg, col, sol)
            seen += 1
            if seen == 150:
                break
    assert seen == 150


@pytest.mark.parametrize("name", sorted(SHARED_LEAF_VARIANTS))
def test_shared_leaf_variants_are_covered(name):
    cfg = builtin_configs()[name]
    keep, drop = SHARED_LEAF_VARIANTS[name]
    res = shared_neighbor_reduction_check(cfg, keep, drop)
    assert res.ok, res.counterexample
    assert res.checked > 0


def test_shared_leaf_check_detects_close_leaves():
    # a1 and b1 are adjacent, so copying the merged color onto both clashes
    cfg = build_configuration(
        "star3-linked", "s-a s-b s-c a-a1 a-a2 b-b1 b-b2 c-c1 c-c2 a1-b1", ["s"], "a-b b-c",
        [("a", ["a1", "a2"]), ("b", ["b1", "b2"]), ("c", ["c1", "c2"])])
    res = shared_neighbor_reduction_check(cfg, "a1", "b1", spec=SMALL_SPEC)
    assert not res.ok and res.counterexample is not None


def test_shared_leaf_needs_two_claws():
    with pytest.raises(ConfigError):
        shared_neighbor_reduction_check(star3(), "a1", "a2", spec=SMALL_SPEC)


def test_report_format_header():
    rep = verify(star3(), TIGHT_SPEC, workers=1)
    text = rep.format(expected=rep.bad_count + 1)
    head = text.splitlines()
    assert head[0] == "# configuration star3"
    assert any(h.startswith("# DISCREPANCY") for h in head)
    assert len([h for h in head if not h.startswith("#")]) == rep.bad_count


@pytest.mark.parametrize("name", sorted(builtin_configs()))
def test_appendix_round_trip(name):
    cfg = builtin_configs()[name]
    text = serialize_appendix(cfg)
    back = parse_appendix(text)
    assert back.g == cfg.g and back.g_prime == cfg.g_prime
    assert back.deleted == cfg.deleted
    assert {c.vertices for c in back.claws} == {c.vertices for c in cfg.claws}
    assert serialize_appendix(back) == text


def test_appendix_infers_deleted_set():
    cfg = get_config("lemma-3.8")
    back = parse_appendix(serialize_appendix(cfg, with_deleted=False).replace(cfg.name, "renamed", 1))
    assert back.deleted == cfg.deleted


def _corrupt(text, line_no, tok_no, new):
    lines = text.splitlines()
    toks = lines[line_no - 1].split()
    toks[tok_no - 1] = new
    lines[line_no - 1] = " ".join(toks)
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("edit, msg", [
    ((11, 2, "3"), r"line 11, token 2: G entry \(0, 2\) must be 1 or 2"),
    ((3, 1, "99"), "line 3, token 1"),
    ((4, 1, "14"), "appears in two claws"),
    ((2, 1, "x"), "line 2"),
])
def test_appendix_errors_point_at_the_token(edit, msg):
    text = serialize_appendix(get_config("lemma-3.10"))
    with pytest.raises(AppendixParseError, match=msg):
        parse_appendix(_corrupt(text, *edit))


def test_appendix_truncated_and_trailing():
    text = serialize_appendix(get_config("lemma-3.10"))
    with pytest.raises(AppendixParseError, match="unexpected end of input"):
        parse_appendix("\n".join(text.splitlines()[:20]))
    with pytest.raises(AppendixParseError, match="trailing"):
        parse_appendix(text + "7 7\n")
    with pytest.raises(AppendixParseError, match="empty"):
        parse_appendix("")


def test_linked_pair_exercises_cross_claw_undetermined_centers():
    from packcolor.configs import _prepare, claw_order
    cfg = linked_pair()
    xm = _prepare(cfg, TIGHT_SPEC, claw_order(cfg)).pair_tables[-1]
    assert any(int(x) for x in xm.ravel())
