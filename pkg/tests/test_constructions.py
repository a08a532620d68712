from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from turanlab.constructions import (
    C4C6,
    AugmentedK2,
    BipC4C6,
    BipC6C8,
    Clique,
    CliqueJoinIndependent,
    ConstructionError,
    Empty,
    Join,
    KBipartite,
    KssC2s2,
    SplitJoin,
    Star,
    build,
    check_construction,
    formula_value,
    matches_augmented_k2,
    matches_complete_bipartite,
    matches_split_join,
    split_join_witness,
    sweep_split_join,
)
from turanlab.counting import (
    Cycle,
    count_complete_bipartite,
    count_cycles,
    has_cycle,
    is_free,
)
from turanlab.graph import is_bipartite, to_graph6


def shuffled(g, seed=0):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def test_build_examples():
    k34 = build(KBipartite(3, 4))
    assert (k34.n, k34.num_edges(), is_bipartite(k34)) == (7, 12, True)
    g = build(AugmentedK2(8))
    assert (g.n, g.num_edges()) == (8, 14)
    assert not has_cycle(g, 6)
    assert count_cycles(g, 4) == 17
    full = build(SplitJoin(10, 3, 0b111, True))
    assert count_complete_bipartite(full, 3, 7) >= 1
    assert not has_cycle(full, 8)
    assert count_complete_bipartite(full, 3, 3) == 35
    assert build(CliqueJoinIndependent(2, 3)) == build(Join(Clique(2), Empty(3)))


def test_labels_are_deterministic():
    assert to_graph6(build(KBipartite(3, 4))) == to_graph6(build(KBipartite(4, 3)))
    star = build(Star(5))
    assert star.degree(0) == 4
    assert to_graph6(build(AugmentedK2(6))) == to_graph6(build(AugmentedK2(6)))


@pytest.mark.parametrize(
    "c",
    [Empty(0), Clique(65), KBipartite(0, 3), KBipartite(40, 30), AugmentedK2(5), SplitJoin(6, 3), SplitJoin(9, 3, 8)],
)
def test_invalid_constructions(c):
    with pytest.raises(ConstructionError):
        build(c)


def test_formula_examples():
    assert formula_value(BipC6C8(6)) == 6
    assert formula_value(C4C6(4)) == 3
    assert formula_value(KssC2s2(12, 3)) == 84
    assert count_complete_bipartite(build(SplitJoin(12, 3)), 3, 3) == 84
    assert formula_value(BipC6C8(4)) == 0


@pytest.mark.parametrize("n", range(4, 65))
def test_complete_bipartite_counts_match_formulas(n):
    assert count_cycles(build(KBipartite(2, n - 2)), 4) == formula_value(BipC4C6(n))
    if n >= 6:
        assert count_cycles(build(KBipartite(3, n - 3)), 6) == formula_value(BipC6C8(n))
        g = build(AugmentedK2(n))
        assert is_free(g, Cycle(6))
        assert count_cycles(g, 4) == formula_value(C4C6(n))


def test_complete_bipartite_matcher():
    assert matches_complete_bipartite(build(KBipartite(2, 5)), 2)
    assert not matches_complete_bipartite(build(KBipartite(2, 5)).with_edge(2, 3), 2)
    assert not matches_complete_bipartite(build(KBipartite(3, 4)), 2)
    assert matches_complete_bipartite(shuffled(build(KBipartite(2, 5))), 2)


def test_augmented_matcher():
    g = build(AugmentedK2(9))
    assert matches_augmented_k2(g)
    assert matches_augmented_k2(shuffled(g, 3))
    k27 = build(KBipartite(2, 7))
    assert not matches_augmented_k2(k27)
    assert not matches_augmented_k2(k27.with_edge(2, 3))


def test_split_join_matcher():
    for mask in range(8):
        for h in (False, True):
            g = build(SplitJoin(11, 3, mask, h))
            assert matches_split_join(g, 3)
            assert matches_split_join(shuffled(g, mask), 3)
    two_edges = build(KBipartite(3, 8)).with_edge(3, 4).with_edge(5, 6)
    assert not matches_split_join(two_edges, 3)
    assert not matches_split_join(build(KBipartite(4, 7)), 3)
    assert split_join_witness(build(KBipartite(3, 8)), 3) == 0b111
    with pytest.raises(ValueError):
        split_join_witness(build(KBipartite(3, 3)), 3)


@given(st.integers(1, 20), st.integers(1, 20))
def test_join_is_complete_across(a, b):
    g = build(Join(Clique(a), Empty(b)))
    assert g.n == a + b
    assert all(g.has_edge(u, v) for u in range(a) for v in range(a, a + b))


@pytest.mark.parametrize("s", [3, 4])
def test_split_join_family(s):
    rows = sweep_split_join(s, range(2 * s + 2, 15))
    assert len(rows) == (15 - 2 * s - 2) * 2 ** (comb(s, 2) + 1)
    for r in rows:
        assert r.cycle_free and r.structure and r.contains_kst
        assert r.kss_count == r.formula
        assert r.passed


def test_split_join_family_s2_deviates_only_with_both_edges():
    # with s = 2 both optional edges close two extra 4-cycles through them
    for r in sweep_split_join(2, range(6, 15)):
        assert r.cycle_free and r.structure and r.contains_kst
        both = r.clique_mask == 1 and r.h_edge
        assert r.kss_count == r.formula + (2 if both else 0)
        assert (r.extra_copy is not None) == both
        assert r.passed


def test_check_construction_verdicts():
    assert check_construction(AugmentedK2(8)) == {"c6_free": True, "c4_count": 17, "formula": 17, "pass": True}
    out = check_construction(SplitJoin(10, 3))
    assert out["contains_K3,7"] and out["c8_free"] and out["k33_count"] == 35 and out["pass"]
    assert check_construction(KBipartite(3, 4))["c6_count"] == 24
    assert check_construction(Star(4)) == {"edges": 3, "pass": True}
