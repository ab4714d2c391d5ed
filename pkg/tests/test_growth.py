import pytest
from hypothesis import given

from conftest import digraphs
from minforest.errors import DomainError
from minforest.growth import (
    ALWAYS,
    MIXED,
    NEVER,
    OracleFallbackWarning,
    assemble_level_k,
    build_catalog,
    classify_regimes,
    descend,
    restriction_set,
    split_by_exit,
)
from minforest.io import load_fixture
from minforest.minima import tree_minima
from minforest.oracle import census


def test_p5_assemble_and_descend(p5):
    cat = build_catalog(p5, 3)
    top = assemble_level_k(cat)
    assert [F.describe() for F in top] == ["{L->L'}"]
    down = descend(cat, top)
    assert {F.describe() for F in down} == {"{L->L', L'->J}", "{J->L', L->L'}"}
    assert down.weight == 3


def test_p5_regimes(p5):
    regs = classify_regimes(p5, 3, 1)
    assert all(r.regime != ALWAYS for r in regs)
    by_atom = {p5.label(r.atom): r.regime for r in regs}
    assert by_atom["{L,L'}"] == MIXED


def test_fig2_fixture_mixed_on_z():
    V = load_fixture("fig2")
    regs = {V.label(r.atom): r.regime for r in classify_regimes(V, 3, 1)}
    assert regs["{L,L'}"] == MIXED


def test_fig_p5eq_always_left_and_missing_tree():
    V = load_fixture("fig_p5eq")
    Z = V.vset(["Z"])
    regs = {V.label(r.atom): r for r in classify_regimes(V, 3, 1)}
    assert regs["{Z}"].regime == ALWAYS
    fam = census(V).family(1)
    leaving, staying = split_by_exit(fam, Z)
    assert not staying
    circ = tree_minima(V, Z).circ_trees
    assert restriction_set(fam, Z) < circ


def test_fig_p52_leaving_part_equals_hanging_trees():
    V = load_fixture("fig_p52")
    Z = V.vset(["L", "L'"])
    fam = census(V).family(1)
    leaving, _ = split_by_exit(fam, Z)
    assert restriction_set(leaving, Z) == tree_minima(V, Z).circ_trees
    regs = {V.label(r.atom): r.regime for r in classify_regimes(V, 3, 1)}
    assert regs["{L,L'}"] == MIXED


def test_always_regime_records_next_sign(ex1):
    for r in classify_regimes(ex1, 3, 2):
        if r.regime == ALWAYS:
            assert r.convexity_check is True
        else:
            assert r.convexity_check is None


def test_assemble_outside_strict_regime():
    V = load_fixture("fig_eq")
    cat = build_catalog(V, 2)
    assert not cat.admissible
    with pytest.raises(DomainError):
        assemble_level_k(cat)
    with pytest.warns(OracleFallbackWarning):
        fam = assemble_level_k(cat, fallback=True)
    assert fam == census(V).family(2)
    with pytest.raises(DomainError):
        descend(cat, census(V).family(2))


def test_descend_rejects_wrong_level(p5):
    with pytest.raises(DomainError):
        descend(build_catalog(p5, 3), census(p5).family(2))


@given(digraphs(max_n=5))
def test_constructions_match_oracle(V):
    cen = census(V)
    for k in range(1, V.n + 1):
        if not cen.family(k):
            continue
        cat = build_catalog(V, k)
        if not cat.admissible:
            continue
        fam = assemble_level_k(cat)
        assert fam.forests == cen.family(k).forests
        if k > 1 and cen.family(k - 1):
            assert descend(cat, fam).forests == cen.family(k - 1).forests


@given(digraphs(max_n=5))
def test_regimes_partition_labeled_atoms(V):
    cen = census(V)
    for k in range(2, V.n + 1):
        if not cen.family(k) or not cen.family(k - 1):
            continue
        for r in classify_regimes(V, k, k - 1):
            leaving, staying = split_by_exit(cen.family(k - 1), r.atom)
            expected = ALWAYS if not staying else NEVER if not leaving else MIXED
            assert r.regime == expected
