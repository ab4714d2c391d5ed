import pytest
from hypothesis import given, strategies as st

from conftest import digraphs
from minforest.atoms import _closure_atoms, atom_partition, atoms_of, tree_vertex_family
from minforest.errors import DomainError
from minforest.graph import WeightedDigraph
from minforest.io import load_fixture
from minforest.oracle import census, minimal_forests


def _labels(V, part):
    return [(V.label(a), lab) for a, lab in zip(part.atoms, part.labeled)]


def test_example_atoms(ex1):
    part = atom_partition(ex1, 3)
    assert _labels(ex1, part) == [("{a,b}", True), ("{c}", True), ("{d}", True)]
    assert part.describe() == "{a,b}* {c}* {d}*"
    assert part.contains(ex1.vset(["a", "b", "d"]))
    assert not part.contains(ex1.vset(["a"]))
    assert len(list(part.elements())) == 8


def test_p5_labeled_atoms(p5):
    part = atom_partition(p5, 3)
    assert [p5.label(a) for a in part.labeled_atoms] == ["{I}", "{J}", "{L,L'}"]
    assert part.unlabeled_atoms == []


def test_fig_eq_unlabeled_under_equality():
    V = load_fixture("fig_eq")
    assert atom_partition(V, 2).atoms == atom_partition(V, 3).atoms


def test_empty_family_rejected():
    V = WeightedDigraph(["a", "b"], [])
    with pytest.raises(DomainError):
        atom_partition(V, 1)
    with pytest.raises(DomainError):
        tree_vertex_family(minimal_forests(V, 1))


@given(st.lists(st.sets(st.integers(0, 6)), max_size=6))
def test_signature_atoms_match_closure(gens):
    universe = frozenset(range(7))
    gens = [frozenset(g) for g in gens]
    assert atoms_of(gens, universe) == _closure_atoms(universe, sorted(set(gens), key=sorted))


@given(digraphs(max_n=5))
def test_atoms_partition_and_refine(V):
    cen = census(V)
    levels = [k for k in range(1, V.n + 1) if cen.family(k)]
    for k in levels:
        part = atom_partition(V, k)
        assert sorted(i for a in part.atoms for i in a) == list(range(V.n))
        for F in cen.family(k):
            for r in F.roots:
                assert part.contains(F.subtree(r).vertices)
        if k + 1 in levels:
            finer = atom_partition(V, k + 1)
            assert all(finer.contains(a) for a in part.atoms)
    if cen.family(1):
        assert atom_partition(V, 1).atoms == (V.vertices,)
