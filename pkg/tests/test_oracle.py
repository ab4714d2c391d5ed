import pytest
from hypothesis import given

from conftest import brute_forests, brute_phi, digraphs
from minforest.errors import DomainError, ResourceError
from minforest.graph import SpanningForest, WeightedDigraph
from minforest.io import load_fixture
from minforest.oracle import (
    EQUAL,
    STRICT,
    ancestors_of,
    census,
    descendants_of,
    enumerate_forests,
    iter_forests,
    minimal_forests,
    phi_table,
    weight_spectrum,
)
from minforest.weights import INF


def test_example_graph_values(ex1):
    t = phi_table(ex1)
    assert t.phi == (INF, 7, 3, 1, 0)
    assert all(t.signs[k] == STRICT for k in (1, 2, 3))
    for k in range(1, 5):
        assert len(minimal_forests(ex1, k)) == 1
    # frozen from the brute-force oracle
    assert [len(enumerate_forests(ex1, k)) for k in range(1, 5)] == [1, 5, 4, 1]


@pytest.mark.parametrize(
    "name,phi,signs,sizes",
    [
        ("paper_p5", (6, 3, 1, 0), (STRICT, STRICT, STRICT), (3, 2, 1, 1)),
        ("fig2", (6, 3, 1, 0), (STRICT, STRICT, STRICT), (2, 2, 1, 1)),
        ("fig_eq", (5, 3, 1, 0), (STRICT, EQUAL, STRICT), (1, 2, 1, 1)),
        ("fig_p5eq", (5, 3, 1, 0), (STRICT, EQUAL, STRICT), (1, 3, 1, 1)),
        ("fig_p52", (5, 3, 1, 0), (STRICT, EQUAL, STRICT), (3, 5, 2, 1)),
    ],
)
def test_fixture_tables(name, phi, signs, sizes):
    V = load_fixture(name)
    t = phi_table(V)
    assert t.phi[1:] == phi
    assert tuple(t.signs[k] for k in (1, 2, 3)) == signs
    assert tuple(len(minimal_forests(V, k)) for k in range(1, 5)) == sizes
    best = brute_phi(V)
    for k in range(1, 5):
        assert best[k][0] == phi[k - 1]
        assert {F.out for F in minimal_forests(V, k)} == best[k][1]


def test_p5_minimal_trees(p5):
    got = {F.describe() for F in minimal_forests(p5, 2)}
    assert got == {"{L->L', L'->J}", "{J->L', L->L'}"}


def test_single_vertex():
    V = WeightedDigraph(["x"])
    assert phi_table(V).phi == (INF, 0)


def test_size_cap_and_range(ex1):
    with pytest.raises(ResourceError):
        list(iter_forests(ex1, max_n=3))
    with pytest.raises(DomainError):
        minimal_forests(ex1, 0)
    with pytest.raises(DomainError):
        minimal_forests(ex1, 5)


def test_sparse_graph_has_empty_levels():
    V = WeightedDigraph(["a", "b", "c"], [(0, 1, 1)])
    t = phi_table(V)
    assert t.phi == (INF, INF, 1, 0)
    assert not minimal_forests(V, 1)


def test_relatives_on_example(ex1):
    (F3,) = minimal_forests(ex1, 3)
    (F2,) = minimal_forests(ex1, 2)
    assert descendants_of(F3) == {F2}
    assert ancestors_of(F2) == {F3}
    with pytest.raises(DomainError):
        descendants_of(next(iter(minimal_forests(ex1, 1))))
    with pytest.raises(DomainError):
        ancestors_of(next(iter(minimal_forests(ex1, 4))))
    not_min = SpanningForest.from_arcs(ex1, [("a", "c")])
    with pytest.raises(DomainError):
        descendants_of(not_min)


@given(digraphs(max_n=5))
def test_matches_brute_force(V):
    best = brute_phi(V)
    t = phi_table(V)
    for k in range(1, V.n + 1):
        if k in best:
            assert t.phi[k] == best[k][0]
            assert {F.out for F in minimal_forests(V, k)} == best[k][1]
        else:
            assert t.phi[k] is INF and not minimal_forests(V, k)
    assert sum(census(V).count(k) for k in range(V.n + 1)) == sum(1 for _ in brute_forests(V))


@given(digraphs(max_n=5))
def test_convexity_and_monotonicity(V):
    t = phi_table(V)
    assert t.convex()
    assert "violated" not in t.signs.values()
    finite = [t.phi[k] for k in range(1, V.n + 1) if t.phi[k] is not INF]
    assert finite == sorted(finite, reverse=True)


@given(digraphs(max_n=5))
def test_every_minimal_forest_has_minimal_relatives(V):
    cen = census(V)
    for k in range(2, V.n + 1):
        if not cen.family(k - 1):
            continue
        for F in cen.family(k):
            assert descendants_of(F)
        for R in cen.family(k - 1):
            assert ancestors_of(R)


@given(digraphs(max_n=5))
def test_spectrum_minimum_is_phi(V):
    t = phi_table(V)
    for k in range(1, V.n + 1):
        spec = weight_spectrum(V, k)
        assert min(spec, default=INF) == t.phi[k]
