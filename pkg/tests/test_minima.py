from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import digraphs
from minforest.errors import DomainError
from minforest.graph import WeightedDigraph, restriction
from minforest.minima import exit_root, lambda_bullet, lambda_circ, lambda_circ_formula, tree_minima
from minforest.weights import INF


def _acyclic(out):
    for start in out:
        seen, v = set(), start
        while v in out and out[v] is not None:
            if v in seen:
                return False
            seen.add(v)
            v = out[v]
    return True


def brute_minima(V, D):
    """(lambda_bullet, bullet arc sets, lambda_circ, circ arc sets) by product search."""
    order = sorted(D)
    best_b, trees_b = INF, set()
    for tgt in product(*[(None,) + tuple(j for j in V.successors(i) if j in D) for i in order]):
        out = dict(zip(order, tgt))
        if sum(1 for t in tgt if t is None) != 1 or not _acyclic(out):
            continue
        w = sum((V.weight(i, j) for i, j in out.items() if j is not None), Fraction(0))
        arcs = frozenset((i, j) for i, j in out.items() if j is not None)
        if w < best_b:
            best_b, trees_b = w, {arcs}
        elif w == best_b:
            trees_b.add(arcs)
    best_c, trees_c = INF, set()
    for tgt in product(*[V.successors(i) for i in order]):
        out = dict(zip(order, tgt))
        if sum(1 for t in tgt if t not in D) != 1 or not _acyclic(out):
            continue
        w = sum((V.weight(i, j) for i, j in out.items()), Fraction(0))
        arcs = frozenset(out.items())
        if w < best_c:
            best_c, trees_c = w, {arcs}
        elif w == best_c:
            trees_c.add(arcs)
    return best_b, trees_b, best_c, trees_c


def _arcsets(ts):
    return {frozenset(T.arcs) for T in ts}


def _names(V, T):
    return {(V.names[i], V.names[j]) for i, j in T.arcs}


@pytest.mark.parametrize(
    "subset,value,arcs",
    [
        (["b"], 1, {("b", "a")}),
        (["a", "b"], 3, {("a", "c"), ("b", "a")}),
        (["a", "b", "c"], 7, {("a", "c"), ("b", "d"), ("c", "b")}),
    ],
)
def test_example_hanging_trees(ex1, subset, value, arcs):
    w, trees = lambda_circ(ex1, subset)
    assert w == value
    assert [_names(ex1, T) for T in trees] == [arcs]
    assert lambda_circ_formula(ex1, subset) == value


def test_singleton_bullet_is_empty_tree(ex1):
    rec = lambda_bullet(ex1, ["c"])
    assert rec.lambda_bullet == 0
    assert [T.arcs for T in rec.bullet_trees] == [()]


def test_p5_hanging_tree(p5):
    w, trees = lambda_circ(p5, ["L", "L'"])
    assert w == 3
    assert [_names(p5, T) for T in trees] == [{("L", "L'"), ("L'", "J")}]


def test_whole_set_has_no_hanging_tree(ex1):
    with pytest.raises(DomainError):
        lambda_circ(ex1, ["a", "b", "c", "d"])
    with pytest.raises(DomainError):
        lambda_circ_formula(ex1, ex1.vertices)
    with pytest.raises(DomainError):
        tree_minima(ex1, [])


def test_unreachable_subset_is_infinite():
    V = WeightedDigraph(["a", "b", "c"], [(0, 1, 1)])
    rec = tree_minima(V, [2])
    assert rec.lambda_bullet == 0 and rec.lambda_circ is INF and not rec.circ_trees
    assert tree_minima(V, [0, 2]).lambda_bullet is INF


@given(data=st.data(), V=digraphs(min_n=2, max_n=5))
def test_minima_against_product_search(data, V):
    D = frozenset(data.draw(st.sets(st.integers(0, V.n - 1), min_size=1, max_size=V.n - 1)))
    rec = tree_minima(V, D)
    lb, tb, lc, tc = brute_minima(V, D)
    assert rec.lambda_bullet == lb and _arcsets(rec.bullet_trees) == tb
    assert rec.lambda_circ == lc and _arcsets(rec.circ_trees) == tc
    assert lambda_circ_formula(V, D) == lc


@given(data=st.data(), V=digraphs(min_n=2, max_n=5))
def test_hanging_tree_shape(data, V):
    D = frozenset(data.draw(st.sets(st.integers(0, V.n - 1), min_size=1, max_size=V.n - 1)))
    rec = tree_minima(V, D)
    for T in rec.circ_trees:
        q = exit_root(T, D)
        inner = restriction(T, D)
        assert inner.is_tree() and inner.root == q
        assert T.weight == rec.lambda_bullet_at(q) + V.weight(q, T.root)
