import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import digraphs
from minforest.errors import DomainError
from minforest.graph import WeightedDigraph
from minforest.markov import (
    IllConditionedWarning,
    coefficient_profile,
    dominant_grouping,
    epsilon_family,
    forest_polynomial,
    verify_matrix_forest,
)
from minforest.oracle import census
from minforest.weights import INF


def test_laplacian_rows(ex1):
    fam = epsilon_family(ex1, 0.5)
    L = fam.laplacian
    assert np.allclose(L.sum(axis=1), 0.0)
    assert L[1, 0] == -math.exp(-2.0)
    assert L[0, 1] == 0.0


@pytest.mark.parametrize("eps", [0.05, 0.02, 0.01])
def test_example_exponents_within_forest_count_bound(ex1, eps):
    prof = coefficient_profile(ex1, eps)
    for l in range(5):
        assert prof.within_bound(l)
    assert prof.row(0).n_forests == 0 and math.isinf(prof.row(0).exponent)


def test_example_limit(ex1):
    assert abs(coefficient_profile(ex1, 1e-4).row(3).exponent - 1.0) < 1e-12
    # frozen from the exact finite sum: c_3 = e^{-1/eps} + 2e^{-2/eps} + e^{-3/eps}
    eps = 0.5
    c3 = math.exp(-2) + 2 * math.exp(-4) + math.exp(-6)
    assert coefficient_profile(ex1, eps).row(3).log_c == pytest.approx(math.log(c3), rel=1e-14)


def test_tiny_eps_does_not_underflow(ex1):
    prof = coefficient_profile(ex1, 1e-6)
    assert prof.row(1).exponent == 7.0
    assert math.isfinite(prof.row(1).log_c)


def test_matrix_forest_examples(ex1):
    assert verify_matrix_forest(ex1, 1.0, (0.5, 1.0, 2.0)) <= 1e-9
    single = WeightedDigraph(["x"])
    assert forest_polynomial(single, 1.0) == [0.0, 1.0]
    assert verify_matrix_forest(single) <= 1e-12
    K3 = WeightedDigraph(list("abc"), [(i, j, 1) for i in range(3) for j in range(3) if i != j])
    assert verify_matrix_forest(K3) <= 1e-9


def test_underflow_is_flagged(ex1):
    with pytest.warns(IllConditionedWarning):
        verify_matrix_forest(ex1, 0.001)


def test_bad_epsilon(ex1):
    for eps in (0, -1, float("inf")):
        with pytest.raises(DomainError):
            coefficient_profile(ex1, eps)


@given(V=digraphs(max_n=5), eps=st.sampled_from([1.0, 0.3, 0.05, 0.01]))
def test_profile_bound(V, eps):
    prof = coefficient_profile(V, eps)
    for l in range(V.n + 1):
        assert prof.within_bound(l)
        r = prof.row(l)
        assert (r.n_forests == 0) == (r.phi is INF)


@given(digraphs(max_n=5))
def test_matrix_forest_identity(V):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        assert verify_matrix_forest(V, 1.0, (0.5, 1.0, 2.0, 3.0)) <= 1e-9


@given(digraphs(max_n=5))
def test_exponents_tighten_as_eps_shrinks(V):
    a, b = coefficient_profile(V, 0.1), coefficient_profile(V, 0.01)
    for l in range(V.n + 1):
        if a.row(l).n_forests:
            assert b.row(l).slack <= a.row(l).slack + 1e-12


@given(digraphs(max_n=5))
def test_dominant_terms_group_into_minimal_trees(V):
    cen = census(V)
    for l in range(1, V.n + 1):
        if not cen.family(l):
            continue
        if l < V.n and not cen.table.is_strict(l):
            continue
        for groups in dominant_grouping(V, l):
            assert all(g.in_minimal for g in groups)
