"""Shared strategies and an independent brute-force oracle.

The brute force below walks ``itertools.product`` over every out-map and
checks acyclicity by pointer chasing.  It shares no code with the package's
backtracking enumerator, so agreement between the two is meaningful.
"""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from minforest.graph import WeightedDigraph
from minforest.io import load_fixture

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def brute_forests(V):
    """All spanning in-forests of V as (out tuple, weight)."""
    choices = [(None,) + V.successors(i) for i in range(V.n)]
    for out in product(*choices):
        ok = True
        for start in range(V.n):
            seen, v = set(), start
            while out[v] is not None:
                if v in seen:
                    ok = False
                    break
                seen.add(v)
                v = out[v]
            if not ok:
                break
        if ok:
            w = sum((V.weight(i, j) for i, j in enumerate(out) if j is not None), Fraction(0))
            yield out, w


def brute_phi(V):
    """phi[1..N] and argmin out-map sets, None for empty levels."""
    best = {}
    for out, w in brute_forests(V):
        k = sum(1 for j in out if j is None)
        if k not in best or w < best[k][0]:
            best[k] = (w, {out})
        elif w == best[k][0]:
            best[k][1].add(out)
    return best


@st.composite
def digraphs(draw, min_n=1, max_n=5, max_w=4, density=None):
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            present = draw(st.booleans()) if density is None else draw(st.floats(0, 1)) < density
            if present:
                arcs.append((i, j, draw(st.integers(1, max_w))))
    return WeightedDigraph([f"v{i}" for i in range(n)], arcs)


@pytest.fixture
def ex1():
    return load_fixture("paper_ex1")


@pytest.fixture
def p5():
    return load_fixture("paper_p5")
