"""Exhaustive ground truth for minimal spanning in-forests.

Every spanning in-forest is enumerated by backtracking over per-vertex
out-arc choices.  The resulting minimum weights and argmin families are the
reference that all constructive routines are compared against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from ._enumerate import in_forest_maps
from .errors import DomainError, ResourceError
from .graph import DEFAULT_MAX_VERTICES, SpanningForest, WeightedDigraph, is_descendant
from .weights import INF, Weight

STRICT = "strict"
EQUAL = "equal"


def _check_size(V: WeightedDigraph, max_n: int) -> None:
    if V.n > max_n:
        raise ResourceError(f"{V.n} vertices exceeds the enumeration cap of {max_n}")


def iter_forests(V: WeightedDigraph, k: Optional[int] = None, *, max_n: int = DEFAULT_MAX_VERTICES) -> Iterator[SpanningForest]:
    """Lazily enumerate spanning in-forests, optionally only those with ``k`` trees."""
    _check_size(V, max_n)
    if k is not None and not 1 <= k <= V.n:
        raise DomainError(f"k must lie in 1..{V.n}, got {k}")
    order = list(range(V.n))
    choices = [V.successors(i) for i in order]
    n_arcs = None if k is None else V.n - k
    for out in in_forest_maps(order, choices, V.n, n_arcs):
        yield SpanningForest._trusted(V, tuple(out))


def enumerate_forests(V: WeightedDigraph, k: int, *, max_n: int = DEFAULT_MAX_VERTICES) -> frozenset[SpanningForest]:
    """All spanning in-forests of ``V`` with exactly ``k`` trees."""
    return frozenset(iter_forests(V, k, max_n=max_n))


@dataclass(frozen=True)
class MinimalForestFamily:
    """The minimal-weight ``k``-tree forests; empty with weight INF if none exist."""

    k: int
    weight: Weight
    forests: frozenset = field(default_factory=frozenset)

    def __iter__(self) -> Iterator[SpanningForest]:
        return iter(sorted(self.forests))

    def __len__(self) -> int:
        return len(self.forests)

    def __contains__(self, F: object) -> bool:
        return F in self.forests

    def __bool__(self) -> bool:
        return bool(self.forests)


@dataclass(frozen=True)
class PhiTable:
    """Minimal forest weights ``phi[k]`` for ``k = 0..N`` and the convexity signs.

    ``signs[k]`` for ``k = 1..N-1`` compares ``phi[k-1] - phi[k]`` with
    ``phi[k] - phi[k+1]``: ``"strict"``, ``"equal"``, or ``None`` when
    ``phi[k]`` is infinite.
    """

    phi: tuple
    signs: dict

    @property
    def n(self) -> int:
        return len(self.phi) - 1

    def gap(self, k: int) -> Weight:
        """``phi[k-1] - phi[k]``; infinite when ``phi[k-1]`` is."""
        return self.phi[k - 1] - self.phi[k]

    def is_strict(self, k: int) -> bool:
        return self.signs.get(k) == STRICT

    def is_equal(self, k: int) -> bool:
        return self.signs.get(k) == EQUAL

    def convex(self) -> bool:
        """Whether every defined sign satisfies the convexity inequality."""
        for k in range(1, self.n):
            if self.phi[k] is INF:
                continue
            if self.gap(k) < self.gap(k + 1):
                return False
        return True


def _signs(phi: tuple) -> dict:
    n = len(phi) - 1
    signs: dict = {}
    for k in range(1, n):
        if phi[k] is INF or phi[k + 1] is INF:
            signs[k] = None
            continue
        left = phi[k - 1] - phi[k]
        right = phi[k] - phi[k + 1]
        if left is INF or left > right:
            signs[k] = STRICT
        elif left == right:
            signs[k] = EQUAL
        else:
            # convexity violated; kept visible rather than hidden
            signs[k] = "violated"
    return signs


@dataclass(frozen=True)
class Census:
    """Per-``k`` minimum, argmin set and full weight spectrum of a graph."""

    graph: WeightedDigraph
    families: tuple  # index k = 0..N, entry 0 is the empty family
    spectra: tuple  # index k: Counter weight -> multiplicity
    table: PhiTable

    def family(self, k: int) -> MinimalForestFamily:
        if not 0 <= k <= self.graph.n:
            raise DomainError(f"k must lie in 0..{self.graph.n}, got {k}")
        return self.families[k]

    def count(self, k: int) -> int:
        return sum(self.spectra[k].values())


@lru_cache(maxsize=512)
def census(V: WeightedDigraph, max_n: int = DEFAULT_MAX_VERTICES) -> Census:
    """Enumerate all spanning forests once and summarise them per tree count."""
    n = V.n
    best: list = [INF] * (n + 1)
    argmin: list = [[] for _ in range(n + 1)]
    spectra = [Counter() for _ in range(n + 1)]
    for F in iter_forests(V, max_n=max_n):
        k = F.n_trees
        w = F.weight
        spectra[k][w] += 1
        if w < best[k]:
            best[k] = w
            argmin[k] = [F]
        elif w == best[k]:
            argmin[k].append(F)
    families = tuple(
        MinimalForestFamily(k, best[k], frozenset(argmin[k])) for k in range(n + 1)
    )
    phi = tuple(best)
    return Census(V, families, tuple(spectra), PhiTable(phi, _signs(phi)))


def minimal_forests(V: WeightedDigraph, k: int, *, max_n: int = DEFAULT_MAX_VERTICES) -> MinimalForestFamily:
    if not 1 <= k <= V.n:
        raise DomainError(f"k must lie in 1..{V.n}, got {k}")
    return census(V, max_n).family(k)


def phi_table(V: WeightedDigraph, *, max_n: int = DEFAULT_MAX_VERTICES) -> PhiTable:
    return census(V, max_n).table


def _require_minimal(F: SpanningForest) -> int:
    k = F.n_trees
    if F not in census(F.graph).family(k):
        raise DomainError(f"{F.describe()} is not a minimal {k}-tree forest")
    return k


def ancestors_of(R: SpanningForest) -> frozenset[SpanningForest]:
    """Minimal forests with one more tree of which ``R`` is a descendant."""
    k = _require_minimal(R)
    if k == R.graph.n:
        raise DomainError("a forest with N trees has no ancestors")
    upper = census(R.graph).family(k + 1)
    return frozenset(F for F in upper.forests if is_descendant(F, R))


def descendants_of(F: SpanningForest) -> frozenset[SpanningForest]:
    """Minimal forests with one fewer tree that descend from ``F``."""
    k = _require_minimal(F)
    if k == 1:
        raise DomainError("a spanning tree has no descendants")
    lower = census(F.graph).family(k - 1)
    return frozenset(R for R in lower.forests if is_descendant(F, R))


def weight_spectrum(V: WeightedDigraph, k: int) -> Counter:
    """Multiset of weights of all ``k``-tree forests."""
    return Counter(census(V).spectra[k])

