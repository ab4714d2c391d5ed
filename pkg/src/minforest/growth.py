"""Constructing minimal forests from minimal trees on atoms.

When the convexity inequality is strict at level ``k``, the minimal
``k``-tree forests are exactly the acyclic unions of one minimal spanning
tree per labeled atom and one minimal hanging tree per unlabeled atom
(:func:`assemble_level_k`).  The minimal ``(k-1)``-tree forests arise from
those by replacing the out-arcs on one labeled atom with a minimal hanging
tree of that atom (:func:`descend`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterable, Optional

from .atoms import AtomPartition, atom_partition
from .errors import DomainError, ResourceError
from .graph import (
    SpanningForest,
    SubForest,
    WeightedDigraph,
    _has_cycle,
    arc_replace,
    out_neighborhood,
    outgoing_restriction,
)
from .minima import tree_minima
from .oracle import MinimalForestFamily, PhiTable, census
from .weights import INF

MAX_CANDIDATES = 10**6

ALWAYS = "always_outgoing"
NEVER = "never_outgoing"
MIXED = "mixed"


class OracleFallbackWarning(UserWarning):
    """Assembly was requested where atom trees do not determine the family."""


@dataclass(frozen=True)
class AtomTreeCatalog:
    """Atoms at level ``k`` with the minimal trees a construction may draw on.

    ``bullet[Z]`` holds the minimal spanning trees of each labeled atom,
    ``circ[Y]`` the minimal hanging trees of every atom (empty when the atom
    is the whole vertex set).
    """

    graph: WeightedDigraph
    partition: AtomPartition
    table: PhiTable
    bullet: dict
    circ: dict

    @property
    def k(self) -> int:
        return self.partition.k

    @property
    def admissible(self) -> bool:
        """Strict convexity at ``k``; the top level ``k = N`` is trivially admissible."""
        k = self.k
        return k == self.graph.n or self.table.is_strict(k)


def build_catalog(V: WeightedDigraph, k: int) -> AtomTreeCatalog:
    partition = atom_partition(V, k)
    bullet, circ = {}, {}
    for atom, lab in zip(partition.atoms, partition.labeled):
        rec = tree_minima(V, atom)
        if lab:
            bullet[atom] = rec.bullet_trees
        circ[atom] = rec.circ_trees
    return AtomTreeCatalog(V, partition, census(V).table, bullet, circ)


def _family(k: int, forests: Iterable[SpanningForest]) -> MinimalForestFamily:
    forests = frozenset(forests)
    weight = min((F.weight for F in forests), default=INF)
    return MinimalForestFamily(k, weight, forests)


def assemble_level_k(catalog: AtomTreeCatalog, *, fallback: bool = False) -> MinimalForestFamily:
    """All minimal ``k``-tree forests, built from per-atom minimal trees.

    Outside the strict regime atom trees do not determine the family; with
    ``fallback=True`` the oracle family is returned and an
    :class:`OracleFallbackWarning` is emitted, otherwise :class:`DomainError`.
    """
    V, k = catalog.graph, catalog.k
    if not catalog.admissible:
        if not fallback:
            raise DomainError(f"convexity is not strict at k={k}; assembly undefined")
        warnings.warn(
            f"k={k} is not in the strict regime; returning the enumerated family",
            OracleFallbackWarning,
            stacklevel=2,
        )
        return census(V).family(k)
    part = catalog.partition
    pools = [
        sorted(catalog.bullet[a] if lab else catalog.circ[a], key=SubForest.sort_key)
        for a, lab in zip(part.atoms, part.labeled)
    ]
    if prod(len(p) for p in pools) > MAX_CANDIDATES:
        raise ResourceError(f"more than {MAX_CANDIDATES} atom-tree combinations")
    found = []
    for combo in product(*pools):
        out: list = [None] * V.n
        for T in combo:
            for i, j in T.arcs:
                out[i] = j
        arcs = {i: j for i, j in enumerate(out) if j is not None}
        if _has_cycle(arcs) or V.n - len(arcs) != k:
            continue
        found.append(SpanningForest._trusted(V, tuple(out)))
    return _family(k, found)


def descend(catalog: AtomTreeCatalog, family: MinimalForestFamily) -> MinimalForestFamily:
    """Minimal ``(k-1)``-tree forests from the minimal ``k``-tree family.

    Every forest of the family has its out-arcs on one labeled atom replaced
    by a minimal hanging tree of that atom; valid ``(k-1)``-tree results of
    least weight are kept.
    """
    k = catalog.k
    if family.k != k:
        raise DomainError(f"family has {family.k} trees, catalog is for k={k}")
    if not catalog.admissible:
        raise DomainError(f"convexity is not strict at k={k}; descent undefined")
    pools = [(Z, sorted(catalog.circ[Z], key=SubForest.sort_key)) for Z in catalog.partition.labeled_atoms]
    total = len(family) * sum(len(p) for _, p in pools)
    if total > MAX_CANDIDATES:
        raise ResourceError(f"more than {MAX_CANDIDATES} descent candidates")
    found = set()
    for P in family:
        for Z, trees in pools:
            for T in trees:
                cand = arc_replace(P, T, Z)
                if cand.is_forest and cand.n_trees == k - 1:
                    found.add(cand.forest)
    if not found:
        raise DomainError(f"no spanning forests with {k - 1} trees are reachable")
    best = min(F.weight for F in found)
    return _family(k - 1, (F for F in found if F.weight == best))


@dataclass(frozen=True)
class AtomRegime:
    """How a labeled atom's out-arcs behave across a target minimal family.

    ``convexity_check`` is set when the atom has an out-arc in every forest
    one level down; it records whether the following convexity inequality
    is strict, as that case requires.
    """

    atom: frozenset
    regime: str
    level: int
    convexity_check: Optional[bool] = None


def regime_of(family: MinimalForestFamily, Z: Iterable[int]) -> str:
    Z = frozenset(Z)
    flags = [bool(out_neighborhood(F, Z)) for F in family]
    if flags and all(flags):
        return ALWAYS
    if not any(flags):
        return NEVER
    return MIXED


def classify_regimes(V: WeightedDigraph, k: int, l: int) -> list[AtomRegime]:
    """Regime of every labeled atom at level ``k`` with respect to the level-``l`` family."""
    part = atom_partition(V, k)
    cen = census(V)
    target = cen.family(l)
    if not target:
        raise DomainError(f"no minimal forests with {l} trees")
    table = cen.table
    result = []
    for Z in part.labeled_atoms:
        regime = regime_of(target, Z)
        check = None
        if regime == ALWAYS and l == k - 1 and table.is_strict(k):
            check = table.is_strict(k - 1)
        result.append(AtomRegime(Z, regime, l, check))
    return result


def restriction_set(family: Iterable[SpanningForest], D: Iterable[int]) -> frozenset[SubForest]:
    """Distinct outgoing restrictions of the family's forests to ``D``."""
    D = frozenset(D)
    return frozenset(outgoing_restriction(F, D) for F in family)


def split_by_exit(family: Iterable[SpanningForest], Z: Iterable[int]) -> tuple[list, list]:
    """Partition forests into those with an arc leaving ``Z`` and those without."""
    Z = frozenset(Z)
    leaving, staying = [], []
    for F in family:
        (leaving if out_neighborhood(F, Z) else staying).append(F)
    return leaving, staying
