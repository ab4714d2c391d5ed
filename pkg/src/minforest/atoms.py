"""Subset algebras generated by tree vertex sets of minimal forests, and their atoms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError
from .graph import WeightedDigraph, trees_and_roots
from .oracle import MinimalForestFamily, census

CLOSURE_SELF_TEST_MAX_N = 8


def tree_vertex_family(family: MinimalForestFamily) -> frozenset[frozenset[int]]:
    """Vertex sets of all trees of all forests in ``family``, deduplicated."""
    if not family:
        raise DomainError(f"no minimal forests with {family.k} trees")
    return frozenset(vs for F in family for _, vs in trees_and_roots(F))


def _signature_classes(universe: frozenset[int], generators: list[frozenset[int]]) -> list[frozenset[int]]:
    classes: dict[tuple, set[int]] = {}
    for v in sorted(universe):
        sig = tuple(v in g for g in generators)
        classes.setdefault(sig, set()).add(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def _closure_atoms(universe: frozenset[int], generators: list[frozenset[int]]) -> list[frozenset[int]]:
    """Atoms found by closing the family under complement and intersection."""
    elements = {universe, frozenset()}
    frontier = set(generators) | {universe - g for g in generators}
    while frontier:
        elements |= frontier
        new = set()
        for a in elements:
            for b in elements:
                c = a & b
                if c not in elements:
                    new.add(c)
            if universe - a not in elements:
                new.add(universe - a)
        frontier = new
    atoms = [
        a for a in elements
        if a and all(not (a & b) or (a & b) == a for b in elements)
    ]
    return sorted(atoms, key=min)


def atoms_of(generators: Iterable[Iterable[int]], universe: Iterable[int]) -> list[frozenset[int]]:
    """Atoms of the algebra generated by ``generators`` on ``universe``.

    Two vertices share an atom iff every generator contains both or neither.
    For small universes the result is cross-checked against an explicit
    closure of the algebra.
    """
    universe = frozenset(universe)
    gens = sorted({frozenset(g) & universe for g in generators}, key=sorted)
    atoms = _signature_classes(universe, gens)
    if len(universe) <= CLOSURE_SELF_TEST_MAX_N:
        assert atoms == _closure_atoms(universe, gens), "atom self-test failed"
    return atoms


@dataclass(frozen=True)
class AtomPartition:
    """Atoms of the level-``k`` algebra with their labeled/unlabeled flags."""

    graph: WeightedDigraph
    k: int
    atoms: tuple  # frozensets, sorted by least vertex
    labeled: tuple  # bools aligned with atoms

    @property
    def labeled_atoms(self) -> list[frozenset[int]]:
        return [a for a, lab in zip(self.atoms, self.labeled) if lab]

    @property
    def unlabeled_atoms(self) -> list[frozenset[int]]:
        return [a for a, lab in zip(self.atoms, self.labeled) if not lab]

    def is_labeled(self, atom: frozenset[int]) -> bool:
        return self.labeled[self.atoms.index(atom)]

    def contains(self, subset: Iterable[int]) -> bool:
        """Membership in the algebra: is ``subset`` a union of atoms?"""
        subset = frozenset(subset)
        return all(a <= subset or not (a & subset) for a in self.atoms)

    def elements(self) -> Iterator[frozenset[int]]:
        """Every element of the algebra (all unions of atoms), including the empty set."""
        for r in range(len(self.atoms) + 1):
            for combo in combinations(self.atoms, r):
                yield frozenset().union(*combo)

    def describe(self) -> str:
        labels = self.graph.label
        return " ".join(
            labels(a) + ("*" if lab else "") for a, lab in zip(self.atoms, self.labeled)
        )


def atom_partition(V: WeightedDigraph, k: int) -> AtomPartition:
    """Atoms of the algebra generated at level ``k``, labeled by root membership."""
    if not 1 <= k <= V.n:
        raise DomainError(f"k must lie in 1..{V.n}, got {k}")
    family = census(V).family(k)
    if not family:
        raise DomainError(f"no spanning forests with {k} trees")
    atoms = atoms_of(tree_vertex_family(family), V.vertices)
    roots = frozenset().union(*(F.roots for F in family))
    labeled = tuple(bool(a & roots) for a in atoms)
    return AtomPartition(V, k, tuple(atoms), labeled)
