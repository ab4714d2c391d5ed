"""Minimal trees on vertex subsets.

For a subset ``D`` this computes, by exhaustive enumeration,

* ``lambda_bullet_q``: the least weight of a tree spanning exactly ``D``
  rooted at ``q``, with all minimizers;
* ``lambda_bullet``: the least of those over ``q``;
* ``lambda_circ``: the least weight of a tree on ``D`` plus one exterior
  vertex ``r`` whose part on ``D`` is a tree and whose single arc leaving
  ``D`` starts at that tree's root.

``lambda_circ_formula`` evaluates the same minimum from the per-root values
and the cheapest exterior arc, and serves as a differential check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from ._enumerate import in_forest_maps
from .errors import DomainError, ResourceError
from .graph import SubForest, Vertex, WeightedDigraph
from .weights import INF, Weight

MAX_MINIMIZERS = 10**6


@dataclass(frozen=True)
class TreeMinimaRecord:
    subset: frozenset
    per_root: dict  # q -> (weight, frozenset of SubForest)
    lambda_bullet: Weight
    bullet_trees: frozenset
    # None when the subset is the whole vertex set
    lambda_circ: Optional[Weight]
    circ_trees: frozenset

    def lambda_bullet_at(self, q: int) -> Weight:
        return self.per_root[q][0]

    def bullet_trees_at(self, q: int) -> frozenset:
        return self.per_root[q][1]


def _argmin(candidates: Iterable[SubForest]) -> tuple[Weight, list[SubForest]]:
    best: Weight = INF
    keep: list[SubForest] = []
    for T in candidates:
        w = T.weight
        if w < best:
            best, keep = w, [T]
        elif w == best:
            keep.append(T)
            if len(keep) > MAX_MINIMIZERS:
                raise ResourceError(f"more than {MAX_MINIMIZERS} minimal trees")
    return best, keep


def _trees_on(V: WeightedDigraph, D: frozenset) -> Iterable[SubForest]:
    order = sorted(D)
    choices = [[j for j in V.successors(i) if j in D] for i in order]
    for out in in_forest_maps(order, choices, V.n, len(D) - 1):
        yield SubForest(V, D, [(i, out[i]) for i in order if out[i] is not None])


def _circ_trees_on(V: WeightedDigraph, D: frozenset) -> Iterable[SubForest]:
    order = sorted(D)
    for r in sorted(V.vertices - D):
        allowed = D | {r}
        choices = [[j for j in V.successors(i) if j in allowed] for i in order]
        for out in in_forest_maps(order, choices, V.n, len(D)):
            arcs = [(i, out[i]) for i in order]
            if sum(1 for _, j in arcs if j == r) == 1:
                yield SubForest(V, allowed, arcs)


def _resolve(V: WeightedDigraph, D: Iterable[Vertex]) -> frozenset:
    D = V.vset(D)
    if not D:
        raise DomainError("the vertex subset must be non-empty")
    return D


@lru_cache(maxsize=4096)
def _record(V: WeightedDigraph, D: frozenset) -> TreeMinimaRecord:
    by_root: dict[int, list[SubForest]] = {q: [] for q in sorted(D)}
    for T in _trees_on(V, D):
        by_root[T.root].append(T)
    per_root = {}
    for q, trees in by_root.items():
        w, keep = _argmin(trees)
        per_root[q] = (w, frozenset(keep))
    lam = min((w for w, _ in per_root.values()), default=INF)
    bullet = frozenset(
        T for w, trees in per_root.values() if w == lam and w is not INF for T in trees
    )
    if D == V.vertices:
        circ_w, circ = None, frozenset()
    else:
        circ_w, keep = _argmin(_circ_trees_on(V, D))
        circ = frozenset(keep)
    return TreeMinimaRecord(D, per_root, lam, bullet, circ_w, circ)


def tree_minima(V: WeightedDigraph, D: Iterable[Vertex]) -> TreeMinimaRecord:
    """Full record of tree minima and minimizer sets on ``D``."""
    return _record(V, _resolve(V, D))


def lambda_bullet(V: WeightedDigraph, D: Iterable[Vertex]) -> TreeMinimaRecord:
    """Per-root and overall minimal spanning trees of the subgraph induced by ``D``."""
    return tree_minima(V, D)


def lambda_circ(V: WeightedDigraph, D: Iterable[Vertex]) -> tuple[Weight, frozenset]:
    """Least weight over trees hanging ``D`` off one exterior vertex, with minimizers."""
    D = _resolve(V, D)
    if D == V.vertices:
        raise DomainError("lambda_circ needs a proper subset: no exterior vertex exists")
    rec = _record(V, D)
    return rec.lambda_circ, rec.circ_trees


def lambda_circ_formula(V: WeightedDigraph, D: Iterable[Vertex]) -> Weight:
    """``min over q in D`` of ``lambda_bullet_q + min over r outside D of v_qr``."""
    D = _resolve(V, D)
    if D == V.vertices:
        raise DomainError("lambda_circ needs a proper subset: no exterior vertex exists")
    rec = _record(V, D)
    best: Weight = INF
    for q in sorted(D):
        exits = [V.weight(q, r) for r in V.successors(q) if r not in D]
        if not exits or rec.lambda_bullet_at(q) is INF:
            continue
        best = min(best, rec.lambda_bullet_at(q) + min(exits))
    return best


def exit_root(T: SubForest, D: Iterable[int]) -> int:
    """The vertex of ``D`` whose arc in ``T`` leaves ``D``."""
    D = frozenset(D)
    (q,) = [i for i, j in T.arcs if i in D and j not in D]
    return q
