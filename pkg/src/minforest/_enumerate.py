"""Backtracking enumeration of in-forests over per-vertex out-arc choices."""

from __future__ import annotations

from typing import Iterator, Optional, Sequence


def in_forest_maps(
    order: Sequence[int],
    choices: Sequence[Sequence[int]],
    size: int,
    n_arcs: Optional[int] = None,
) -> Iterator[list]:
    """Yield out-maps (lists indexed by vertex, ``None`` = no arc) that are acyclic.

    ``order[t]`` is the t-th vertex to decide and ``choices[t]`` its allowed
    heads.  ``size`` is the length of the out-map list.  With ``n_arcs`` set,
    only maps with exactly that many arcs are produced.  The same list object
    is mutated between yields; callers copy what they keep.
    """
    out: list = [None] * size
    m = len(order)

    def closes_cycle(v: int, w: int) -> bool:
        u: Optional[int] = w
        while u is not None:
            if u == v:
                return True
            u = out[u]
        return False

    def rec(t: int, arcs: int) -> Iterator[list]:
        if n_arcs is not None:
            if arcs > n_arcs or arcs + (m - t) < n_arcs:
                return
        if t == m:
            yield out
            return
        v = order[t]
        for w in choices[t]:
            if not closes_cycle(v, w):
                out[v] = w
                yield from rec(t + 1, arcs + 1)
                out[v] = None
        yield from rec(t + 1, arcs)

    yield from rec(0, 0)
