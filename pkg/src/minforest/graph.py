"""Weighted digraphs, spanning in-forests and the subgraph operations on them.

Vertices are identified by index ``0..N-1``; names are for presentation.
Vertex-set arguments accept indices or names interchangeably.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import DomainError
from .weights import format_weight

DEFAULT_MAX_VERTICES = 12

Arc = tuple[int, int]
Vertex = Union[int, str]


class WeightedDigraph:
    """A simple digraph with exact rational arc weights.

    Self-loops and parallel arcs are rejected.  Instances are immutable and
    hashable.
    """

    __slots__ = ("names", "_weights", "_out", "_index", "_hash")

    def __init__(self, names: Sequence[str], arcs: Iterable[tuple[int, int, object]] = ()):
        names = tuple(str(x) for x in names)
        if not names:
            raise DomainError("a graph needs at least one vertex")
        if len(set(names)) != len(names):
            raise DomainError("vertex names must be distinct")
        n = len(names)
        weights: dict[Arc, Fraction] = {}
        for i, j, w in arcs:
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"arc ({i}, {j}) references an unknown vertex")
            if i == j:
                raise DomainError(f"self-loop at {names[i]!r} is not allowed")
            if (i, j) in weights:
                raise DomainError(f"parallel arc {names[i]}->{names[j]}")
            if isinstance(w, float) or not isinstance(w, (Rational, str)):
                raise DomainError(f"weight {w!r} must be an exact rational")
            weights[(i, j)] = Fraction(w)
        self.names = names
        self._weights = dict(sorted(weights.items()))
        self._out = tuple(
            tuple(j for (a, j) in self._weights if a == i) for i in range(n)
        )
        self._index = {name: i for i, name in enumerate(names)}
        self._hash = hash((names, tuple(self._weights.items())))

    @classmethod
    def from_named_arcs(
        cls, names: Sequence[str], arcs: Iterable[tuple[str, str, object]]
    ) -> "WeightedDigraph":
        index = {name: i for i, name in enumerate(names)}
        try:
            resolved = [(index[a], index[b], w) for a, b, w in arcs]
        except KeyError as exc:
            raise DomainError(f"unknown vertex {exc.args[0]!r}") from None
        return cls(names, resolved)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    @property
    def arcs(self) -> tuple[tuple[int, int, Fraction], ...]:
        return tuple((i, j, w) for (i, j), w in self._weights.items())

    def successors(self, i: int) -> tuple[int, ...]:
        return self._out[i]

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self._weights

    def weight(self, i: int, j: int) -> Fraction:
        try:
            return self._weights[(i, j)]
        except KeyError:
            raise DomainError(f"no arc {self.names[i]}->{self.names[j]}") from None

    def index(self, v: Vertex) -> int:
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise DomainError(f"unknown vertex {v!r}") from None
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n:
            raise DomainError(f"unknown vertex {v!r}")
        return v

    def vset(self, vertices: Iterable[Vertex]) -> frozenset[int]:
        """Resolve names or indices to a frozenset of indices."""
        if isinstance(vertices, str):
            vertices = [vertices]
        return frozenset(self.index(v) for v in vertices)

    def label(self, vertices: Iterable[int]) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(vertices)) + "}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.names == other.names and self._weights == other._weights

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            f"{self.names[i]}->{self.names[j]}:{format_weight(w)}" for i, j, w in self.arcs
        )
        return f"WeightedDigraph([{', '.join(self.names)}]; {body})"


def _has_cycle(out: dict[int, int]) -> bool:
    state: dict[int, int] = {}
    for start in out:
        path = []
        v: Optional[int] = start
        while v is not None and v in out and v not in state:
            state[v] = 1
            path.append(v)
            v = out[v]
        if v is not None and state.get(v) == 1:
            return True
        for u in path:
            state[u] = 2
    return False


class SpanningForest:
    """A spanning in-forest: every vertex has at most one out-arc, no contours.

    ``out[i]`` is the head of the arc leaving ``i``, or ``None`` for a root.
    Equality and hashing use the out-arc map only.
    """

    __slots__ = ("graph", "out", "_hash")

    def __init__(self, graph: WeightedDigraph, out: Sequence[Optional[int]]):
        out = tuple(out)
        if len(out) != graph.n:
            raise DomainError("out-arc map must cover every vertex")
        for i, j in enumerate(out):
            if j is not None and not graph.has_arc(i, j):
                raise DomainError(f"{graph.names[i]}->{j} is not an arc of the graph")
        if _has_cycle({i: j for i, j in enumerate(out) if j is not None}):
            raise DomainError("out-arc map contains a contour")
        self.graph = graph
        self.out = out
        self._hash = hash(out)

    @classmethod
    def _trusted(cls, graph: WeightedDigraph, out: tuple) -> "SpanningForest":
        obj = object.__new__(cls)
        obj.graph = graph
        obj.out = out
        obj._hash = hash(out)
        return obj

    @classmethod
    def from_arcs(cls, graph: WeightedDigraph, arcs: Iterable[tuple[Vertex, Vertex]]):
        out: list[Optional[int]] = [None] * graph.n
        for a, b in arcs:
            i, j = graph.index(a), graph.index(b)
            if out[i] is not None:
                raise DomainError(f"two arcs leave {graph.names[i]!r}")
            out[i] = j
        return cls(graph, out)

    @property
    def vertices(self) -> frozenset[int]:
        return self.graph.vertices

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple((i, j) for i, j in enumerate(self.out) if j is not None)

    def target(self, i: int) -> Optional[int]:
        return self.out[i]

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.out) if j is None)

    @property
    def n_trees(self) -> int:
        return sum(1 for j in self.out if j is None)

    @property
    def weight(self) -> Fraction:
        return weight_on(self, self.graph.vertices)

    def root_of(self, i: int) -> int:
        while self.out[i] is not None:
            i = self.out[i]
        return i

    def subtree(self, i: Vertex) -> "SubForest":
        """The maximal subtree rooted at ``i`` (its component when ``i`` is a root)."""
        i = self.graph.index(i)
        members = set()
        for v in range(self.graph.n):
            u: Optional[int] = v
            while u is not None and u != i:
                u = self.out[u]
            if u == i:
                members.add(v)
        arcs = frozenset((a, self.out[a]) for a in members if a != i)
        return SubForest(self.graph, frozenset(members), arcs)

    def as_subforest(self) -> "SubForest":
        return SubForest(self.graph, self.vertices, frozenset(self.arcs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningForest):
            return NotImplemented
        return self.out == other.out and self.graph == other.graph

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SpanningForest") -> bool:
        return _sort_key(self.out) < _sort_key(other.out)

    def describe(self) -> str:
        names = self.graph.names
        if not self.arcs:
            return "{}"
        return "{" + ", ".join(f"{names[i]}->{names[j]}" for i, j in self.arcs) + "}"

    def __repr__(self) -> str:
        return f"SpanningForest({self.describe()})"


def _sort_key(out: tuple) -> tuple:
    return tuple(-1 if j is None else j for j in out)


class SubForest:
    """A forest-shaped subgraph: an explicit vertex set and arc set.

    Arc heads may lie anywhere in the vertex set.  Equality compares both the
    vertex set and the arc set, because outgoing restrictions of different
    forests can share arcs yet differ in their exterior vertex.
    """

    __slots__ = ("graph", "vertices", "arc_set", "_out", "_hash")

    def __init__(self, graph: WeightedDigraph, vertices: Iterable[int], arcs: Iterable[Arc]):
        vertices = frozenset(vertices)
        arcs = frozenset(arcs)
        out: dict[int, int] = {}
        for i, j in arcs:
            if i not in vertices or j not in vertices:
                raise DomainError("arc endpoint outside the subforest vertex set")
            if not graph.has_arc(i, j):
                raise DomainError(f"({i}, {j}) is not an arc of the graph")
            if i in out:
                raise DomainError(f"two arcs leave {graph.names[i]!r}")
            out[i] = j
        if _has_cycle(out):
            raise DomainError("arc set contains a contour")
        self.graph = graph
        self.vertices = vertices
        self.arc_set = arcs
        self._out = out
        self._hash = hash((vertices, arcs))

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.arc_set))

    def target(self, i: int) -> Optional[int]:
        return self._out.get(i)

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if v not in self._out)

    @property
    def weight(self) -> Fraction:
        return weight_on(self, self.vertices)

    def is_tree(self) -> bool:
        # acyclic with out-degree <= 1, so one root means connected
        return len(self.roots) == 1

    @property
    def root(self) -> int:
        roots = self.roots
        if len(roots) != 1:
            raise DomainError("subforest is not a tree")
        return next(iter(roots))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubForest):
            return NotImplemented
        return self.vertices == other.vertices and self.arc_set == other.arc_set

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (sorted(self.vertices), self.arcs)

    def describe(self) -> str:
        names = self.graph.names
        arcs = ", ".join(f"{names[i]}->{names[j]}" for i, j in self.arcs)
        return f"[{self.graph.label(self.vertices)}: {{{arcs}}}]"

    def __repr__(self) -> str:
        return f"SubForest{self.describe()}"


GraphLike = Union[SpanningForest, SubForest]


def _subset(G: GraphLike, D: Iterable[Vertex]) -> frozenset[int]:
    D = G.graph.vset(D)
    if not D <= G.vertices:
        raise DomainError(f"{G.graph.label(D - G.vertices)} not in the vertex set")
    return D


def _arcs_of(G: GraphLike) -> Iterable[Arc]:
    return G.arcs


def weight_on(G: GraphLike, D: Iterable[Vertex]) -> Fraction:
    """Sum of weights of arcs of ``G`` whose tail lies in ``D``."""
    D = G.graph.vset(D)
    w = G.graph.weight
    return sum((w(i, j) for i, j in _arcs_of(G) if i in D), Fraction(0))


def restriction(G: GraphLike, D: Iterable[Vertex]) -> SubForest:
    """Induced subgraph on ``D``: arcs with both ends in ``D``."""
    D = _subset(G, D)
    return SubForest(G.graph, D, ((i, j) for i, j in _arcs_of(G) if i in D and j in D))


def outgoing_restriction(G: GraphLike, D: Iterable[Vertex]) -> SubForest:
    """All arcs leaving vertices of ``D``, on ``D`` plus the heads of those arcs."""
    D = _subset(G, D)
    arcs = [(i, j) for i, j in _arcs_of(G) if i in D]
    return SubForest(G.graph, D | {j for _, j in arcs}, arcs)


def out_neighborhood(F: Union[GraphLike, Iterable[GraphLike]], D: Iterable[Vertex]) -> frozenset[int]:
    """Heads of arcs that leave ``D``; a collection of graphs yields the union."""
    if isinstance(F, (SpanningForest, SubForest)):
        D = F.graph.vset(D)
        return frozenset(j for i, j in _arcs_of(F) if i in D and j not in D)
    D = frozenset(D)
    result: frozenset[int] = frozenset()
    for G in F:
        result |= out_neighborhood(G, D)
    return result


def in_neighborhood(F: Union[GraphLike, Iterable[GraphLike]], D: Iterable[Vertex]) -> frozenset[int]:
    """Tails of arcs that enter ``D`` from outside; union over a collection."""
    if isinstance(F, (SpanningForest, SubForest)):
        D = F.graph.vset(D)
        return frozenset(i for i, j in _arcs_of(F) if j in D and i not in D)
    D = frozenset(D)
    result: frozenset[int] = frozenset()
    for G in F:
        result |= in_neighborhood(G, D)
    return result


@dataclass(frozen=True)
class Replacement:
    """Result of swapping out-arcs on a vertex set; may fail to be a forest."""

    graph: WeightedDigraph
    out: tuple
    is_forest: bool

    @property
    def forest(self) -> SpanningForest:
        if not self.is_forest:
            raise DomainError("arc replacement produced a contour")
        return SpanningForest._trusted(self.graph, self.out)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple((i, j) for i, j in enumerate(self.out) if j is not None)

    @property
    def n_trees(self) -> int:
        return sum(1 for j in self.out if j is None)


def arc_replace(F: SpanningForest, G: GraphLike, D: Iterable[Vertex]) -> Replacement:
    """``F`` with its out-arcs on ``D`` replaced by those of ``G``.

    A vertex of ``D`` with no out-arc in ``G`` loses its out-arc.  The result
    is returned with a validity flag rather than raising on a contour.
    """
    graph = F.graph
    if G.graph != graph:
        raise DomainError("forests belong to different graphs")
    D = _subset(G, D)
    out = list(F.out)
    for i in D:
        j = G.target(i)
        if j is not None and not 0 <= j < graph.n:
            raise DomainError(f"replacement arc leaves the graph at {j}")
        out[i] = j
    out_t = tuple(out)
    ok = not _has_cycle({i: j for i, j in enumerate(out_t) if j is not None})
    return Replacement(graph, out_t, ok)


def trees_and_roots(F: SpanningForest) -> list[tuple[int, frozenset[int]]]:
    """Connected components of ``F`` as ``(root, vertex set)``, sorted by root."""
    members: dict[int, set[int]] = {r: set() for r in F.roots}
    for v in range(F.graph.n):
        members[F.root_of(v)].add(v)
    return [(r, frozenset(members[r])) for r in sorted(members)]


def is_descendant(F: SpanningForest, R: SpanningForest) -> bool:
    """Whether ``R`` (k trees) descends from ``F`` (k+1 trees).

    There must be roots ``x != y`` of ``F`` with: roots(R) = roots(F) - {y};
    every other tree of ``R`` equals the same-rooted tree of ``F``; ``R``
    restricted to the x-tree of ``F`` is that tree; ``R`` restricted to the
    y-tree of ``F`` is a tree.
    """
    if F.graph != R.graph:
        raise DomainError("forests belong to different graphs")
    if F.n_trees != R.n_trees + 1:
        raise DomainError(
            f"expected tree counts k+1 and k, got {F.n_trees} and {R.n_trees}"
        )
    kf, kr = F.roots, R.roots
    missing = kf - kr
    if len(missing) != 1 or not kr <= kf:
        return False
    (y,) = missing
    for x in sorted(kr):
        if any(R.subtree(q) != F.subtree(q) for q in kr - {x}):
            continue
        tx = F.subtree(x)
        if restriction(R, tx.vertices) != tx:
            continue
        if restriction(R, F.subtree(y).vertices).is_tree():
            return True
    return False


def iter_vertex_subsets(n: int, *, proper: bool = False) -> Iterator[frozenset[int]]:
    """Non-empty subsets of ``range(n)`` in bitmask order."""
    top = (1 << n) - 1
    for mask in range(1, top if proper else top + 1):
        yield frozenset(i for i in range(n) if mask >> i & 1)
