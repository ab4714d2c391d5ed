"""Executable checks of the structural statements about minimal forests.

Each registered check quantifies a statement over every admissible level,
atom and forest of one graph and returns an :class:`Outcome`:

``pass``  the statement held on every admissible case;
``skip``  no case met the hypotheses (the reason is recorded);
``fail``  a counterexample, with a replayable witness.

:func:`run_campaign` evaluates the registry over seeded random graphs and/or
the bundled fixture graphs and aggregates a deterministic report.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Union

from .atoms import AtomPartition, atom_partition
from .errors import DomainError, ResourceError
from .graph import (
    SpanningForest,
    WeightedDigraph,
    arc_replace,
    in_neighborhood,
    is_descendant,
    iter_vertex_subsets,
    out_neighborhood,
    outgoing_restriction,
    restriction,
    weight_on,
)
from .growth import (
    ALWAYS,
    MIXED,
    NEVER,
    _family,
    assemble_level_k,
    build_catalog,
    descend,
    regime_of,
    restriction_set,
    split_by_exit,
)
from .io import FIXTURES, load_fixture, parse_graph, serialize_graph
from .minima import exit_root, lambda_circ_formula, tree_minima
from .oracle import census
from .weights import format_weight

PASS, SKIP, FAIL = "pass", "skip", "fail"
MAX_WITNESSES = 5


@dataclass(frozen=True, order=True)
class CheckId:
    kind: str  # "property", "theorem" or "conclusion"
    number: int
    clause: str = ""

    @property
    def code(self) -> str:
        return {"property": "P", "theorem": "T", "conclusion": "C"}[self.kind] + str(self.number)

    @classmethod
    def parse(cls, code: str) -> "CheckId":
        try:
            return REGISTRY[code.upper()].id
        except KeyError:
            raise DomainError(f"unknown check {code!r}") from None


@dataclass
class Outcome:
    status: str
    cases: int = 0
    reason: str = ""
    witness: Optional[dict] = None
    notes: Counter = field(default_factory=Counter)


class Failure(Exception):
    def __init__(self, detail: str, **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context


class Instance:
    """One graph with lazily cached oracle data."""

    def __init__(self, V: WeightedDigraph, *, rng: Optional[random.Random] = None, p3_samples: int = 20):
        self.V = V
        self.n = V.n
        self.rng = rng or random.Random(0)
        self.p3_samples = p3_samples
        self._parts: dict[int, AtomPartition] = {}
        self.notes: Counter = Counter()

    @cached_property
    def census(self):
        return census(self.V)

    @property
    def table(self):
        return self.census.table

    @property
    def dense(self) -> bool:
        return bool(self.census.family(1))

    def fam(self, k: int) -> list[SpanningForest]:
        return list(self.census.family(k))

    def part(self, k: int) -> AtomPartition:
        if k not in self._parts:
            self._parts[k] = atom_partition(self.V, k)
        return self._parts[k]

    def bullet(self, D) -> frozenset:
        return tree_minima(self.V, D).bullet_trees

    def circ(self, D) -> frozenset:
        return tree_minima(self.V, D).circ_trees

    def strict_levels(self, lowest: int = 1) -> list[int]:
        return [k for k in range(lowest, self.n) if self.table.is_strict(k)]

    def equality_chains(self) -> list[tuple[int, int]]:
        """Pairs ``(m, k)``, ``k - m > 1``: strict at m and k, equal strictly between."""
        chains = []
        for m in self.strict_levels():
            j = m + 1
            while j < self.n and self.table.is_equal(j):
                j += 1
            if j > m + 1 and j < self.n and self.table.is_strict(j):
                chains.append((m, j))
        return chains

    def names(self, D) -> str:
        return self.V.label(D)


@dataclass(frozen=True)
class Check:
    id: CheckId
    summary: str
    needs_dense: bool
    fn: Callable[[Instance], int]


REGISTRY: dict[str, Check] = {}


def _register(kind: str, number: int, summary: str, *, needs_dense: bool = True):
    def deco(fn: Callable[[Instance], int]):
        cid = CheckId(kind, number)
        REGISTRY[cid.code] = Check(cid, summary, needs_dense, fn)
        return fn

    return deco


def _forests(fs: Iterable[SpanningForest]) -> list[str]:
    return [F.describe() for F in fs]


def _trees(ts: Iterable) -> list[str]:
    return sorted(T.describe() for T in ts)


def _expect(cond: bool, detail: str, **context) -> None:
    if not cond:
        raise Failure(detail, **context)


# ----------------------------------------------------------------------------
# Properties


@_register("property", 1, "trees of minimal forests are minimal rooted trees", needs_dense=False)
def _p1(x: Instance) -> int:
    cases = 0
    for k in range(1, x.n + 1):
        for F in x.fam(k):
            for q in sorted(F.roots):
                D = F.subtree(q).vertices
                rec = tree_minima(x.V, D)
                cases += 1
                w = weight_on(F, D)
                _expect(
                    rec.lambda_bullet == rec.lambda_bullet_at(q) == w,
                    f"tree weight {format_weight(w)} vs lambda {format_weight(rec.lambda_bullet)}",
                    k=k, atom=x.names(D), forests=_forests([F]),
                )
    return cases


@_register("property", 2, "hanging-tree minimum equals per-root formula", needs_dense=False)
def _p2(x: Instance) -> int:
    cases = 0
    for D in iter_vertex_subsets(x.n, proper=True):
        rec = tree_minima(x.V, D)
        formula = lambda_circ_formula(x.V, D)
        cases += 1
        _expect(
            rec.lambda_circ == formula,
            f"enumerated {format_weight(rec.lambda_circ)} vs formula {format_weight(formula)}",
            atom=x.names(D),
        )
        for T in rec.circ_trees:
            q = exit_root(T, D)
            r = T.root
            inner = restriction(T, D)
            _expect(
                outgoing_restriction(T, D) == T
                and inner.is_tree()
                and inner.root == q
                and T.weight == rec.lambda_bullet_at(q) + x.V.weight(q, r),
                "hanging tree violates its structural definition",
                atom=x.names(D), trees=_trees([T]),
            )
    return cases


def _random_forest(V: WeightedDigraph, rng: random.Random) -> SpanningForest:
    while True:
        out = [rng.choice((None,) + V.successors(i)) for i in range(V.n)]
        try:
            return SpanningForest(V, out)
        except DomainError:
            continue


def _random_upstream_closed(F: SpanningForest, rng: random.Random) -> frozenset:
    """Union of random maximal subtrees: nothing outside enters it."""
    D: frozenset = frozenset()
    for i in range(F.graph.n):
        if rng.random() < 0.4:
            D |= F.subtree(i).vertices
    return D


@_register("property", 3, "arc replacement keeps forest shape", needs_dense=False)
def _p3(x: Instance) -> int:
    qualified = attempts = 0
    while qualified < x.p3_samples and attempts < 50 * max(1, x.p3_samples):
        attempts += 1
        F = _random_forest(x.V, x.rng)
        G = _random_forest(x.V, x.rng)
        if x.rng.random() < 0.5:
            D = _random_upstream_closed(F, x.rng)
        else:
            D = frozenset(i for i in range(x.n) if x.rng.random() < 0.5)
        res = arc_replace(F, G, D)
        produced = [(i, j) for i, j in enumerate(res.out) if j is not None and i in D]
        _expect(
            sorted(produced) == sorted(outgoing_restriction(G, D).arcs),
            "replacement does not carry the outgoing restriction of G",
            atom=x.names(D), forests=_forests([F, G]),
        )
        if in_neighborhood(F, D) and out_neighborhood(G, D):
            continue
        qualified += 1
        _expect(
            res.is_forest,
            "replacement produced a contour although a clause holds",
            atom=x.names(D), forests=_forests([F, G]),
        )
    return qualified


@_register("property", 4, "every minimal forest has minimal relatives one level up and down", needs_dense=False)
def _p4(x: Instance) -> int:
    cases = 0
    for k in range(1, x.n):
        lower, upper = x.fam(k), x.fam(k + 1)
        if not lower:
            continue
        for F in upper:
            cases += 1
            kids = [R for R in lower if is_descendant(F, R)]
            _expect(bool(kids), "minimal forest without a minimal descendant", k=k + 1, forests=_forests([F]))
            for R in kids:
                lost = [i for i in range(x.n) if F.out[i] is not None and R.out[i] is None]
                _expect(not lost, "descendant drops an out-arc", k=k, forests=_forests([F, R]))
        for R in lower:
            cases += 1
            _expect(
                any(is_descendant(F, R) for F in upper),
                "minimal forest without a minimal ancestor", k=k, forests=_forests([R]),
            )
    return cases


@_register("property", 5, "algebras increase with k")
def _p5(x: Instance) -> int:
    _expect(list(x.part(1).atoms) == [x.V.vertices], "level-1 algebra is not trivial", k=1)
    _expect(
        list(x.part(x.n).atoms) == [frozenset({i}) for i in range(x.n)],
        "level-N algebra is not the power set", k=x.n,
    )
    for k in range(1, x.n):
        finer = x.part(k + 1)
        for A in x.part(k).atoms:
            _expect(finer.contains(A), "atom is not a union of next-level atoms", k=k, atom=x.names(A))
    return x.n


@_register("property", 6, "equal convexity step freezes the algebra")
def _p6(x: Instance) -> int:
    cases = 0
    for k in range(2, x.n):
        if not x.table.is_equal(k):
            continue
        cases += 1
        a, b = x.part(k), x.part(k + 1)
        _expect(a.atoms == b.atoms, "atoms differ across an equality step", k=k)
        _expect(a.labeled == b.labeled, "labeled atoms differ across an equality step", k=k)
        down, here, up = x.fam(k - 1), x.fam(k), x.fam(k + 1)
        for Y in a.atoms:
            mid = restriction_set(here, Y)
            _expect(
                restriction_set(down, Y) <= mid >= restriction_set(up, Y),
                "outgoing restrictions not nested", k=k, atom=x.names(Y),
            )
    return cases


def _for_strict(x: Instance, lowest: int = 1):
    for k in x.strict_levels(lowest):
        yield k, x.part(k), x.fam(k)


@_register("property", 7, "arc counts from algebra elements are constant")
def _p7(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for A in part.elements():
            cases += 1
            counts = {sum(1 for i in A if F.out[i] is not None) for F in fam}
            _expect(len(counts) == 1, f"arc counts {sorted(counts)}", k=k, atom=x.names(A))
    return cases


@_register("property", 8, "strict step: exactly k labeled atoms")
def _p8(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x):
        cases += 1
        _expect(len(part.labeled_atoms) == k, f"{len(part.labeled_atoms)} labeled atoms", k=k)
    return cases


@_register("property", 9, "strict step: one labeled atom per tree")
def _p9(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for F in fam:
            for q in sorted(F.roots):
                cases += 1
                D = F.subtree(q).vertices
                inside = [Z for Z in part.labeled_atoms if Z <= D]
                _expect(len(inside) == 1, f"{len(inside)} labeled atoms in a tree", k=k,
                        atom=x.names(D), forests=_forests([F]))
    return cases


@_register("property", 10, "strict step: witness forest with no arcs entering the atom")
def _p10(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for F in fam:
            for Y in part.atoms:
                cases += 1
                target = outgoing_restriction(F, Y)
                _expect(
                    any(outgoing_restriction(H, Y) == target and not in_neighborhood(H, Y) for H in fam),
                    "no isolating witness", k=k, atom=x.names(Y), forests=_forests([F]),
                )
    return cases


@_register("property", 11, "strict step: weights on algebra elements are constant")
def _p11(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for A in part.elements():
            cases += 1
            ws = {weight_on(F, A) for F in fam}
            _expect(len(ws) == 1, "weights differ", k=k, atom=x.names(A))
    return cases


@_register("property", 12, "strict step: no arc leaves a labeled atom")
def _p12(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for F in fam:
            for Z in part.labeled_atoms:
                cases += 1
                up, down = outgoing_restriction(F, Z), restriction(F, Z)
                _expect(up == down and down.is_tree(), "labeled atom is not a closed tree",
                        k=k, atom=x.names(Z), forests=_forests([F]))
    return cases


@_register("property", 13, "strict step: lower forests agree with an upper one off one labeled atom")
def _p13(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x, lowest=2):
        for F in x.fam(k - 1):
            cases += 1
            ok = False
            for Z in part.labeled_atoms:
                rest = x.V.vertices - Z
                if not restriction(F, Z).is_tree():
                    continue
                target = outgoing_restriction(F, rest)
                if any(outgoing_restriction(P, rest) == target for P in fam):
                    ok = True
                    break
            _expect(ok, "no matching upper forest and labeled atom", k=k, forests=_forests([F]))
    return cases


@_register("property", 14, "strict step: unlabeled atoms add nothing one level down")
def _p14(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        for X in part.unlabeled_atoms:
            cases += 1
            _expect(restriction_set(lower, X) <= restriction_set(fam, X), "inclusion fails",
                    k=k, atom=x.names(X))
    return cases


@_register("property", 15, "minimal forests induce trees on atoms")
def _p15(x: Instance) -> int:
    cases = 0
    for k in range(1, x.n + 1):
        forests = x.fam(k) + (x.fam(k - 1) if k > 1 else [])
        for Y in x.part(k).atoms:
            for F in forests:
                cases += 1
                _expect(restriction(F, Y).is_tree(), "induced subgraph is not a tree",
                        k=k, atom=x.names(Y), forests=_forests([F]))
    return cases


# ----------------------------------------------------------------------------
# Theorems


@_register("theorem", 1, "labeled atoms carry exactly the minimal spanning trees")
def _t1(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for Z in part.labeled_atoms:
            cases += 1
            up = restriction_set(fam, Z)
            down = frozenset(restriction(F, Z) for F in fam)
            _expect(up == down == x.bullet(Z), "restrictions differ from minimal trees",
                    k=k, atom=x.names(Z), trees=_trees(up))
    return cases


@_register("theorem", 2, "unlabeled atoms carry exactly the minimal hanging trees")
def _t2(x: Instance) -> int:
    cases = 0
    for k, part, fam in _for_strict(x):
        for X in part.unlabeled_atoms:
            cases += 1
            got = restriction_set(fam, X)
            _expect(got == x.circ(X), "restrictions differ from minimal hanging trees",
                    k=k, atom=x.names(X), trees=_trees(got))
    return cases


@_register("theorem", 3, "unlabeled atoms one level down use minimal hanging trees")
def _t3(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        for X in part.unlabeled_atoms:
            cases += 1
            got = restriction_set(lower, X)
            _expect(got <= x.circ(X), "restriction outside minimal hanging trees",
                    k=k, atom=x.names(X), trees=_trees(got - x.circ(X)))
    return cases


@_register("theorem", 4, "each lower forest leaves exactly one labeled atom, by a minimal hanging tree")
def _t4(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        used = set()
        for F in lower:
            cases += 1
            exits = [Z for Z in part.labeled_atoms if out_neighborhood(F, Z)]
            _expect(len(exits) == 1, f"{len(exits)} labeled atoms with an exit", k=k, forests=_forests([F]))
            (Z,) = exits
            used.add(Z)
            _expect(outgoing_restriction(F, Z) in x.circ(Z), "exit tree is not minimal",
                    k=k, atom=x.names(Z), forests=_forests([F]))
        for Z in sorted(used, key=min):
            got = restriction_set(lower, Z)
            _expect(x.circ(Z) <= got, "a minimal hanging tree is not realised",
                    k=k, atom=x.names(Z), trees=_trees(x.circ(Z) - got))
    return cases


def _lower_regimes(x: Instance, k: int, part: AtomPartition) -> list[tuple[frozenset, str]]:
    lower = x.census.family(k - 1)
    return [(Z, regime_of(lower, Z)) for Z in part.labeled_atoms]


@_register("theorem", 5, "atom left in every lower forest: hanging trees and a further strict step")
def _t5(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        always = [Z for Z, r in _lower_regimes(x, k, part) if r == ALWAYS]
        _expect(len(always) <= 1, "more than one always-left atom", k=k)
        for Z in always:
            cases += 1
            _expect(restriction_set(lower, Z) == x.circ(Z), "restrictions differ from minimal hanging trees",
                    k=k, atom=x.names(Z))
            _expect(x.table.is_strict(k - 1), "next convexity step is not strict", k=k, atom=x.names(Z))
    return cases


@_register("theorem", 6, "atom never left one level down keeps its minimal spanning trees")
def _t6(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        for Z, r in _lower_regimes(x, k, part):
            if r != NEVER:
                continue
            cases += 1
            up = restriction_set(lower, Z)
            down = frozenset(restriction(F, Z) for F in lower)
            _expect(up == down == x.bullet(Z), "restrictions differ from minimal trees", k=k, atom=x.names(Z))
    return cases


def _mixed_clauses(x: Instance, family: list, Z: frozenset, k: int, level: int) -> None:
    leaving, staying = split_by_exit(family, Z)
    _expect(bool(leaving), "no forest leaves the atom", k=k, level=level, atom=x.names(Z), clause="1")
    _expect(restriction_set(leaving, Z) == x.circ(Z), "leaving part differs from minimal hanging trees",
            k=k, level=level, atom=x.names(Z), clause="1")
    _expect(bool(staying), "every forest leaves the atom", k=k, level=level, atom=x.names(Z), clause="2")
    _expect(restriction_set(staying, Z) == x.bullet(Z), "staying part differs from minimal trees",
            k=k, level=level, atom=x.names(Z), clause="2")


@_register("theorem", 7, "atom left in some lower forests: both tree kinds fully realised")
def _t7(x: Instance) -> int:
    cases = 0
    for k, part, _ in _for_strict(x, lowest=2):
        lower = x.fam(k - 1)
        for Z, r in _lower_regimes(x, k, part):
            if r == MIXED:
                cases += 1
                _mixed_clauses(x, lower, Z, k, k - 1)
    return cases


@_register("theorem", 8, "equality chain: frozen algebras and nested restrictions")
def _t8(x: Instance) -> int:
    cases = 0
    for m, k in x.equality_chains():
        cases += 1
        ref = x.part(k)
        for l in range(m + 1, k):
            _expect(x.part(l).atoms == ref.atoms and x.part(l).labeled == ref.labeled,
                    "algebra changes inside the chain", k=k, level=l)
        for Y in ref.atoms:
            sets = {l: restriction_set(x.fam(l), Y) for l in range(m, k + 1)}
            for l in range(m + 1, k - 1):
                _expect(sets[l] == sets[l + 1], "chain restrictions differ", k=k, level=l, atom=x.names(Y))
            _expect(sets[m] <= sets[m + 1], "left inclusion fails", k=k, level=m, atom=x.names(Y))
            _expect(sets[k] <= sets[k - 1], "right inclusion fails", k=k, level=k, atom=x.names(Y))
    return cases


@_register("theorem", 9, "equality chain: never-left atom keeps minimal spanning trees down to m")
def _t9(x: Instance) -> int:
    cases = 0
    for m, k in x.equality_chains():
        part = x.part(k)
        for Z, r in _lower_regimes(x, k, part):
            if r != NEVER:
                continue
            cases += 1
            for l in range(m, k + 1):
                fam = x.fam(l)
                up = restriction_set(fam, Z)
                down = frozenset(restriction(F, Z) for F in fam)
                _expect(up == down == x.bullet(Z), "restrictions differ from minimal trees",
                        k=k, level=l, atom=x.names(Z))
    return cases


@_register("theorem", 10, "equality chain: mixed atom realises both tree kinds inside the chain")
def _t10(x: Instance) -> int:
    cases = 0
    for m, k in x.equality_chains():
        for Z, r in _lower_regimes(x, k, x.part(k)):
            if r != MIXED:
                continue
            for l in range(m + 1, k):
                cases += 1
                _mixed_clauses(x, x.fam(l), Z, k, l)
    return cases


@_register("theorem", 11, "equality chain: mixed atom at the chain's lower end")
def _t11(x: Instance) -> int:
    cases = 0
    notes = x.notes
    for m, k in x.equality_chains():
        for Z, r in _lower_regimes(x, k, x.part(k)):
            if r != MIXED:
                continue
            cases += 1
            leaving, staying = split_by_exit(x.fam(m), Z)
            _expect(bool(leaving), "no forest at level m leaves the atom",
                    k=k, level=m, atom=x.names(Z), clause="1")
            got = restriction_set(leaving, Z)
            _expect(got <= x.circ(Z), "leaving part outside minimal hanging trees",
                    k=k, level=m, atom=x.names(Z), clause="1")
            if got != x.circ(Z):
                notes["T11 proper inclusion at m"] += 1
            if staying:
                _expect(restriction_set(staying, Z) == x.bullet(Z), "staying part differs from minimal trees",
                        k=k, level=m, atom=x.names(Z), clause="2")
            else:
                notes["T11 clause 2 vacuous"] += 1
    return cases


# ----------------------------------------------------------------------------
# Constructions


def _construction_levels(x: Instance) -> list[int]:
    return x.strict_levels() + [x.n]


@_register("conclusion", 1, "atom trees rebuild the minimal family and its descent")
def _c1(x: Instance) -> int:
    cases = 0
    for k in _construction_levels(x):
        cat = build_catalog(x.V, k)
        oracle = x.census.family(k)
        cases += 1
        got = assemble_level_k(cat)
        _expect(got.forests == oracle.forests, "assembled family differs from the oracle",
                k=k, clause="assemble", forests=_forests(got.forests ^ oracle.forests))
        if k >= 2 and x.census.family(k - 1):
            cases += 1
            down = descend(cat, oracle)
            want = x.census.family(k - 1)
            _expect(down.forests == want.forests, "descended family differs from the oracle",
                    k=k, clause="descend", forests=_forests(down.forests ^ want.forests))
    return cases


def _observe(x: Instance, notes: Counter) -> None:
    """Record statistics about cases the theory leaves open."""
    if not x.dense:
        return
    for k in range(2, x.n):
        if not x.table.is_equal(k):
            continue
        part = x.part(k)
        if part.unlabeled_atoms:
            notes["equality step with unlabeled atoms"] += 1
        # descent outside the strict regime is not claimed; measure it
        cat = build_catalog(x.V, k)
        found = set()
        for P in x.fam(k):
            for Z in part.labeled_atoms:
                for T in cat.circ[Z]:
                    cand = arc_replace(P, T, Z)
                    if cand.is_forest and cand.n_trees == k - 1:
                        found.add(cand.forest)
        want = x.census.family(k - 1).forests
        got = _family(k - 1, found)
        best = got.forests if got.weight == x.table.phi[k - 1] else frozenset()
        notes["descent at equality step: matches oracle" if best == want
              else "descent at equality step: differs from oracle"] += 1
    for k in x.strict_levels(2):
        for _, r in _lower_regimes(x, k, x.part(k)):
            notes[f"regime {r}"] += 1


# ----------------------------------------------------------------------------
# Running checks


def _witness(x: Instance, check: Check, exc: Failure) -> dict:
    w = {"check": check.id.code, "detail": exc.detail, "graph": serialize_graph(x.V)}
    for key, val in exc.context.items():
        w[key] = val
    return w


def _evaluate(check: Check, x: Instance) -> Outcome:
    if check.needs_dense and not x.dense:
        return Outcome(SKIP, reason="graph has no spanning tree")
    try:
        cases = check.fn(x)
    except Failure as exc:
        return Outcome(FAIL, reason=exc.detail, witness=_witness(x, check, exc))
    except ResourceError as exc:
        return Outcome(SKIP, reason=f"size cap: {exc}")
    if cases == 0:
        return Outcome(SKIP, reason="hypotheses never met")
    return Outcome(PASS, cases=cases, notes=Counter(x.notes))


def check(V: WeightedDigraph, id: Union[CheckId, str], *, seed: int = 0, p3_samples: int = 20) -> Outcome:
    """Evaluate one registered check on ``V``."""
    code = id if isinstance(id, str) else id.code
    try:
        chk = REGISTRY[code.upper()]
    except KeyError:
        raise DomainError(f"unknown check {code!r}") from None
    x = Instance(V, rng=random.Random(seed), p3_samples=p3_samples)
    return _evaluate(chk, x)


def replay(witness: dict) -> Outcome:
    """Re-run the check named in a witness on its graph in isolation."""
    return check(parse_graph(witness["graph"]), witness["check"], seed=witness.get("seed", 0))


# ----------------------------------------------------------------------------
# Campaigns


def random_graph(
    seed: Union[int, str],
    n: int,
    density: float = 0.6,
    weight_range: tuple[int, int] = (1, 4),
    *,
    mode: str = "small",
) -> WeightedDigraph:
    """Reproducible random digraph on ``n`` vertices named ``v0..``.

    ``mode="small"`` draws integer weights uniformly from ``weight_range`` so
    ties are common.  ``mode="pow2"`` gives every arc a distinct power of two,
    which makes every arc set's weight distinct.
    """
    if n < 1:
        raise DomainError("a graph needs at least one vertex")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < density]
    if mode == "small":
        lo, hi = weight_range
        arcs = [(i, j, rng.randint(lo, hi)) for i, j in pairs]
    elif mode == "pow2":
        powers = list(range(len(pairs)))
        rng.shuffle(powers)
        arcs = [(i, j, 2**p) for (i, j), p in zip(pairs, powers)]
    else:
        raise DomainError(f"unknown weight mode {mode!r}")
    return WeightedDigraph([f"v{i}" for i in range(n)], arcs)


@dataclass
class CampaignConfig:
    seed: int = 0
    instances: int = 500
    min_n: int = 2
    max_n: int = 5
    density: float = 0.6
    weight_low: int = 1
    weight_high: int = 4
    weight_mode: str = "small"
    fixtures: bool = False
    checks: tuple = ()
    p3_samples: int = 20
    jobs: int = 1

    def selected(self) -> list[Check]:
        if not self.checks:
            return [REGISTRY[c] for c in sorted(REGISTRY, key=_code_order)]
        return [REGISTRY[CheckId.parse(c).code] for c in self.checks]


def _code_order(code: str) -> tuple:
    return ("PTC".index(code[0]), int(code[1:]))


@dataclass
class Tally:
    passed: int = 0
    skipped: int = 0
    failed: int = 0
    cases: int = 0
    skip_reasons: Counter = field(default_factory=Counter)
    witnesses: list = field(default_factory=list)

    def add(self, o: Outcome, label: str) -> None:
        if o.status == PASS:
            self.passed += 1
            self.cases += o.cases
        elif o.status == SKIP:
            self.skipped += 1
            self.skip_reasons[o.reason] += 1
        else:
            self.failed += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(dict(o.witness, instance=label))

    def merge(self, other: "Tally") -> None:
        self.passed += other.passed
        self.skipped += other.skipped
        self.failed += other.failed
        self.cases += other.cases
        self.skip_reasons.update(other.skip_reasons)
        self.witnesses.extend(other.witnesses[: MAX_WITNESSES - len(self.witnesses)])


@dataclass
class CampaignReport:
    config: dict
    instances: int = 0
    tallies: dict = field(default_factory=dict)
    observations: Counter = field(default_factory=Counter)
    regimes: dict = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return sum(t.failed for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "instances": self.instances,
            "failures": self.failures,
            "checks": {
                code: {
                    "pass": t.passed,
                    "skip": t.skipped,
                    "fail": t.failed,
                    "cases": t.cases,
                    "skip_reasons": dict(sorted(t.skip_reasons.items())),
                    "witnesses": t.witnesses,
                    "summary": REGISTRY[code].summary,
                }
                for code, t in self.tallies.items()
            },
            "observations": dict(sorted(self.observations.items())),
            "fixture_regimes": self.regimes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"instances: {self.instances}  seed: {self.config['seed']}"]
        for code, t in self.tallies.items():
            status = "FAIL" if t.failed else "ok"
            lines.append(
                f"{code:<4} {status:<4} pass={t.passed:<5} skip={t.skipped:<5} fail={t.failed:<3} "
                f"cases={t.cases:<7} {REGISTRY[code].summary}"
            )
            for w in t.witnesses:
                lines.append(f"       witness: {w['instance']}: {w['detail']}")
        for key, val in sorted(self.observations.items()):
            lines.append(f"note: {key}: {val}")
        lines.append("result: " + ("no failures" if self.ok else f"{self.failures} failures"))
        return "\n".join(lines) + "\n"


def _instance_graphs(cfg: CampaignConfig) -> list[tuple[str, str, Optional[WeightedDigraph]]]:
    items: list = []
    if cfg.fixtures:
        items += [(f"fixture:{name}", f"{cfg.seed}/{name}", None) for name in FIXTURES]
    for i in range(cfg.instances):
        items.append((f"random:{i}", f"{cfg.seed}/{i}", None))
    return items


def _graph_for(label: str, seed: str, cfg: CampaignConfig) -> WeightedDigraph:
    if label.startswith("fixture:"):
        return load_fixture(label.split(":", 1)[1])
    rng = random.Random(seed)
    n = rng.randint(cfg.min_n, cfg.max_n)
    return random_graph(seed, n, cfg.density, (cfg.weight_low, cfg.weight_high), mode=cfg.weight_mode)


def _run_one(args: tuple) -> tuple[str, list[tuple[str, Outcome]], Counter]:
    label, seed, cfg = args
    V = _graph_for(label, seed, cfg)
    outcomes = []
    for chk in cfg.selected():
        x = Instance(V, rng=random.Random(f"{seed}/{chk.id.code}"), p3_samples=cfg.p3_samples)
        outcomes.append((chk.id.code, _evaluate(chk, x)))
    notes: Counter = Counter()
    for code, o in outcomes:
        notes.update(o.notes)
        if code == "P3" and o.status == PASS:
            notes["P3 qualifying triples"] += o.cases
    try:
        _observe(Instance(V), notes)
    except ResourceError:
        notes["observation skipped: size cap"] += 1
    return label, outcomes, notes


def fixture_regimes(name: str) -> dict:
    """Regimes of labeled atoms for every strict level against each lower family."""
    V = load_fixture(name)
    x = Instance(V)
    out: dict = {}
    for k in x.strict_levels(2):
        for l in range(1, k):
            fam = x.census.family(l)
            out[f"k={k},l={l}"] = {
                x.names(Z): regime_of(fam, Z) for Z in x.part(k).labeled_atoms
            }
    return out


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    """Evaluate the selected checks over all instances of the configuration."""
    report = CampaignReport(config=asdict(cfg) | {"checks": list(cfg.checks)})
    report.config.pop("jobs")
    for chk in cfg.selected():
        report.tallies[chk.id.code] = Tally()
    jobs = [(label, seed, cfg) for label, seed, _ in _instance_graphs(cfg)]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(j) for j in jobs]
    for label, outcomes, notes in results:
        report.instances += 1
        for code, o in outcomes:
            report.tallies[code].add(o, label)
        report.observations.update(notes)
    if cfg.fixtures:
        report.regimes = {name: fixture_regimes(name) for name in FIXTURES}
    return report
