"""Low-temperature asymptotics of Laplacian characteristic polynomials.

Arc weights are read as exponents: rates ``a_ij = exp(-v_ij / eps)``.  The
coefficient ``c_l`` of ``lambda**l`` in ``det(lambda I + L)`` is the sum over
``l``-tree spanning forests of ``exp(-weight / eps)``, so ``-eps ln c_l``
tends to ``phi^l`` as ``eps`` shrinks.

All coefficient magnitudes are handled in the log domain anchored at
``phi^l``; ``exp(-phi/eps)`` is never formed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .atoms import atom_partition
from .errors import DomainError
from .graph import WeightedDigraph, outgoing_restriction
from .minima import tree_minima
from .oracle import census
from .weights import INF, Weight, as_float

ILL_CONDITIONED = 1e12


class IllConditionedWarning(UserWarning):
    """The floating determinant is not trustworthy at this epsilon."""


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not eps > 0 or math.isinf(eps):
        raise DomainError(f"epsilon must be positive and finite, got {eps}")
    return eps


@dataclass(frozen=True)
class EpsilonFamily:
    graph: WeightedDigraph
    epsilon: float

    @cached_property
    def rates(self) -> np.ndarray:
        A = np.zeros((self.graph.n, self.graph.n))
        for i, j, w in self.graph.arcs:
            A[i, j] = math.exp(-float(w) / self.epsilon)
        return A

    @cached_property
    def laplacian(self) -> np.ndarray:
        A = self.rates
        return np.diag(A.sum(axis=1)) - A


def epsilon_family(V: WeightedDigraph, eps: float) -> EpsilonFamily:
    return EpsilonFamily(V, _check_eps(eps))


@dataclass(frozen=True)
class CoefficientRow:
    l: int
    phi: Weight
    n_forests: int
    n_minimal: int
    log_c: float  # natural log of c_l; -inf when there are no forests
    exponent: float  # -eps * ln c_l; inf when there are no forests

    @property
    def slack(self) -> float:
        """Gap ``phi - exponent``; lies in ``[0, eps ln |F^l|]``."""
        if self.n_forests == 0:
            return 0.0
        return as_float(self.phi) - self.exponent


@dataclass(frozen=True)
class CoefficientProfile:
    graph: WeightedDigraph
    epsilon: float
    rows: tuple

    def row(self, l: int) -> CoefficientRow:
        return self.rows[l]

    def within_bound(self, l: int, *, tol: float = 1e-12) -> bool:
        """``0 <= phi - exponent <= eps ln |F^l|`` (vacuous for empty families)."""
        r = self.rows[l]
        if r.n_forests == 0:
            return r.phi is INF and math.isinf(r.exponent)
        cap = self.epsilon * math.log(r.n_forests)
        return -tol <= r.slack <= cap + tol

    def describe(self) -> str:
        lines = [f"epsilon = {self.epsilon:g}", "l  phi   -eps*ln(c_l)      forests  minimal"]
        for r in self.rows:
            phi = "inf" if r.phi is INF else str(r.phi)
            exp = "inf" if math.isinf(r.exponent) else f"{r.exponent:.12f}"
            lines.append(f"{r.l:<2} {phi:<5} {exp:<17} {r.n_forests:<8} {r.n_minimal}")
        return "\n".join(lines) + "\n"


def coefficient_profile(V: WeightedDigraph, eps: float) -> CoefficientProfile:
    """Log-domain coefficients ``c_l`` for ``l = 0..N`` from the forest weight spectra."""
    eps = _check_eps(eps)
    cen = census(V)
    rows = []
    for l in range(V.n + 1):
        phi = cen.table.phi[l]
        spec = cen.spectra[l]
        total = sum(spec.values())
        if total == 0:
            rows.append(CoefficientRow(l, phi, 0, 0, -math.inf, math.inf))
            continue
        # every term is <= its multiplicity and the phi term is >= 1
        s = math.fsum(m * math.exp(-float(w - phi) / eps) for w, m in spec.items())
        log_c = -float(phi) / eps + math.log(s)
        exponent = float(phi) - eps * math.log(s)
        rows.append(CoefficientRow(l, phi, total, spec[phi], log_c, exponent))
    return CoefficientProfile(V, eps, tuple(rows))


def forest_polynomial(V: WeightedDigraph, eps: float) -> list[float]:
    """Coefficients ``c_0..c_N`` of ``det(lambda I + L)`` as forest sums."""
    eps = _check_eps(eps)
    cen = census(V)
    return [
        math.fsum(m * math.exp(-float(w) / eps) for w, m in cen.spectra[l].items())
        for l in range(V.n + 1)
    ]


def verify_matrix_forest(
    V: WeightedDigraph, eps: float = 1.0, samples: Sequence[float] = (0.5, 1.0, 2.0)
) -> float:
    """Largest relative gap between ``det(lambda I + L)`` and the forest-sum polynomial.

    Warns with :class:`IllConditionedWarning` when a rate underflows or the
    shifted Laplacian is badly conditioned; the number is still returned.
    """
    fam = epsilon_family(V, eps)
    L = fam.laplacian
    coeffs = forest_polynomial(V, eps)
    if any(fam.rates[i, j] == 0.0 for i, j, _ in V.arcs):
        warnings.warn("a rate underflows to zero at this epsilon", IllConditionedWarning, stacklevel=2)
    worst = 0.0
    for lam in samples:
        M = lam * np.eye(V.n) + L
        if np.linalg.cond(M) > ILL_CONDITIONED:
            warnings.warn(f"lambda={lam}: condition number above {ILL_CONDITIONED:g}",
                          IllConditionedWarning, stacklevel=2)
        det = float(np.linalg.det(M))
        poly = math.fsum(c * lam**l for l, c in enumerate(coeffs))
        worst = max(worst, abs(det - poly) / max(abs(poly), np.finfo(float).tiny))
    return worst


@dataclass(frozen=True)
class AtomGroup:
    atom: frozenset
    labeled: bool
    tree: object  # SubForest: the forest's outgoing restriction to the atom
    in_minimal: bool  # member of the matching minimal-tree family


def dominant_grouping(V: WeightedDigraph, l: int) -> list[list[AtomGroup]]:
    """Split each dominant forest's arcs by the level-``l`` atoms.

    Labeled atoms are compared against minimal spanning trees, unlabeled ones
    against minimal hanging trees.
    """
    fam = census(V).family(l)
    if not fam:
        raise DomainError(f"no spanning forests with {l} trees")
    part = atom_partition(V, l)
    result = []
    for F in fam:
        groups = []
        for atom, lab in zip(part.atoms, part.labeled):
            T = outgoing_restriction(F, atom)
            rec = tree_minima(V, atom)
            pool = rec.bullet_trees if lab else rec.circ_trees
            groups.append(AtomGroup(atom, lab, T, T in pool))
        result.append(groups)
    return result
