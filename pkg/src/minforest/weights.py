"""Exact extended-rational weights.

Arc weights are :class:`fractions.Fraction`.  Minima over empty candidate
sets are the singleton :data:`INF`, which orders above every rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DomainError


class Infinite:
    """Positive infinity for extended-rational arithmetic."""

    _instance: "Infinite | None" = None

    def __new__(cls) -> "Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("minforest.INF")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "Infinite":
        return self

    __radd__ = __add__

    def __sub__(self, other: object) -> "Infinite":
        if other is self:
            raise DomainError("inf - inf is undefined")
        return self

    def __rsub__(self, other: object):
        raise DomainError("finite - inf is not representable")

    def __reduce__(self):
        return (Infinite, ())


INF = Infinite()

Weight = Union[Fraction, Infinite]


def parse_weight(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a reduced Fraction.

    Decimal notation is rejected so that files never carry rounded values.
    """
    if not text or any(ch in text for ch in ".eE "):
        raise ValueError(f"weight {text!r} is not an integer or p/q rational")
    num, sep, den = text.partition("/")
    if sep and not den:
        raise ValueError(f"weight {text!r} has an empty denominator")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"weight {text!r} is not an integer or p/q rational") from None
    if q == 0:
        raise ValueError(f"weight {text!r} has a zero denominator")
    return Fraction(p, q)


def format_weight(w: Weight) -> str:
    if w is INF:
        return "inf"
    if w.denominator == 1:
        return str(w.numerator)
    return f"{w.numerator}/{w.denominator}"


def is_finite(w: Weight) -> bool:
    return w is not INF


def as_float(w: Weight) -> float:
    return float("inf") if w is INF else float(w)
