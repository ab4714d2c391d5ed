"""Plain-text graph documents.

Format::

    # comment
    vertices a b c d
    arc b a 1
    arc a c 3/2

The ``vertices`` line comes first and fixes vertex order.  Weights are
integers or ``p/q`` rationals; decimals are rejected so that ties survive
a round trip.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Union

from .errors import DomainError, ParseError
from .graph import WeightedDigraph
from .weights import format_weight, parse_weight

FIXTURES = ("paper_ex1", "paper_p5", "fig2", "fig_eq", "fig_p5eq", "fig_p52")


def _tokens(line: str) -> list[tuple[str, int]]:
    out, col = [], 0
    for part in line.split():
        col = line.index(part, col)
        out.append((part, col + 1))
        col += len(part)
    return out


def parse_graph(text: str) -> WeightedDigraph:
    names: list[str] | None = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        (head, col), rest = toks[0], toks[1:]
        if head == "vertices":
            if names is not None:
                raise ParseError("duplicate 'vertices' line", lineno, col)
            if not rest:
                raise ParseError("'vertices' needs at least one name", lineno, col + len(head))
            names = [t for t, _ in rest]
            seen = set()
            for t, c in rest:
                if t in seen:
                    raise ParseError(f"duplicate vertex {t!r}", lineno, c)
                seen.add(t)
        elif head == "arc":
            if names is None:
                raise ParseError("'arc' before 'vertices'", lineno, col)
            if len(rest) != 3:
                raise ParseError("expected 'arc FROM TO WEIGHT'", lineno, col)
            (a, ca), (b, cb), (w, cw) = rest
            for name, c in ((a, ca), (b, cb)):
                if name not in names:
                    raise ParseError(f"unknown vertex {name!r}", lineno, c)
            try:
                weight = parse_weight(w)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, cw) from None
            arcs.append((names.index(a), names.index(b), weight, lineno, ca))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)
    if names is None:
        raise ParseError("missing 'vertices' line", max(1, len(text.splitlines())), 1)
    seen_pairs = set()
    for i, j, _, lineno, col in arcs:
        if i == j:
            raise ParseError("self-loops are not allowed", lineno, col)
        if (i, j) in seen_pairs:
            raise ParseError("parallel arc", lineno, col)
        seen_pairs.add((i, j))
    return WeightedDigraph(names, [(i, j, w) for i, j, w, _, _ in arcs])


def serialize_graph(V: WeightedDigraph) -> str:
    lines = ["vertices " + " ".join(V.names)]
    lines += [f"arc {V.names[i]} {V.names[j]} {format_weight(w)}" for i, j, w in V.arcs]
    return "\n".join(lines) + "\n"


def load_graph(path: Union[str, Path]) -> WeightedDigraph:
    """Read a graph file; ``fixture:NAME`` loads one of the bundled graphs."""
    path = str(path)
    if path.startswith("fixture:"):
        return load_fixture(path.split(":", 1)[1])
    return parse_graph(Path(path).read_text())


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise DomainError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("minforest.fixtures").joinpath(f"{name}.graph").read_text()


def load_fixture(name: str) -> WeightedDigraph:
    return parse_graph(fixture_text(name))
