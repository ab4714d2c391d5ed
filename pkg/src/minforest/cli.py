"""Command-line interface: ``minforest <command> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .atoms import atom_partition
from .errors import DomainError, ParseError, ResourceError
from .graph import SubForest, WeightedDigraph
from .growth import assemble_level_k, build_catalog, descend
from .io import FIXTURES, fixture_text, load_graph
from .markov import coefficient_profile, verify_matrix_forest
from .minima import tree_minima
from .oracle import census
from .verifier import REGISTRY, CampaignConfig, replay, run_campaign
from .weights import format_weight


def _emit(args, text: str, data) -> None:
    if args.format == "machine":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _names(V: WeightedDigraph, vs) -> list[str]:
    return [V.names[i] for i in sorted(vs)]


def _forest_doc(F) -> list[list[str]]:
    names = F.graph.names
    return [[names[i], names[j]] for i, j in F.arcs]


def _tree_doc(T: SubForest) -> dict:
    return {"vertices": _names(T.graph, T.vertices), "arcs": _forest_doc(T), "weight": format_weight(T.weight)}


def _parse_subset(V: WeightedDigraph, text: str) -> frozenset:
    names = [s for s in text.replace(",", " ").split() if s]
    if not names:
        raise DomainError("the vertex subset must be non-empty")
    return V.vset(names)


def cmd_analyze(args) -> int:
    V = load_graph(args.graph)
    cen = census(V)
    table = cen.table
    data = {"vertices": list(V.names), "levels": []}
    lines = [f"vertices: {' '.join(V.names)}", "k  phi    sign     forests  minimal  atoms"]
    for k in range(1, V.n + 1):
        fam = cen.family(k)
        sign = table.signs.get(k) if k < V.n else None
        level = {
            "k": k,
            "phi": format_weight(table.phi[k]),
            "sign": sign,
            "forests": cen.count(k),
            "minimal": [F.describe() for F in fam],
        }
        atoms_txt = "-"
        if fam:
            part = atom_partition(V, k)
            level["atoms"] = [
                {"vertices": _names(V, a), "labeled": lab} for a, lab in zip(part.atoms, part.labeled)
            ]
            atoms_txt = part.describe()
        data["levels"].append(level)
        lines.append(
            f"{k:<2} {format_weight(table.phi[k]):<6} {sign or '-':<8} {cen.count(k):<8} {len(fam):<8} {atoms_txt}"
        )
    for k in range(1, V.n + 1):
        for F in cen.family(k):
            lines.append(f"minimal k={k}: {F.describe()}")
    _emit(args, "\n".join(lines) + "\n", data)
    return 0


def cmd_minima(args) -> int:
    V = load_graph(args.graph)
    D = _parse_subset(V, args.subset)
    rec = tree_minima(V, D)
    if args.mode == "bullet":
        w, trees = rec.lambda_bullet, rec.bullet_trees
        extra = {V.names[q]: format_weight(rec.lambda_bullet_at(q)) for q in sorted(D)}
    else:
        if D == V.vertices:
            raise DomainError("circ mode needs a proper subset: no exterior vertex exists")
        w, trees = rec.lambda_circ, rec.circ_trees
        extra = None
    ordered = sorted(trees, key=SubForest.sort_key)
    data = {"subset": _names(V, D), "mode": args.mode, "lambda": format_weight(w),
            "trees": [_tree_doc(T) for T in ordered]}
    lines = [f"lambda_{args.mode}{V.label(D)} = {format_weight(w)}"]
    if extra is not None:
        data["per_root"] = extra
        lines += [f"  root {q}: {val}" for q, val in extra.items()]
    lines += [f"  {T.describe()}" for T in ordered]
    _emit(args, "\n".join(lines) + "\n", data)
    return 0


def _family_output(args, V, fam, label: str) -> int:
    forests = sorted(fam)
    data = {"k": fam.k, "weight": format_weight(fam.weight), "forests": [_forest_doc(F) for F in forests]}
    lines = [f"{label}: {len(forests)} forests with {fam.k} trees, weight {format_weight(fam.weight)}"]
    lines += [f"  {F.describe()}" for F in forests]
    _emit(args, "\n".join(lines) + "\n", data)
    return 0


def cmd_assemble(args) -> int:
    V = load_graph(args.graph)
    fam = assemble_level_k(build_catalog(V, args.k), fallback=args.fallback)
    return _family_output(args, V, fam, "assembled")


def cmd_descend(args) -> int:
    V = load_graph(args.graph)
    cat = build_catalog(V, args.k)
    fam = descend(cat, assemble_level_k(cat))
    return _family_output(args, V, fam, "descended")


def cmd_verify(args) -> int:
    if args.replay:
        witness = json.loads(Path(args.replay).read_text())
        outcome = replay(witness)
        data = {"status": outcome.status, "reason": outcome.reason, "witness": outcome.witness}
        _emit(args, f"{witness['check']}: {outcome.status} {outcome.reason}\n", data)
        return 1 if outcome.status == "fail" else 0
    cfg = CampaignConfig(
        seed=args.seed,
        instances=args.instances,
        min_n=args.min_n,
        max_n=args.max_n,
        density=args.density,
        weight_mode=args.weights,
        fixtures=args.fixtures,
        checks=tuple(args.check or ()),
        p3_samples=args.p3_samples,
        jobs=args.jobs,
    )
    report = run_campaign(cfg)
    if args.format == "machine":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.ok else 1


def cmd_markov(args) -> int:
    V = load_graph(args.graph)
    prof = coefficient_profile(V, args.eps)
    dev = verify_matrix_forest(V, 1.0)
    data = {
        "epsilon": prof.epsilon,
        "matrix_forest_deviation_eps1": dev,
        "rows": [
            {
                "l": r.l,
                "phi": format_weight(r.phi),
                "exponent": None if math.isinf(r.exponent) else r.exponent,
                "forests": r.n_forests,
                "minimal": r.n_minimal,
                "within_bound": prof.within_bound(r.l),
            }
            for r in prof.rows
        ],
    }
    text = prof.describe() + f"matrix-forest deviation at eps=1: {dev:.3e}\n"
    _emit(args, text, data)
    return 0


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot(V: WeightedDigraph, name: str, arcs, atoms=None, labeled=None) -> str:
    lines = [f"digraph {_quote(name)} {{"]
    placed = set()
    for idx, atom in enumerate(atoms or []):
        style = "solid" if labeled[idx] else "dashed"
        lines.append(f"  subgraph {_quote(f'cluster_{idx}')} {{")
        lines.append(f"    label={_quote(V.label(atom) + ('*' if labeled[idx] else ''))}; style={style};")
        for i in sorted(atom):
            lines.append(f"    {_quote(V.names[i])};")
            placed.add(i)
        lines.append("  }")
    for i in range(V.n):
        if i not in placed:
            lines.append(f"  {_quote(V.names[i])};")
    for i, j, w in arcs:
        lines.append(f"  {_quote(V.names[i])} -> {_quote(V.names[j])} [label={_quote(format_weight(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(args) -> int:
    V = load_graph(args.graph)
    if args.what == "graph":
        sys.stdout.write(_dot(V, "graph", V.arcs))
        return 0
    if args.k is None:
        raise DomainError(f"'{args.what}' needs --k")
    fam = census(V).family(args.k)
    if not fam:
        raise DomainError(f"no spanning forests with {args.k} trees")
    part = atom_partition(V, args.k)
    atoms, labeled = list(part.atoms), list(part.labeled)
    out = []
    if args.what == "forests":
        for idx, F in enumerate(sorted(fam)):
            arcs = [(i, j, V.weight(i, j)) for i, j in F.arcs]
            out.append(_dot(V, f"forest_{args.k}_{idx}", arcs, atoms, labeled))
    else:  # trees: minimal trees per atom
        for a_idx, (atom, lab) in enumerate(zip(atoms, labeled)):
            rec = tree_minima(V, atom)
            pool = rec.bullet_trees if lab else rec.circ_trees
            for t_idx, T in enumerate(sorted(pool, key=SubForest.sort_key)):
                arcs = [(i, j, V.weight(i, j)) for i, j in T.arcs]
                out.append(_dot(V, f"atom_{a_idx}_tree_{t_idx}", arcs, [atom], [lab]))
    sys.stdout.write("".join(out))
    return 0


def cmd_fixtures(args) -> int:
    if args.name:
        sys.stdout.write(fixture_text(args.name))
    else:
        sys.stdout.write("".join(f"{n}\n" for n in FIXTURES))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minforest", description="Minimal spanning forests of weighted digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", help="graph file, or fixture:NAME")
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        return sp

    graph_cmd("analyze", "phi table, convexity signs, minimal families and atoms").set_defaults(fn=cmd_analyze)

    sp = graph_cmd("minima", "minimal trees on a vertex subset")
    sp.add_argument("--subset", "-D", required=True, help="comma-separated vertex names")
    sp.add_argument("--mode", choices=("bullet", "circ"), default="bullet")
    sp.set_defaults(fn=cmd_minima)

    sp = graph_cmd("assemble", "build the minimal k-tree family from atom trees")
    sp.add_argument("k", type=int)
    sp.add_argument("--fallback", action="store_true", help="outside the strict regime, return the enumerated family")
    sp.set_defaults(fn=cmd_assemble)

    sp = graph_cmd("descend", "derive the minimal (k-1)-tree family from the k-tree one")
    sp.add_argument("k", type=int)
    sp.set_defaults(fn=cmd_descend)

    sp = graph_cmd("markov", "coefficient exponents of the epsilon-Laplacian")
    sp.add_argument("--eps", type=float, default=0.02)
    sp.set_defaults(fn=cmd_markov)

    sp = sub.add_parser("dot", help="Graphviz export")
    sp.add_argument("graph")
    sp.add_argument("--what", choices=("graph", "forests", "trees"), default="graph")
    sp.add_argument("--k", type=int)
    sp.set_defaults(fn=cmd_dot)

    sp = sub.add_parser("verify", help="run the check registry over random graphs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=500)
    sp.add_argument("--min-n", type=int, default=2)
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--density", type=float, default=0.6)
    sp.add_argument("--weights", choices=("small", "pow2"), default="small")
    sp.add_argument("--fixtures", action="store_true", help="also run the bundled fixtures")
    sp.add_argument("--check", action="append", choices=sorted(REGISTRY), help="restrict to these checks")
    sp.add_argument("--p3-samples", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--replay", metavar="WITNESS.json", help="re-run one failure witness")
    sp.add_argument("--format", choices=("text", "machine"), default="text")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("fixtures", help="list bundled graphs or print one")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(fn=cmd_fixtures)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, ParseError, ResourceError, OSError) as exc:
        sys.stderr.write(f"minforest {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
