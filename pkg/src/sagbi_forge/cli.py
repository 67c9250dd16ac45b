"""Command-line front end.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or domain error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ._engine import Budget, Field
from .edge_rings import (
    Graph, STEP_NAMES, binomial_gens, bipartite_order, dim_edge_ring,
    kab_frame, named_graph, verify_main_theorems,
)
from .errors import BudgetExceeded, SagbiForgeError
from .posets import build_pi, enumerate_ideals, hibi_generators, is_graded
from .poly import format_polynomial
from .sagbi import sagbi_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "SAGBI_FORGE_BUDGET_SECS"
DEFAULT_BUDGET = 1800.0


class UsageError(Exception):
    pass


def _default_budget() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a number of seconds, got {raw!r}") from None


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A,B but got {text!r}") from None
    return a, b


def _common(p: argparse.ArgumentParser, field: bool = False, budget: bool = False) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    if field:
        p.add_argument("--field", type=_field, default=Field(),
                       help="'q' (default) or 'fp:<prime>'")
    if budget:
        p.add_argument("--budget", type=float, default=None,
                       help=f"time budget in seconds (default ${BUDGET_ENV} or {DEFAULT_BUDGET:g})")
        p.add_argument("--timings", action="store_true",
                       help="include per-step milliseconds (output then varies between runs)")


def _graph_source(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--named", help="g1, g2, path:d, cycle:d, star:b, complete:d, kab:a,b")
    src.add_argument("--graph", type=Path, help='JSON file {"vertices": d, "edges": [[i, j], ...]}')
    return src


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sagbi-forge",
        description="Binomial edge rings, SAGBI checks and Hibi-ring utilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the six-step check for K_{a,b}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _common(p, field=True, budget=True)

    p = sub.add_parser("dim", help="Krull dimension of the edge ring of a graph")
    _graph_source(p)
    p.add_argument("--strategy", choices=("kernel", "lattice"), default="kernel")
    p.add_argument("--no-fallback", action="store_true",
                   help="do not retry over GF(32003) when the rational run runs out of time")
    _common(p, field=True, budget=True)

    p = sub.add_parser("poset", help="ideals, Hibi generators, gradedness or ideal count of Pi_{a,b}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("action", choices=("ideals", "hibi", "graded", "count"))
    _common(p)

    p = sub.add_parser("sagbi", help="test whether a generating set is a SAGBI basis")
    src = _graph_source(p)
    src.add_argument("--kab", type=_pair, help="the generating set of K_{a,b} as A,B")
    p.add_argument("--quadrics-only", action="store_true",
                   help="with --kab: drop the quartic generators")
    p.add_argument("--order", choices=("default", "bipartite"), default="default",
                   help="graph sources: graded lex x_1 > .. > y_d, or x_U > x_V > y_U > y_V")
    _common(p, budget=True)
    return parser


def _load_graph(args) -> tuple[str, Graph]:
    if args.named:
        return args.named, named_graph(args.named)
    try:
        text = args.graph.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    try:
        return str(args.graph), Graph.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad graph file {args.graph}: {exc}") from None


def _budget(args) -> Budget:
    secs = args.budget if args.budget is not None else _default_budget()
    return Budget(secs)


# -- commands ----------------------------------------------------------------

def cmd_verify(args) -> tuple[int, dict, str]:
    report = verify_main_theorems(args.a, args.b, args.field, _budget(args))
    data = report.as_dict(args.timings)
    lines = [f"K_{{{args.a},{args.b}}}  field {report.field}", ""]
    width = max(len(n) for n in STEP_NAMES)
    for s in data["steps"]:
        verdict = "pass" if s["pass"] else "FAIL"
        extra = f"  {s['ms']:.1f} ms" if s["ms"] is not None else ""
        lines.append(f"  {s['name']:<{width}}  {verdict}{extra}")
        if s["witness"]:
            lines.append(f"      {s['witness']}")
    lines += ["", f"dimension            {data['dimension']}",
              f"graded poset         {str(data['graded']).lower()}",
              f"gorenstein expected  {str(data['gorenstein_expected']).lower()}",
              f"status               {data['status']}"]
    code = {"pass": EXIT_OK, "fail": EXIT_FAIL, "budget_exceeded": EXIT_BUDGET}[report.status]
    return code, data, "\n".join(lines)


def cmd_dim(args) -> tuple[int, dict, str]:
    name, G = _load_graph(args)
    res = dim_edge_ring(G, args.strategy, field=args.field, budget=_budget(args),
                        fallback=not args.no_fallback)
    data = {"graph": name, "vertices": G.d, "edges": G.n, **res.as_dict()}
    text = (f"{name}: dimension {res.dimension} (bound {res.bound}, "
            f"{'bipartite' if res.bipartite else 'non-bipartite'}, field {res.field}"
            + (", prime-field fallback" if res.fallback else "") + ")")
    return EXIT_OK, data, text


def cmd_poset(args) -> tuple[int, dict, str]:
    P = build_pi(args.a, args.b)
    base = {"a": args.a, "b": args.b, "action": args.action}
    if args.action == "count":
        n = len(enumerate_ideals(P))
        return EXIT_OK, {**base, "count": n}, str(n)
    if args.action == "graded":
        g = is_graded(P)
        return EXIT_OK, {**base, "graded": g}, str(g).lower()
    if args.action == "ideals":
        ideals = [P.ordered(i) for i in enumerate_ideals(P)]
        text = "\n".join("{" + ", ".join(i) + "}" for i in ideals)
        return EXIT_OK, {**base, "elements": list(P.elements), "ideals": ideals}, text
    gens = [format_polynomial(g) for g in hibi_generators(P)]
    return EXIT_OK, {**base, "generators": gens}, "\n".join(gens)


def cmd_sagbi(args) -> tuple[int, dict, str]:
    if args.kab:
        a, b = args.kab
        frame = kab_frame(a, b)
        F = frame.quadrics_only() if args.quadrics_only else frame.gens
        source = f"kab:{a},{b}" + (" quadrics-only" if args.quadrics_only else "")
    else:
        if args.quadrics_only:
            raise UsageError("--quadrics-only needs --kab")
        source, G = _load_graph(args)
        order = bipartite_order(G) if args.order == "bipartite" else None
        F = binomial_gens(G, order)
    res = sagbi_check(F, _budget(args))
    data = {
        "source": source, "generators": len(F), "field": "QQ", "pass": res.passed,
        "relations_checked": res.relations_checked,
        "relation": format_polynomial(res.relation) if res.relation is not None else None,
        "witness": format_polynomial(res.witness) if res.witness is not None else None,
    }
    text = f"{source}: {'pass' if res.passed else 'FAIL'} ({res.relations_checked} relations checked)"
    if not res.passed:
        text += f"\n  relation {data['relation']}\n  witness  {data['witness']}"
    return (EXIT_OK if res.passed else EXIT_FAIL), data, text


COMMANDS = {"verify": cmd_verify, "dim": cmd_dim, "poset": cmd_poset, "sagbi": cmd_sagbi}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, data, text = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SagbiForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    body = json.dumps(data, indent=2) if args.format == "json" else text
    if args.out:
        args.out.write_text(body + "\n")
    else:
        print(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
