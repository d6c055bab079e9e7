"""Command-line front end.

Subcommands: ``build`` (emit the composition model), ``plan`` (enumerate
plans for a request), ``affinity`` (pairwise affinity matrix), ``oracle``
(cross-check the planner against the brute-force enumerator).

Exit codes: 0 success (an empty plan set is still success), 1 usage or
catalog parse error, 2 semantic error (unknown initial service, failed
oracle check). Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import affinity, catalog_io, graph, oracle, planner
from .types import Catalog, TokenError, TypeSet, UnknownServiceError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEMANTIC = 2


def _color_enabled() -> bool:
    return sys.stderr.isatty() and os.environ.get("COMPOGRAPH_NO_COLOR") != "1"


def _err(message: str) -> None:
    if _color_enabled():
        message = f"\x1b[31m{message}\x1b[0m"
    print(message, file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default is 2, which we reserve
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_catalog_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("catalog", help="catalog file (.svc DSL or .json)")
    parser.add_argument(
        "--input-format",
        choices=("dsl", "json"),
        help="override the format inferred from the file extension",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compograph", description="Typed service composition engine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    build = sub.add_parser("build", help="build the composition model for a catalog")
    _add_catalog_args(build)
    build.add_argument("--init", required=True, metavar="NAME", help="initial service name")
    build.add_argument("--format", choices=("dot", "json"), default="dot")
    build.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    build.set_defaults(handler=_cmd_build)

    plan = sub.add_parser("plan", help="enumerate composition plans for a request")
    _add_catalog_args(plan)
    plan.add_argument("--init", required=True, metavar="NAME", help="initial service name")
    plan.add_argument("--provided", default="", metavar="CSV", help="comma-separated provided types")
    plan.add_argument("--required", default="", metavar="CSV", help="comma-separated required types")
    plan.add_argument("--json", action="store_true", help="emit the JSON result document")
    plan.add_argument("--stats", action="store_true", help="append state/solution counts")
    plan.add_argument("--check-executability", action="store_true", help="annotate plans with a left-to-right run check")
    plan.add_argument("--max-plans", type=int, metavar="N", help="stop after N plans")
    plan.set_defaults(handler=_cmd_plan)

    aff = sub.add_parser("affinity", help="print the pairwise affinity matrix")
    _add_catalog_args(aff)
    aff.add_argument("--json", action="store_true")
    aff.set_defaults(handler=_cmd_affinity)

    orc = sub.add_parser("oracle", help="cross-check the planner against brute force")
    _add_catalog_args(orc)
    orc.add_argument("--init", required=True, metavar="NAME", help="initial service name")
    orc.add_argument("--provided", default="", metavar="CSV")
    orc.add_argument("--required", default="", metavar="CSV")
    orc.set_defaults(handler=_cmd_oracle)

    return parser


def _load_catalog(path_str: str, forced_format: str | None) -> Catalog:
    path = Path(path_str)
    fmt = forced_format or ("json" if path.suffix.lower() == ".json" else "dsl")
    text = path.read_text(encoding="utf-8")
    if fmt == "json":
        return catalog_io.parse_catalog_json(text)
    return catalog_io.parse_catalog_text(text, default_name=path.stem)


def _cmd_build(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog, args.input_format)
    model = graph.build_model(catalog, args.init)
    if args.format == "dot":
        text = graph.to_dot(model)
    else:
        text = json.dumps(graph.model_to_dict(model), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _plan_line(plan: planner.Plan) -> str:
    return " -> ".join(plan.services) if plan.services else "(empty)"


def _executability_note(plan: planner.Plan, report: oracle.ExecutabilityReport) -> str:
    if report.executable:
        return "executable"
    gaps = [
        f"{gap.canonical()} @ {plan.services[i]}"
        for i, gap in sorted(report.missing.items())
        if gap
    ]
    return "missing: " + "; ".join(gaps)


def _cmd_plan(args: argparse.Namespace) -> int:
    if args.max_plans is not None and args.max_plans < 0:
        _err("--max-plans must be non-negative")
        return EXIT_INPUT
    catalog = _load_catalog(args.catalog, args.input_format)
    request = planner.Request(TypeSet.parse(args.provided), TypeSet.parse(args.required))
    model = graph.build_model(catalog, args.init)
    plans, stats = planner.find_plans(model, catalog, request, max_plans=args.max_plans)
    reports = None
    if args.check_executability:
        reports = [oracle.forward_executability(p.services, catalog, request.provided) for p in plans]
    if args.json:
        doc = planner.plans_to_dict(request, plans, stats)
        if reports is not None:
            for entry, report in zip(doc["plans"], reports):
                entry["executable"] = report.executable
                entry["missing"] = {str(i): gap.canonical() for i, gap in report.missing.items() if gap}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    for i, plan in enumerate(plans):
        line = _plan_line(plan)
        if reports is not None:
            line += f"  [{_executability_note(plan, reports[i])}]"
        print(line)
    if args.stats:
        print(f"states: {stats.states_explored}  solutions: {stats.solutions}")
    return EXIT_OK


def _cmd_affinity(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog, args.input_format)
    matrix = affinity.affinity_matrix(catalog)
    if args.json:
        doc = {
            "services": list(catalog.names),
            "matrix": [[None if v is None else str(v) for v in row] for row in matrix],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    for row in matrix:
        print(", ".join("-" if v is None else str(v) for v in row))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    catalog = _load_catalog(args.catalog, args.input_format)
    request = planner.Request(TypeSet.parse(args.provided), TypeSet.parse(args.required))
    model = graph.build_model(catalog, args.init)
    ok = True

    problems = graph.check_model(model)
    if problems:
        ok = False
        print("model-invariants: FAIL")
        for problem in problems:
            print(f"  {problem}")
    else:
        print("model-invariants: PASS")

    planned, _ = planner.find_plans(model, catalog, request)
    brute = oracle.enumerate_plans_bruteforce(model, catalog, request)
    if planned == brute:
        print(f"plan-equivalence: PASS ({len(planned)} plans)")
    else:
        ok = False
        print("plan-equivalence: FAIL")
        print("planner plans:")
        for plan in planned:
            print(f"  {_plan_line(plan)}")
        print("bruteforce plans:")
        for plan in brute:
            print(f"  {_plan_line(plan)}")
    return EXIT_OK if ok else EXIT_SEMANTIC


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # raised by --help (0) and by _Parser.error (1)
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except OSError as exc:
        _err(f"cannot read catalog: {exc}")
        return EXIT_INPUT
    except catalog_io.CatalogParseError as exc:
        for issue in exc.issues:
            _err(f"{args.catalog}:{issue.render()}")
        return EXIT_INPUT
    except TokenError as exc:
        _err(f"bad type list: {exc}")
        return EXIT_INPUT
    except (UnknownServiceError, planner.ModelCatalogMismatchError) as exc:
        _err(str(exc))
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
