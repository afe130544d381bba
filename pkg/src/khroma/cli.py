"""khroma: exact chromatic and dichromatic graph homology from the command line.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import BudgetExceeded, ChainMapError, DifferentialError, GraphParseError
from .graph import Graph, parse_graph

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _load(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit(obj, args, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_poly(args, G: Graph) -> int:
    from .polynomials import chromatic_classical, dichromatic_poly

    if args.kind == "chromatic":
        p = chromatic_classical(G)
    else:
        p = dichromatic_poly(G)
    _emit(p.to_json(), args, str(p))
    return EXIT_OK


def cmd_series(args, G: Graph) -> int:
    from .polynomials import chromatic_series, dichromatic_D_series

    if args.kind == "chromatic":
        s = chromatic_series(G, args.max_q)
    else:
        s = dichromatic_D_series(G, args.max_q)
    _emit(s.to_json(), args, str(s))
    return EXIT_OK


def cmd_homology(args, G: Graph) -> int:
    from .chromatic import chromatic_homology
    from .dichromatic import build_D_of_G

    if args.kind == "chromatic":
        table = chromatic_homology(G, args.max_q)
    else:
        table = build_D_of_G(G, args.max_q, workers=args.workers)
    _emit(table.to_json(), args, table.render())
    if args.figure:
        from .plotting import plot_homology

        plot_homology(table, args.figure)
    return EXIT_OK


def cmd_verify(args, G: Graph) -> int:
    from .verify import verify_graph

    results = verify_graph(G, args.max_q, seed=args.seed, workers=args.workers)
    if args.format == "json":
        print(json.dumps(
            {"checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
            indent=2,
        ))
    else:
        for r in results:
            print(r.line())
    if args.figure:
        from .plotting import plot_euler

        root, ext = os.path.splitext(args.figure)
        for r in results:
            if r.name.endswith("Euler characteristic") and r.reports:
                tag = r.name.split()[0] + "-euler"
                plot_euler(r.reports[0], f"{root}-{tag}{ext or '.png'}", title=r.name)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khroma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_q=True):
        p.add_argument("--format", choices=["table", "json"], default="table")
        if max_q:
            p.add_argument("--max-q", type=int, default=6, dest="max_q", help="q-truncation bound D")

    p = sub.add_parser("poly", help="print the chromatic or dichromatic polynomial")
    p.add_argument("kind", choices=["chromatic", "dichromatic"])
    p.add_argument("file")
    common(p, max_q=False)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("series", help="print the truncated series expansion")
    p.add_argument("kind", choices=["chromatic", "dichromatic"])
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("homology", help="print a homology dimension table")
    p.add_argument("kind", choices=["chromatic", "dichromatic"])
    p.add_argument("file")
    common(p)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--figure", help="also write a heatmap of the table to this image file")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", help="run every check and report PASS/FAIL")
    p.add_argument("file")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--figure", help="write Euler-characteristic bar charts next to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_q", 0) < 0:
        print("khroma: --max-q must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "workers", 1) < 1:
        print("khroma: --workers must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        G = _load(args.file)
    except OSError as exc:
        print(f"khroma: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except GraphParseError as exc:
        print(f"khroma: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, G)
    except BudgetExceeded as exc:
        print(f"khroma: {exc} (limiting parameter: {exc.parameter})", file=sys.stderr)
        return EXIT_BUDGET
    except (DifferentialError, ChainMapError) as exc:
        print(f"khroma: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
