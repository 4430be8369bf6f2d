"""Command-line front end: ``realize``, ``verify``, ``decompose``, ``census``.

Exit codes: 0 when every audit passes, 1 when an audit fails, 2 on bad
input.  Numbers are printed as exact fractions; the only decimal output is
the size ratio, which is labelled approximate.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .cf import format_rational, parse_rational
from .construct import (
    STRATEGIES,
    ConstructorConfig,
    RouteNotApplicable,
    audit_graph,
    census,
    census_targets,
    realize,
    sample_numerators,
)
from .decompose import DEFAULT_MAX_DEN, DEFAULT_MAX_QUOTIENT, DEFAULT_MAX_TERMS, decompose_search
from .sp import MarkedGraph
from .tau import tau, tau_contract, tau_delete

EXIT_OK, EXIT_AUDIT, EXIT_INPUT = 0, 1, 2

CSV_COLUMNS = ("t", "c", "strategy", "V", "E", "bound_value", "size_ratio")


class InputError(Exception):
    pass


def _target(text: str) -> Fraction:
    try:
        num, sep, den = text.strip().partition("/")
        q = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    if sep and Fraction(int(num), int(den)).numerator != int(num):
        raise InputError(f"{text} is not a reduced fraction")
    return q


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.quiet:
        return
    if args.json_out:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def cmd_realize(args) -> int:
    target = _target(args.target)
    if not 0 < target < 1:
        raise InputError(f"target must satisfy t > c >= 1, got {args.target}")
    try:
        cert = realize(target, ConstructorConfig(), args.strategy)
    except RouteNotApplicable as exc:
        raise InputError(str(exc)) from None
    data = cert.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(cert.graph.to_dot())
    lines = [
        f"target      {format_rational(cert.target)}",
        f"t, c        {cert.target.denominator}, {cert.target.numerator}",
        f"resistance  {format_rational(cert.resistance)}",
        f"|V|, |E|    {cert.v_count}, {cert.e_count}",
        f"strategy    {cert.strategy}",
        f"size_ratio  {format_rational(cert.size_ratio)} (approx. {float(cert.size_ratio):.3f})",
        f"all audits  {'pass' if cert.ok else 'FAIL: ' + ', '.join(cert.failed())}",
    ]
    _emit(args, data, lines)
    return EXIT_OK if cert.ok else EXIT_AUDIT


def _load_graph(path: str) -> MarkedGraph:
    try:
        with open(path) as fh:
            data = json.load(fh)
        if "graph" in data:  # a certificate written by ``realize``
            data = data["graph"]
        return MarkedGraph.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read graph from {path}: {exc}") from None


def cmd_verify(args) -> int:
    graph = _load_graph(args.graph)
    target = _target(args.target)
    if not 0 < target < 1:
        raise InputError(f"target must satisfy t > c >= 1, got {args.target}")
    taus = (tau(graph), tau_delete(graph), tau_contract(graph))
    audits = audit_graph(graph, target, taus)
    ok = all(a.passed for a in audits)
    payload = {
        "target": format_rational(target),
        "tau_g": taus[0],
        "tau_del": taus[1],
        "tau_con": taus[2],
        "audits": [a.to_json() for a in audits],
        "all_pass": ok,
    }
    lines = [f"tau(G) = {taus[0]}, tau(G-e) = {taus[1]}, tau(G/e) = {taus[2]}"]
    lines += [f"{'pass' if a.passed else 'FAIL'}  {a.name}" for a in audits]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_AUDIT


def cmd_decompose(args) -> int:
    target = _target(args.target)
    if not 0 <= target < 1:
        raise InputError(f"decomposition targets lie in [0, 1), got {args.target}")
    dec = decompose_search(target, args.max_den, args.max_quotient, args.max_terms)
    data = dec.to_json()
    if args.json:
        args.json_out = True
    lines = [f"{format_rational(target)} = {' + '.join(data['parts']) or '0'}   (cost {dec.cost})"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_census(args) -> int:
    if args.max_t < 2:
        raise InputError("--max-t must be at least 2")
    sampler = sample_numerators(args.sample, args.seed) if args.sample else None
    targets = census_targets(args.max_t, sampler)
    result = census(args.max_t, ConstructorConfig(), targets=targets, workers=args.workers)
    rows, summary = result["rows"], result["summary"]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                if not r["ok"] and "V" not in r:
                    writer.writerow([r["t"], r["c"], "error", "", "", "", ""])
                    continue
                writer.writerow([r["t"], r["c"], r["strategy"], r["V"], r["E"],
                                 format_rational(r["bound_value"]), format_rational(r["size_ratio"])])
    max_ratio = summary["max_size_ratio"]
    mean_ratio = summary["mean_size_ratio"]
    payload = {
        "count": summary["count"],
        "failures": summary["failures"],
        "max_size_ratio": format_rational(max_ratio) if max_ratio is not None else None,
        "mean_size_ratio": format_rational(mean_ratio) if mean_ratio is not None else None,
    }
    lines = [f"targets   {summary['count']}", f"failures  {summary['failures']}"]
    if max_ratio is not None:
        lines.append(f"max size_ratio   {format_rational(max_ratio)} (approx. {float(max_ratio):.3f})")
        lines.append(f"mean size_ratio  approx. {float(mean_ratio):.3f}")
    _emit(args, payload, lines)
    return EXIT_OK if summary["failures"] == 0 else EXIT_AUDIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planar-resistance", description=__doc__.splitlines()[0])
    parser.add_argument("--json", dest="json_out", action="store_true", help="print machine-readable JSON")
    parser.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit code")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="build a graph with effective resistance c/t")
    p.add_argument("target", help="c/t with t > c >= 1, reduced")
    p.add_argument("--json", metavar="OUT", help="write the certificate JSON here")
    p.add_argument("--dot", metavar="OUT", help="write a DOT drawing here (marked edge bold)")
    p.add_argument("--strategy", choices=(*STRATEGIES, "portfolio"), default="portfolio")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="audit a graph JSON file against a target c/t")
    p.add_argument("graph")
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="split d/c in [0, 1) into cheap signed summands")
    p.add_argument("target")
    p.add_argument("--max-den", type=int, default=DEFAULT_MAX_DEN)
    p.add_argument("--max-quotient", type=int, default=DEFAULT_MAX_QUOTIENT)
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.add_argument("--json", action="store_true", help="print {target, parts, cost} as JSON")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("census", help="realize every reduced c/t with t <= N")
    p.add_argument("--max-t", type=int, required=True)
    p.add_argument("--csv", metavar="OUT")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--sample", type=int, default=0, help="use at most this many numerators per t")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
