"""Command-line entry point: ``dagcross {solve,verify,oracle,gen,normalize}``.

Exit codes: 0 embedding / no linkage / accepted, 10 cross or linkage found,
2 invalid input or refusal, 11 certificate rejected.  Diagnostics go to standard
error as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import CrossCertificate, DiscEmbedding, verify_cross, verify_embedding
from .documents import (
    check_kind,
    dump_certificate,
    dump_graph,
    load_certificate,
    read_graph,
    step_json,
)
from .engine import solve
from .errors import InvalidInstance, LinkageError
from .generator import GenConfig, GenMode, generate
from .normalize import GeneralCertificate, GeneralInstance, decide_linkage, normalize, verify_general
from .oracle import brute_force_cross, dag_two_disjoint_paths
from .render import render_svg

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FOUND = 10
EXIT_REJECT = 11


class Refusal(LinkageError):
    """The command declines to run on this input."""


def diag(level: str, message: str, **extra) -> None:
    record = {"level": level, "message": message, **extra}
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _graph(args):
    doc = read_graph(_read(args.input))
    general = isinstance(doc, GeneralInstance)
    if args.general and not general:
        raise Refusal("--general needs a document with terminals a, b, c, d")
    if args.strict and general:
        raise Refusal("--strict needs a document with source and sink sequences")
    return doc


def cmd_solve(args) -> int:
    doc = _graph(args)
    if isinstance(doc, GeneralInstance):
        res = decide_linkage(doc)
        _write(args.out, dump_certificate(GeneralCertificate.from_result(res)))
        if args.svg:
            kernel = res.kernel.instance
            if kernel is None:
                diag("warning", "no kernel to draw: " + str(res.kernel.no_linkage))
            else:
                cross = res.certificate if isinstance(res.certificate, CrossCertificate) else None
                _write(args.svg, render_svg(kernel, cross))
        return EXIT_FOUND if res.linked else EXIT_OK
    outcome = solve(doc)
    _write(args.out, dump_certificate(outcome))
    if args.svg:
        _write(args.svg, render_svg(doc, outcome if isinstance(outcome, CrossCertificate) else None))
    return EXIT_FOUND if isinstance(outcome, CrossCertificate) else EXIT_OK


def cmd_verify(args) -> int:
    doc = read_graph(_read(args.graph))
    cert = load_certificate(_read(args.certificate))
    check_kind(doc, cert)
    if isinstance(cert, CrossCertificate):
        report = verify_cross(doc, cert)
    elif isinstance(cert, DiscEmbedding):
        report = verify_embedding(doc, cert)
    else:
        report = verify_general(doc, cert)
    verdict = {"verdict": "accept" if report.ok else "reject", "failures": list(report.problems)}
    sys.stdout.write(json.dumps(verdict) + "\n")
    for problem in report.problems:
        diag("error", problem, code="reject")
    return EXIT_OK if report.ok else EXIT_REJECT


def cmd_oracle(args) -> int:
    doc = _graph(args)
    if isinstance(doc, GeneralInstance):
        found = dag_two_disjoint_paths(doc.graph, *doc.terminals)
        result = {"oracle": "two-pebble", "linkage": found is not None}
        if found:
            result["paths"] = [list(p) for p in found]
        sys.stdout.write(json.dumps(result) + "\n")
        return EXIT_FOUND if found else EXIT_OK
    if len(doc.graph) > args.max_vertices:
        raise Refusal(f"graph has {len(doc.graph)} vertices, exhaustive search is capped at {args.max_vertices}")
    cross = brute_force_cross(doc)
    result = {"oracle": "exhaustive", "cross": cross is not None}
    if cross:
        result["paths"] = [list(cross.p), list(cross.q)]
        result["indices"] = [list(cross.p_ends), list(cross.q_ends)]
    sys.stdout.write(json.dumps(result) + "\n")
    return EXIT_FOUND if cross else EXIT_OK


def cmd_gen(args) -> int:
    cfg = GenConfig(
        n=args.n, density=args.density, k=args.k, ell=args.ell, seed=args.seed, mode=GenMode(args.mode)
    )
    _write(args.out, dump_graph(generate(cfg)))
    return EXIT_OK


def cmd_normalize(args) -> int:
    doc = _graph(args)
    if not isinstance(doc, GeneralInstance):
        raise Refusal("normalize expects a general document (terminals a, b, c, d)")
    kernel = normalize(doc)
    if args.trace:
        steps = [json.dumps(step_json(s)) for s in kernel.trace]
        _write(args.trace, "\n".join(steps) + ("\n" if steps else ""))
    if kernel.instance is None:
        diag("info", "no linkage: " + kernel.no_linkage, verdict="no-linkage")
        return EXIT_OK
    _write(args.out, dump_graph(kernel.instance))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dagcross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("input", help="graph document (JSON or DOT), '-' for stdin")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--strict", action="store_true", help="require source/sink sequences")
        group.add_argument("--general", action="store_true", help="require terminals a, b, c, d")

    p = sub.add_parser("solve", help="find a cross or a disc embedding")
    graph_input(p)
    p.add_argument("--out", help="certificate path (default stdout)")
    p.add_argument("--svg", help="also write a drawing here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="answer with an independent reference method")
    graph_input(p)
    p.add_argument("--max-vertices", type=int, default=14)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--mode", choices=[m.value for m in GenMode], default=GenMode.CANONICAL.value)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("normalize", help="reduce a general instance to its canonical kernel")
    graph_input(p)
    p.add_argument("--out", help="kernel graph document (default stdout)")
    p.add_argument("--trace", help="write the reduction steps here, one JSON list per line")
    p.set_defaults(func=cmd_normalize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInstance as exc:
        for problem in exc.report.problems:
            diag("error", problem, error="InvalidInstance")
        return EXIT_INVALID
    except (LinkageError, OSError) as exc:
        diag("error", str(exc), error=type(exc).__name__)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
