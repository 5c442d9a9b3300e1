"""Command line interface: ``raagkit <command> ...``.

Exit codes: 0 success, 1 mathematical error (for instance a complete graph
where a non-abelian group is required, or a rejected certificate), 2 usage
or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from raagkit.commensurator import main_lemma_certificate, verify_certificate
from raagkit.errors import GraphError, RaagError, UnknownVertexError, WordParseError
from raagkit.graph import DefiningGraph, parse_graph
from raagkit.invariants import (
    SurfaceType,
    compare_raags,
    format_report,
    obstruction_report,
    raag_invariants,
    to_json,
)
from raagkit.subgroups import grow_to, kernel_generators, verify_construction
from raagkit.words import format_word, normal_form, parse_word


class UsageError(Exception):
    pass


def _load_graph(path: str) -> DefiningGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _show_word(w) -> str:
    return format_word(w) or "1"


def cmd_info(args, out):
    g = _load_graph(args.graph)
    inv = raag_invariants(g)
    if args.json:
        out.write(to_json(inv.to_dict()) + "\n")
    else:
        for key, value in inv.to_dict().items():
            out.write(f"{key}: {str(value).lower() if isinstance(value, bool) else value}\n")


def cmd_normal_form(args, out):
    g = _load_graph(args.graph)
    try:
        w = parse_word(" ".join(args.word))
        nf = normal_form(g, w)
    except (WordParseError, UnknownVertexError) as exc:
        raise UsageError(str(exc)) from None
    out.write(_show_word(nf) + "\n")


def cmd_subgroup(args, out):
    g = _load_graph(args.graph)
    if args.vertex not in g:
        raise UsageError(f"unknown vertex {args.vertex!r}")
    if args.index < 1:
        raise UsageError("--index must be positive")
    gc = kernel_generators(g, args.vertex, args.index)
    record = {
        **gc.summary(),
        "glued": gc.glued.to_dict(),
        "generators": {p: _show_word(img) for p, img in gc.generator_map.items()},
        "warnings": list(gc.warnings),
    }
    report = None
    if args.verify is not None:
        report = verify_construction(gc, args.verify, args.seed)
        record["verification"] = report.to_dict()
    if args.json:
        out.write(json.dumps(record, indent=2) + "\n")
    else:
        out.write(f"kernel of {args.vertex} -> 1 mod {args.index}: index {gc.index}, "
                  f"{len(gc.glued)} vertices, {len(gc.glued.edges)} edges\n")
        out.write(gc.glued.to_text())
        for p, img in gc.generator_map.items():
            out.write(f"  {p} = {_show_word(img)}\n")
        for warning in gc.warnings:
            out.write(f"warning: {warning}\n")
        if report is not None:
            out.write(f"verification: {report.edges_checked} edges, {report.nonedges_checked} non-edges, "
                      f"{report.kernel_membership} kernel checks, {report.roundtrips} round trips, "
                      f"{len(report.failures)} failures\n")
            for f in report.failures:
                out.write(f"  FAIL {f['kind']}: {' '.join(f['witness'])}\n")
    if report is not None and not report.ok:
        return 1
    return 0


def cmd_grow(args, out):
    g = _load_graph(args.graph)
    if args.target < 1:
        raise UsageError("--target must be positive")
    chain = grow_to(g, args.target)
    if args.json:
        out.write(json.dumps({
            "steps": [s.summary() for s in chain.steps],
            "vertex_counts": chain.vertex_counts(),
            "total_index": chain.total_index,
            "final": chain.final.to_dict(),
        }, indent=2) + "\n")
    else:
        out.write(f"vertex counts: {' -> '.join(map(str, chain.vertex_counts()))}\n")
        for s in chain.steps:
            out.write(f"  glue at {s.v} with m = {s.m}: {len(s.base)} -> {len(s.glued)} vertices\n")
        out.write(f"total index: {chain.total_index}\n")


def cmd_certificate(args, out):
    g = _load_graph(args.graph)
    if args.k < 1:
        raise UsageError("--k must be positive")
    cert = main_lemma_certificate(g, args.k)
    text = cert.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        out.write(f"certificate for (Z/2Z)^{cert.group_order_exponent} written to {args.out}\n")
    else:
        out.write(text)


def cmd_verify(args, out):
    try:
        data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.certificate}: invalid JSON: {exc}") from None
    problems = verify_certificate(data)
    if problems:
        out.write("REJECTED\n")
        for p in problems:
            out.write(f"  {p}\n")
        return 1
    out.write(f"OK: (Z/2Z)^{data['k']} verified\n")
    return 0


def cmd_mcg(args, out):
    if args.genus < 0 or args.punctures < 0:
        raise UsageError("genus and punctures must be nonnegative")
    report = obstruction_report(SurfaceType(args.genus, args.punctures))
    out.write(to_json(report) + "\n" if args.json else format_report(report))


def cmd_compare(args, out):
    g1, g2 = _load_graph(args.graph1), _load_graph(args.graph2)
    report = compare_raags(g1, g2)
    if args.json:
        out.write(to_json(report) + "\n")
    else:
        out.write(f"{report['verdict']}: {report['reason']}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raagkit", description="Right-angled Artin group toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="clique number, vcd, center rank")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("normal-form", help="canonical form of a word")
    p.add_argument("graph")
    p.add_argument("word", nargs="+", help="tokens x, x^-1 or x^k")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("subgroup", help="kernel of v -> 1 mod m as a glued graph")
    p.add_argument("graph")
    p.add_argument("--vertex", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--verify", type=int, metavar="N", help="also verify with N sampled round trips")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("grow", help="glue until the graph has at least K vertices")
    p.add_argument("graph")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("certificate", help="certify (Z/2Z)^K inside Comm(A)")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("verify", help="re-validate a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mcg", help="RAAG commensurability verdict for Mod(S_{g,n})")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mcg)

    p = sub.add_parser("compare", help="necessary-condition comparison of two RAAGs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out) or 0
    except UsageError as exc:
        err.write(f"raagkit {args.command}: {exc}\n")
        parser.print_usage(err)
        return 2
    except (RaagError, ValueError) as exc:
        err.write(f"raagkit {args.command}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
