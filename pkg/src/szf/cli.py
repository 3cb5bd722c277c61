"""Command-line interface.

Subcommands: ``graph`` (forcing numbers of a graph via its z-pattern),
``pattern`` (same for a .pat file), ``scan`` (batch over a graph6
catalogue), ``bounds`` (clique-cover bound and closed forms), ``verify``
(sampled semantic checks of a forcing set), ``gen`` (generators).

All vertex numbering on this surface is 1-based.  Exit codes: 0 success,
1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bitset import mask_from_one_based, one_based
from .bounds import cc_nullity_lower_bound, clique_cover_number, known_formulas
from .engine import (
    BranchCertificate,
    Transcript,
    verify_branch_certificate,
    verify_transcript,
)
from .graphs import (
    Graph,
    Graph6Error,
    complete_graph,
    hypercube,
    line_graph,
    parse_graph6,
    random_tree,
    serialize_graph6,
)
from .minimize import branched_number, signed_zero_forcing_number, zero_forcing_number
from .oracle import verify_nullity_bound
from .patterns import (
    PatternError,
    hadamard_pattern,
    parse_pattern,
    serialize_pattern,
    z_pattern_of_graph,
)
from .scan import FilterError, records_to_csv, records_to_jsonl, scan_catalogue


class CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    text = _read_text(path)
    for line in text.splitlines():
        if line.strip():
            return parse_graph6(line.strip())
    raise CliError(f"{path} contains no graph6 record")


def _load_pattern(path: str):
    return parse_pattern(_read_text(path))


def _parse_vertex_set(text: str) -> int:
    try:
        vertices = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise CliError(f"bad vertex list {text!r}") from exc
    if any(v < 1 for v in vertices):
        raise CliError("vertex lists are 1-based")
    return mask_from_one_based(vertices)


def transcript_dot(t: Transcript) -> str:
    """DOT digraph of a play: blackenings and marks as labelled arcs."""
    lines = ["digraph forcing {"]
    for v in one_based(t.initial):
        lines.append(f'  "{v}" [style=filled fillcolor=gray];')
    for k, inst in enumerate(t.moves, start=1):
        pivot = inst.pivot + 1
        if inst.blacken is not None:
            for w in one_based(inst.blacken):
                lines.append(f'  "{pivot}" -> "{w}" [label="{k}:{inst.clause}"];')
        else:
            v, s = inst.mark
            lines.append(f'  "{pivot}" -> "{v + 1}" [label="{k}:{inst.clause}{s.value}" style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_certificate(args, label: str, value: int, witness_mask: int, cert) -> None:
    cert_json = cert.to_json() if cert is not None else None
    if args.json:
        obj = {
            label: value,
            "witness": one_based(witness_mask),
            "certificate": cert_json,
        }
        print(json.dumps(obj, sort_keys=True))
    else:
        print(f"{label} = {value}")
        if cert_json is not None:
            print(json.dumps(cert_json, sort_keys=True))
    if getattr(args, "emit_dot", None) and isinstance(cert, Transcript):
        with open(args.emit_dot, "w", encoding="ascii") as fh:
            fh.write(transcript_dot(cert))


def _run_modes(args, pattern, graph=None) -> None:
    mode = args.mode
    if mode == "classical":
        if graph is None:
            raise CliError("classical mode needs a graph input")
        res = zero_forcing_number(graph)
        _emit_certificate(args, "Z", res.value, res.witness, res.certificate)
    elif mode == "signed":
        res = signed_zero_forcing_number(pattern, share_memo=args.prune)
        _emit_certificate(args, "Z_signed", res.value, res.witness, res.certificate)
    else:
        res = branched_number(pattern, args.max_splits, share_memo=args.prune)
        _emit_certificate(args, "Z_branched", res.value, res.witness, res.certificate)


def cmd_graph(args) -> int:
    g = _load_graph(args.input)
    _run_modes(args, z_pattern_of_graph(g), graph=g)
    return 0


def cmd_pattern(args) -> int:
    p = _load_pattern(args.input)
    _run_modes(args, p)
    return 0


def cmd_scan(args) -> int:
    errors: list = []
    records = list(
        scan_catalogue(
            args.input,
            args.filter or (),
            mode=args.mode,
            max_splits=args.max_splits,
            timeout=args.timeout_per_graph,
            threads=args.threads,
            strict=args.strict,
            prune=args.prune,
            errors_out=errors,
        )
    )
    if args.json:
        sys.stdout.write(records_to_jsonl(records, timing=args.timing))
    else:
        sys.stdout.write(records_to_csv(records, timing=args.timing))
    for lineno, msg in errors:
        print(f"skipped line {lineno}: {msg}", file=sys.stderr)
    connected = sum(1 for r in records if r.connected)
    print(
        f"scanned {len(records)} graphs ({connected} connected) matching the filters",
        file=sys.stderr,
    )
    return 0


def cmd_bounds(args) -> int:
    if args.closed_form:
        family, k = args.closed_form
        value = known_formulas(family, int(k))
        if args.json:
            print(json.dumps({"family": family, "parameter": int(k), "Z": value}, sort_keys=True))
        else:
            print(f"Z({family}, {k}) = {value}")
        return 0
    if not args.input:
        raise CliError("bounds needs --input or --closed-form")
    g = _load_graph(args.input)
    cc, cover = clique_cover_number(g)
    bound = cc_nullity_lower_bound(g)
    if args.json:
        obj = {
            "n": g.n,
            "cc": cc,
            "cc_bound": bound,
            "cover": [one_based(c) for c in cover.cliques],
        }
        print(json.dumps(obj, sort_keys=True))
    else:
        print(f"cc = {cc}")
        print(f"nullity lower bound n - cc = {bound}")
    return 0


def cmd_verify(args) -> int:
    p = _load_pattern(args.pattern)
    s_mask = _parse_vertex_set(args.set)
    report = verify_nullity_bound(p, s_mask, trials=args.trials, seed=args.seed)
    if args.json:
        obj = {
            "trials": report.trials,
            "failures": report.failures,
            "vanishing_failures": report.vanishing_failures,
            "marker_failures": report.marker_failures,
        }
        print(json.dumps(obj, sort_keys=True))
    else:
        print(report.summary())
    return 0 if report.ok else 1


_GEN_FAMILIES = ("complete", "hypercube", "lkn", "tree", "hadamard")


def cmd_gen(args) -> int:
    family = args.family
    k = args.parameter
    if family == "complete":
        g = complete_graph(k)
    elif family == "hypercube":
        g = hypercube(k)
    elif family == "lkn":
        g = line_graph(complete_graph(k))[0]
    elif family == "tree":
        g = random_tree(k, args.seed)
    elif family == "hadamard":
        if args.format == "g6":
            raise CliError("hadamard is a sign pattern; use --format pat")
        sys.stdout.write(serialize_pattern(hadamard_pattern(k)))
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown family {family}")
    if args.format == "pat":
        sys.stdout.write(serialize_pattern(z_pattern_of_graph(g)))
    else:
        print(serialize_graph6(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szf",
        description="Zero forcing and signed zero forcing numbers with machine-checkable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, timeoutable=False):
        sp.add_argument("--mode", choices=["classical", "signed", "branched"], default="signed")
        sp.add_argument("--max-splits", type=int, default=1)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--prune", action="store_true", help="share failure memo across subset sweeps")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("graph", help="forcing numbers of a graph6 input via its z-pattern")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.add_argument("--emit-dot", metavar="PATH", help="write the winning transcript as DOT")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("pattern", help="forcing numbers of a .pat sign pattern")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.add_argument("--emit-dot", metavar="PATH")
    sp.set_defaults(func=cmd_pattern)

    sp = sub.add_parser("scan", help="scan a newline-delimited graph6 catalogue")
    sp.add_argument("--input", required=True)
    common(sp)
    sp.add_argument("--filter", action="append", metavar="EXPR",
                    help="signed<classical | connected | n<=K (repeatable)")
    sp.add_argument("--timeout-per-graph", type=float, default=60.0, metavar="SECONDS")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--strict", action="store_true", help="abort on malformed records")
    sp.add_argument("--timing", action="store_true",
                    help="fill elapsed_ms (breaks byte-identical output)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("bounds", help="clique-cover nullity bound / closed forms")
    sp.add_argument("--input")
    sp.add_argument("--closed-form", nargs=2, metavar=("FAMILY", "N"),
                    help="FAMILY in {line_of_complete, hypercube}")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify", help="sampled semantic verification of a forcing set")
    sp.add_argument("--pattern", required=True, metavar="PATH")
    sp.add_argument("--set", required=True, metavar="VERTICES", help="1-based, e.g. 1,2")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="graph/pattern generators")
    sp.add_argument("family", choices=_GEN_FAMILIES)
    sp.add_argument("parameter", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["g6", "pat"], default="g6")
    sp.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None and args.command == "scan":
        args.threads = int(os.environ.get("SZF_THREADS", "1"))
    try:
        return args.func(args)
    except (CliError, Graph6Error, PatternError, FilterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
