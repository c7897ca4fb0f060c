"""Command-line front end.

Subcommands cover the whole public surface: ``dual``, ``ge``,
``trace``, ``arthur``, ``verify``, ``enumerate``, ``hasse``.  Inputs
are the text grammars of ``textfmt``; for ``enumerate`` and ``hasse``
the input multi-segment only fixes the support (a support is spelled
as the multi-segment of its singletons).

Results go to stdout, progress notes to stderr, so output stays
machine-parseable.  Exit codes: 0 success (including a "false" order
verdict), 1 verification found violations, 2 usage or parse or
constraint error, 3 enumeration bound exceeded.  The bound comes from
--bound, else the MSEG_BOUND environment variable, else 12.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .arthur import delta_psi, detect_arthur, verify_main_lemma
from .core import BoundExceededError, ConstraintError, DomainError, MsegError
from .involution import mw_dual, mw_trace
from .order import (
    DEFAULT_ENUMERATION_BOUND,
    build_poset,
    enumerate_support,
    ge,
    ge_path,
    poset_to_dot,
    poset_to_json_dict,
)
from .textfmt import DEFAULT_LABEL, parse_multisegment, parse_parameter

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


@dataclass(frozen=True)
class CliConfig:
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
    parallel: bool = False
    output_format: str = "text"

    def __post_init__(self):
        b = self.enumeration_bound
        if not isinstance(b, int) or isinstance(b, bool) or b < 1:
            raise ConstraintError(f"enumeration bound must be an integer >= 1, got {b!r}")


def _resolve_bound(args) -> int:
    bound = getattr(args, "bound", None)
    if bound is None:
        raw = os.environ.get("MSEG_BOUND")
        if raw is None:
            return DEFAULT_ENUMERATION_BOUND
        try:
            bound = int(raw)
        except ValueError:
            raise ConstraintError(f"MSEG_BOUND must be an integer, got {raw!r}") from None
    return bound


def _config(args) -> CliConfig:
    return CliConfig(
        enumeration_bound=_resolve_bound(args),
        parallel=getattr(args, "parallel", False),
        output_format=getattr(args, "format", "text"),
    )


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_dual(args) -> int:
    ms = parse_multisegment(args.input)
    dual = mw_dual(ms)
    if args.format == "json":
        _emit_json({"input": str(ms), "dual": str(dual)})
    else:
        print(dual)
    return EXIT_OK


def cmd_ge(args) -> int:
    a = parse_multisegment(args.a)
    b = parse_multisegment(args.b)
    verdict = ge(a, b)
    reason = None
    if not verdict and a.support() != b.support():
        reason = "support mismatch"
    witness = ge_path(a, b) if args.witness and verdict else None
    if args.format == "json":
        payload: dict = {"ge": verdict}
        if reason is not None:
            payload["reason"] = reason
        if witness is not None:
            payload["witness"] = [str(step) for step in witness]
        _emit_json(payload)
    else:
        print(f"false ({reason})" if reason else ("true" if verdict else "false"))
        if witness is not None:
            for step in witness:
                print(f"  {step}")
    return EXIT_OK


def cmd_trace(args) -> int:
    ms = parse_multisegment(args.input)
    rho = args.rho
    if rho is None:
        labels = ms.rhos()
        if len(labels) > 1:
            raise DomainError("multiple labels present; pass --rho")
        rho = labels[0] if labels else DEFAULT_LABEL
    trace = mw_trace(ms, rho)
    if args.format == "json":
        _emit_json(trace.to_json_dict())
    else:
        print(trace.to_text())
    return EXIT_OK


def cmd_arthur(args) -> int:
    ms = parse_multisegment(args.input)
    psi = detect_arthur(ms)
    if args.format == "json":
        _emit_json({"arthur": psi is not None, "parameter": None if psi is None else str(psi)})
    else:
        print("not arthur" if psi is None else psi)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _config(args)
    psi = parse_parameter(args.input)
    alpha = delta_psi(psi)
    print(f"checking {psi}: support of {psi.dim()} points", file=sys.stderr)
    report = verify_main_lemma(
        alpha, bound=config.enumeration_bound, parallel=config.parallel
    )
    if config.output_format == "json":
        _emit_json(report.to_json_dict())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    config = _config(args)
    support = parse_multisegment(args.input).support()
    tilings = enumerate_support(support, bound=config.enumeration_bound)
    if config.output_format == "json":
        _emit_json(
            {
                "support": str(support),
                "count": len(tilings),
                "multisegments": [str(t) for t in tilings],
            }
        )
    else:
        for tiling in tilings:
            print(tiling)
    return EXIT_OK


def cmd_hasse(args) -> int:
    config = _config(args)
    support = parse_multisegment(args.input).support()
    poset = build_poset(
        support, bound=config.enumeration_bound, parallel=config.parallel
    )
    arthur_nodes = tuple(
        i for i, node in enumerate(poset.nodes) if detect_arthur(node.ms) is not None
    )
    if config.output_format == "dot":
        print(poset_to_dot(poset, highlight=arthur_nodes))
    elif config.output_format == "json":
        payload = poset_to_json_dict(poset)
        payload["arthur"] = list(arthur_nodes)
        _emit_json(payload)
    else:
        marked = set(arthur_nodes)
        for i, node in enumerate(poset.nodes):
            star = " *" if i in marked else ""
            print(f"{i}: {node.ms} (rank {node.rank}){star}")
        for parent, child in poset.covers:
            print(f"{parent} -> {child}")
    return EXIT_OK


def _add_format(parser, choices, default) -> None:
    parser.add_argument(
        "--format", choices=choices, default=default, help=f"output format (default {default})"
    )


def _add_bound(parser) -> None:
    parser.add_argument(
        "--bound",
        type=int,
        default=None,
        metavar="N",
        help="max support points per translation class (default: MSEG_BOUND or 12)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mseg",
        description="Exact multi-segment combinatorics: duality, partial order, "
        "Arthur-type detection, and exhaustive verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", help="print the dual multi-segment")
    p.add_argument("input", help="multi-segment text, e.g. 'rho:[0,1]+[2,2]'")
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("ge", help="decide whether B is reachable from A")
    p.add_argument("a", help="multi-segment text")
    p.add_argument("b", help="multi-segment text")
    p.add_argument("--witness", action="store_true", help="print an operation chain when true")
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_ge)

    p = sub.add_parser("trace", help="show the extraction trace of one label's block")
    p.add_argument("input", help="multi-segment text")
    p.add_argument("--rho", default=None, metavar="LABEL", help="block to trace (required when several labels appear)")
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("arthur", help="detect Arthur type and print the parameter")
    p.add_argument("input", help="multi-segment text")
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_arthur)

    p = sub.add_parser("verify", help="exhaustively verify the rigidity of a parameter")
    p.add_argument("input", help="parameter text, e.g. 'rho:(1,1)+(0,2)'")
    _add_bound(p)
    p.add_argument("--parallel", action="store_true", help="check candidates in parallel")
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list every multi-segment on the input's support")
    p.add_argument("input", help="multi-segment text (only its support matters)")
    _add_bound(p)
    _add_format(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hasse", help="emit the cover diagram of the input's support")
    p.add_argument("input", help="multi-segment text (only its support matters)")
    _add_bound(p)
    p.add_argument("--parallel", action="store_true", help="build edges in parallel")
    _add_format(p, ("text", "json", "dot"), "dot")
    p.set_defaults(func=cmd_hasse)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BoundExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except MsegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
