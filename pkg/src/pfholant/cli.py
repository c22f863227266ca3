"""Command-line interface.

Exit codes: 0 success, 1 oracle disagreement or invalid order, 2 input
error, 3 the instance is outside the algorithm's hypotheses (not realizable,
parity mismatch, odd edge count).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import fileformat
from .errors import CapExceeded, HolantError, InstanceError, NotRealizable, OddEdgeCount, ParityMismatch
from .exact_algebra import format_rational
from .forests import FOREST_CAP, SimpleGraph, brute_force_forests, count_rooted_spanning_forests
from .generate import random_nae_instance
from .holant import (
    CONTRACTION_CAP,
    SAT_CAP,
    brute_force_contraction,
    brute_force_sat,
    count,
)
from .planar import VALIDATE_CAP, EdgeOrder, build_curve, c_order, generator_order, recognizer_order, validate_order
from .signatures import BasisChange

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3

DEFAULT_CAPS = {
    "contraction": CONTRACTION_CAP,
    "sat": SAT_CAP,
    "validate": VALIDATE_CAP,
    "forests": FOREST_CAP,
}


class UsageError(Exception):
    pass


def _caps(values):
    caps = dict(DEFAULT_CAPS)
    for item in values or ():
        name, sep, value = item.partition("=")
        if not sep or name not in caps:
            raise UsageError(f"bad --cap {item!r}; expected one of {sorted(caps)} as NAME=INT")
        try:
            caps[name] = int(value)
        except ValueError:
            raise UsageError(f"bad --cap value {value!r}") from None
    return caps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfholant", description="Exact holographic counting with Pfaffians.")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_command(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path")
        p.add_argument("--order-source", choices=("auto", "file"), default=None,
                       help="edge order: the constructed curve order, or the file's order directive "
                            "(default: file when present)")
        p.add_argument("--start-edge", default=None)
        p.add_argument("--reverse", action="store_true")
        p.add_argument("--cap", action="append", metavar="NAME=INT")
        p.add_argument("--json", action="store_true")
        return p

    p = instance_command("count", "count solutions")
    p.add_argument("--emit-matrix", action="store_true")
    p.add_argument("--oracle", choices=("contraction", "sat", "both"), default=None)
    p.add_argument("--workers", type=int, default=1)

    p = instance_command("oracle", "run the brute-force oracles and compare with count")
    p.add_argument("--oracle", choices=("contraction", "sat", "both"), default="both")
    p.add_argument("--workers", type=int, default=1)

    instance_command("matrix", "print tilde(z) + y")
    instance_command("validate", "certify the edge order")
    instance_command("curve", "print the separating curve and the induced orders")

    p = sub.add_parser("forests", help="count rooted spanning forests")
    p.add_argument("path")
    p.add_argument("--oracle", action="store_true", help="also run the enumeration oracle")
    p.add_argument("--cap", action="append", metavar="NAME=INT")

    p = sub.add_parser("generate", help="write a random planar NAE instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--clauses", type=int, default=4)
    p.add_argument("--max-vars", type=int, default=None)
    return parser


def _load_instance(args):
    parsed = fileformat.read(args.path)
    if isinstance(parsed, SimpleGraph):
        raise InstanceError("expected an instance file, got a forest graph")
    source = args.order_source or ("file" if parsed.order is not None else "auto")
    if source == "file":
        if parsed.order is None:
            raise UsageError("--order-source file needs an order directive in the file")
        if args.start_edge is not None or args.reverse:
            raise UsageError("--start-edge/--reverse only apply to the constructed curve order")
        order = parsed.order
    else:
        order = None
    return parsed, order


def _oracles(which, inst, caps, workers):
    out = {}
    if which in ("contraction", "both"):
        out["contraction"] = brute_force_contraction(inst, cap=caps["contraction"], workers=workers)
    if which in ("sat", "both"):
        out["sat"] = brute_force_sat(inst, cap=caps["sat"])
    return out


def _run(args, out) -> int:
    if args.command == "generate":
        inst = random_nae_instance(random.Random(args.seed), args.clauses, max_vars=args.max_vars)
        holo = fileformat.HoloFile(inst, BasisChange.b2(), None, "b2")
        out.write(fileformat.serialize(holo))
        return EXIT_OK

    caps = _caps(args.cap)
    if args.command == "forests":
        g = fileformat.read(args.path)
        if not isinstance(g, SimpleGraph):
            raise InstanceError("expected fvertex/fedge lines")
        n = count_rooted_spanning_forests(g)
        out.write(f"forests = {n}\n")
        if args.oracle:
            m = brute_force_forests(g, cap=caps["forests"])
            out.write(f"oracle = {m}\n")
            out.write("agreement: yes\n" if m == n else "agreement: NO\n")
            return EXIT_OK if m == n else EXIT_DISAGREE
        return EXIT_OK

    parsed, order = _load_instance(args)
    inst = parsed.instance
    kw = dict(order=order, start_edge=args.start_edge, reverse=args.reverse or None,
              validate_cap=caps["validate"])

    if args.command == "curve":
        curve = build_curve(inst)
        eo = c_order(curve, args.start_edge, args.reverse or None)
        out.write("curve: " + " ".join(curve.crossings) + "\n")
        out.write("order: " + " ".join(eo.sequence) + "\n")
        out.write("generator order: " + " ".join(generator_order(inst, eo)[0].sequence) + "\n")
        out.write("recognizer order: " + " ".join(recognizer_order(inst, eo)[0].sequence) + "\n")
        return EXIT_OK

    if args.command == "validate":
        eo = order if order is not None else c_order(build_curve(inst), args.start_edge, args.reverse or None)
        bad = validate_order(inst, EdgeOrder(eo.sequence, eo.kind), cap=caps["validate"])
        if bad is None:
            out.write("order: " + " ".join(eo.sequence) + "\nvalid\n")
            return EXIT_OK
        out.write(
            f"invalid: {bad.side} pairing {list(bad.pairing)} on edges {list(bad.index_set)}: "
            f"{bad.global_crossings} crossings globally, {bad.local_crossings} locally\n"
        )
        return EXIT_DISAGREE

    if args.command == "matrix":
        report = count(inst, parsed.basis, emit=True, **kw)
        out.write(report.matrix.to_text() + "\n")
        return EXIT_OK

    emit = args.command == "count" and args.emit_matrix
    report = count(inst, parsed.basis, emit=emit, **kw)
    which = args.oracle
    oracles = _oracles(which, inst, caps, args.workers) if which else {}
    agree = all(v == report.count for v in oracles.values())
    if args.json:
        doc = report.to_dict()
        if oracles:
            doc["oracles"] = {k: format_rational(v) for k, v in oracles.items()}
            doc["agreement"] = agree
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"count = {format_rational(report.count)}\n")
        if args.command == "count":
            out.write(f"alpha = {format_rational(report.alpha)}\n")
            out.write(f"beta = {format_rational(report.beta)}\n")
            out.write(f"pfaffian = {format_rational(report.pfaffian_value)}\n")
            out.write("order: " + " ".join(report.order.sequence) + "\n")
        for k, v in oracles.items():
            out.write(f"{k} = {format_rational(v)}\n")
        if oracles:
            out.write("agreement: yes\n" if agree else "agreement: NO\n")
        if emit:
            out.write(report.matrix.to_text() + "\n")
    return EXIT_OK if agree else EXIT_DISAGREE


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, out)
    except (NotRealizable, ParityMismatch, OddEdgeCount) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InstanceError, UsageError, CapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HolantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
