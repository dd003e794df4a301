"""Command-line entry points.

Exit status: 0 success or accepted, 1 rejected or refuted, 2 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .action_graph import to_dot
from .base_quotient import DEFAULT_VERTEX_BUDGET
from .certificate import DEFAULT_GROUP_ORDER_DEGREE, MalformedCertificate, build, load, save, verify
from .errors import BudgetExceeded, InadmissibleError, TuningError
from .oracle import achievable_pairs
from .words import Word, normalize_inputs

OK, REJECTED, BUDGET = 0, 1, 2


def _cmd_check(args) -> int:
    try:
        prob = normalize_inputs(Word.parse(args.u1), Word.parse(args.u2), args.p, 0)
    except (InadmissibleError, ValueError) as exc:
        print(f"inadmissible: {exc}")
        return REJECTED
    print(f"admissible: roots {prob.w1}^{prob.t1 * args.p ** prob.m1} "
          f"and {prob.w2}^{prob.t2 * args.p ** prob.m2}")
    return OK


def _cmd_build(args) -> int:
    trace_fh = open(args.trace, "w") if args.trace else None
    sink = (lambda line: print(line, file=trace_fh)) if trace_fh else None
    try:
        cert = build(args.u1, args.u2, args.p, args.n, max_degree=args.max_degree,
                     max_truncation=args.max_truncation,
                     group_order_degree=args.group_order_degree, trace_log=sink)
    except InadmissibleError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return REJECTED
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (TuningError, ValueError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return REJECTED
    finally:
        if trace_fh:
            trace_fh.close()
    for note in cert.notes:
        print(f"level lowered to p-action: {note}", file=sys.stderr)
    if args.out:
        save(cert, args.out)
    else:
        print(cert.to_json())
    print(f"degree {cert.degree} orders {cert.order_u1} {cert.order_u2} level {cert.level}",
          file=sys.stderr)
    return OK


def _cmd_verify(args) -> int:
    try:
        cert = load(args.file)
    except (OSError, MalformedCertificate) as exc:
        print(f"malformed certificate: {exc}")
        return REJECTED
    report = verify(cert)
    print(report)
    return OK if report.ok else REJECTED


def _cmd_oracle(args) -> int:
    pairs = sorted(achievable_pairs(args.u1, args.u2, args.p, args.max_order))
    print(json.dumps([list(pr) for pr in pairs]))
    return OK


def _cmd_export_dot(args) -> int:
    try:
        cert = load(args.inp)
    except (OSError, MalformedCertificate) as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return REJECTED
    with open(args.out, "w") as fh:
        fh.write(to_dot(cert.graph()))
    return OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pratio", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def words(sp):
        sp.add_argument("--u1", required=True, help="first word over x, y, X=x^-1, Y=y^-1")
        sp.add_argument("--u2", required=True, help="second word")
        sp.add_argument("-p", type=int, required=True, help="prime")

    sp = sub.add_parser("check", help="admissibility only")
    words(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("build", help="construct a certificate")
    words(sp)
    sp.add_argument("-n", type=int, required=True, help="target exponent: ord(u1)/ord(u2) = p^n")
    sp.add_argument("--max-degree", type=int, default=DEFAULT_VERTEX_BUDGET)
    sp.add_argument("--max-truncation", type=int, default=8)
    sp.add_argument("--group-order-degree", type=int, default=DEFAULT_GROUP_ORDER_DEGREE,
                    help="largest degree for which the full group order is computed")
    sp.add_argument("--out", help="certificate path (default: stdout)")
    sp.add_argument("--trace", help="write the tuner trace log here")
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("verify", help="re-check a certificate")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("oracle", help="order pairs over small catalog p-groups")
    words(sp)
    sp.add_argument("--max-order", type=int, default=16)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("export-dot", help="write a certificate's action graph as DOT")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
