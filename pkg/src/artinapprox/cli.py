"""Command line interface.

Exit codes: 0 property holds / positive result, 2 property refuted (a
certificate is printed), 3 input or parse error, 4 horizon or branch limit
exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .approxchain import (
    DEFAULT_BRANCH_LIMIT,
    counterexample_nonexistence,
    lift,
    obstruction_scan,
    stabilization_scan,
)
from .errors import ArtinError
from .grammar import format_scalar, parse_scalar_list
from .sysfile import format_beta, format_x_monomial, parse_field, parse_solution, parse_system
from .textile import TextileSystem, counterexample_solution, depend_bound, evaluate, first_failure

OK, REFUTED, INPUT_ERROR, LIMIT = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--report", choices=("text", "machine"), default="text")

    parser = _Parser(prog="artinapprox", description="Strong approximation toolkit for textile maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check G(y) = 0 mod (x)^N")
    p.add_argument("--system", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("obstruct", parents=[common], help="least N with no approximate solution")
    p.add_argument("--system", required=True)
    p.add_argument("--max-order", type=int, required=True)

    p = sub.add_parser("chain", parents=[common], help="closure chain J_N^k and stabilization")
    p.add_argument("--system", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("lift", parents=[common], help="lift degree by degree to an exact solution")
    p.add_argument("--system", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--branch-limit", type=int, default=DEFAULT_BRANCH_LIMIT)

    p = sub.add_parser("counterexample", parents=[common], help="reproduce the countable-field counterexample")
    p.add_argument("--alphas", required=True, help="comma-separated distinct scalars")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--field", default="Q")
    return parser


def _read_system(path):
    return parse_system(Path(path).read_text(encoding="utf-8"))


class _Out:
    def __init__(self, mode, stream):
        self.mode = mode
        self.stream = stream
        self.records = []

    def text(self, line):
        if self.mode == "text":
            print(line, file=self.stream)

    def record(self, key, value):
        self.records.append((key, value))

    def finish(self, command, code):
        if self.mode == "machine":
            print(f"command={command}", file=self.stream)
            for key, value in self.records:
                print(f"{key}={value}", file=self.stream)
            print(f"exit={code}", file=self.stream)
        return code


def _warn_field(field, err):
    diag = getattr(field, "diagnostics", None)
    if diag is not None:
        for w in diag().warnings:
            print(f"warning: {w}", file=err)


def cmd_verify(args, out, err):
    system = _read_system(args.system)
    _warn_field(system.field, err)
    D = depend_bound(system, args.order)
    y = parse_solution(
        Path(args.solution).read_text(encoding="utf-8"), system.n, system.m, system.field, cap=D
    )
    failure = first_failure(system, y, args.order)
    out.record("order", args.order)
    if failure is None:
        out.text(f"ORDER OK >= {args.order}")
        out.record("result", "ok")
        return OK
    j, beta, value = failure
    out.text(f"ORDER FAIL j={j} beta={format_beta(beta)} value={format_scalar(value)}")
    out.record("result", "fail")
    out.record("j", j)
    out.record("beta", format_beta(beta))
    out.record("value", format_scalar(value))
    return REFUTED


def cmd_obstruct(args, out, err):
    system = _read_system(args.system)
    _warn_field(system.field, err)
    found = obstruction_scan(system, args.max_order)
    if found is None:
        out.text(f"NONE <= {args.max_order}")
        out.record("obstruction", "none")
        out.record("max_order", args.max_order)
        return OK
    out.text(f"OBSTRUCTION N={found.N}")
    out.text(f"CERTIFICATE {found.certificate}")
    out.record("obstruction", found.N)
    out.record("certificate", str(found.certificate))
    return REFUTED


def cmd_chain(args, out, err):
    system = _read_system(args.system)
    _warn_field(system.field, err)
    report = stabilization_scan(system, args.k, args.max_order, workers=args.workers)
    for line in report.lines():
        out.text(line)
    for key, value in report.records():
        out.record(key, value)
    return OK if report.stabilized_at is not None else LIMIT


def cmd_lift(args, out, err):
    system = _read_system(args.system)
    _warn_field(system.field, err)
    result = lift(system, args.max_degree, branch_limit=args.branch_limit)
    for line in result.lines():
        out.text(line)
    for key, value in result.records():
        out.record(key, value)
    return {"exact": OK, "obstructed": REFUTED, "partial": LIMIT}[result.status]


def cmd_counterexample(args, out, err):
    field = parse_field(args.field)
    _warn_field(field, err)
    alphas = parse_scalar_list(args.alphas, field)
    N = args.order
    system = TextileSystem.counterexample(alphas, field)
    y = counterexample_solution(alphas, N, field)
    g = evaluate(system, y, N + 2)
    vanishes = all(g.coeff(1, (l,)) == 0 for l in range(N + 1))
    top = g.coeff(1, (N + 1,))
    certs = counterexample_nonexistence(alphas, field)
    all_hold = all(c.holds for c in certs)

    out.text(f"COUNTEREXAMPLE N={N} alphas={', '.join(format_scalar(a) for a in alphas)}")
    for line in str(y).splitlines():
        out.text(line)
    out.text(f"ORDER {'OK' if vanishes else 'FAIL'} >= {N + 1}")
    out.text(f"COEFF {format_x_monomial((N + 1,))} = {format_scalar(top)}")
    for c in certs:
        out.text(c.line())
    out.text(
        f"NONEXISTENCE {len(certs)} certificates {'all -1' if all_hold else 'NOT all -1'}; "
        "covers constant terms in the listed alphas only"
    )
    out.record("series", str(y).split(" = ", 1)[1])
    out.record("vanishes_through", N if vanishes else "no")
    out.record("failure_coeff", format_scalar(top))
    out.record("certificates", len(certs))
    for c in certs:
        out.record(f"cert.{c.l0}", format_scalar(c.specialized.constant_coeff()))
    return OK if vanishes and top == -1 and all_hold else REFUTED


COMMANDS = {
    "verify": cmd_verify,
    "obstruct": cmd_obstruct,
    "chain": cmd_chain,
    "lift": cmd_lift,
    "counterexample": cmd_counterexample,
}


def dispatch(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return INPUT_ERROR
    out = _Out(args.report, stdout)
    try:
        code = COMMANDS[args.command](args, out, stderr)
    except (ArtinError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        out.records = [("error", str(exc))]
        return out.finish(args.command, INPUT_ERROR)
    return out.finish(args.command, code)


def main(argv=None):
    sys.exit(dispatch(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
