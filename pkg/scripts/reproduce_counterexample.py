"""Reproduce the countable-field counterexample for a prefix of alpha values.

For each N prints the order reached by y_N, the x^(N+1) coefficient, and
the nonexistence certificates.  Also lifts the system to show every branch
with constant term in the list dying.

    python3 scripts/reproduce_counterexample.py --count 8
"""

import argparse
import time

from artinapprox import QQ, TextileSystem, counterexample_nonexistence, counterexample_solution, evaluate, lift
from artinapprox.grammar import format_scalar
from artinapprox.sysfile import parse_field, parse_scalar_list


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=8, help="use alphas 0, 1, ..., count-1")
    ap.add_argument("--alphas", help="explicit comma-separated list (overrides --count)")
    ap.add_argument("--field", default="Q")
    ap.add_argument("--lift-degree", type=int, help="default: one more than the number of alphas")
    args = ap.parse_args()

    field = parse_field(args.field) if args.field != "Q" else QQ
    alphas = parse_scalar_list(args.alphas, field) if args.alphas else list(range(args.count))
    system = TextileSystem.counterexample(alphas, field)

    start = time.perf_counter()
    print(f"{'N':>3} {'order':>6} {'coeff x^(N+1)':>14}  y_N")
    for N in range(1, len(alphas)):
        y = counterexample_solution(alphas, N, field)
        g = evaluate(system, y, N + 2)
        order = g.order()
        top = g.coeff(1, (N + 1,))
        print(f"{N:>3} {order:>6} {format_scalar(top):>14}  {str(y).split(' = ', 1)[1]}")

    for cert in counterexample_nonexistence(alphas, field):
        print(cert.line())

    # the branch y1_0 = alpha_l dies at degree l + 2, so the last one needs len(alphas) + 1
    d = args.lift_degree or len(alphas) + 1
    res = lift(system, d)
    print(f"lift to degree {d}: {res.status} ({res.block_reason or ''}), {len(res.dead_ends)} dead ends")
    print(f"elapsed {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
