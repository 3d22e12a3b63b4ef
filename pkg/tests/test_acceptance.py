"""Acceptance criteria, each run at its stated tolerance and time bound.

Every criterion records one ``CRITERION n: PASS|FAIL ...`` line in
``RESULTS``; the lines are printed at the end of a pytest run and when the
module is executed directly (``python3 tests/test_acceptance.py``).
"""

import random
import sys
import time
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from artinapprox.approxchain import (  # noqa: E402
    counterexample_nonexistence,
    lift,
    obstruction_scan,
    stabilization_scan,
)
from artinapprox.exactfield import QQ  # noqa: E402
from artinapprox.grammar import parse_poly  # noqa: E402
from artinapprox.groebner import (  # noqa: E402
    buchberger,
    eliminate,
    ideal_member,
    is_groebner,
    is_reduced,
    s_polynomial,
)
from artinapprox.multipoly import GREVLEX, LEX, PolyRing, substitute  # noqa: E402
from artinapprox.textile import (  # noqa: E402
    TextileSystem,
    TruncatedSeries,
    coeff_var_name,
    counterexample_solution,
    evaluate,
    extract_coeffs,
    indices_below,
)
from oracles import (  # noqa: E402
    binomial_sqrt_coeffs,
    brute_force_compose,
    newton_sqrt,
    poly_from_roots,
    projection_witnesses,
    sqrt_x_order2_grid,
    univariate_vanishes_on,
)

pytestmark = pytest.mark.acceptance

RESULTS = {}


def _composition(text, n=1, m=1):
    ring = PolyRing([f"x{j}" for j in range(1, n + 1)] + [f"y{i}" for i in range(1, m + 1)], QQ)
    return TextileSystem.composition([parse_poly(text, ring)], n, m)


def _run(number, title, bound, check):
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # a crash is a failure with its message kept
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    in_time = elapsed < bound
    status = "PASS" if ok and in_time else "FAIL"
    timing = f"{elapsed:.2f}s < {bound}s" if in_time else f"{elapsed:.2f}s exceeds {bound}s"
    RESULTS[number] = f"CRITERION {number}: {status} {title} ({timing}) {detail}"
    print(RESULTS[number])
    return ok and in_time, RESULTS[number]


# -- 1: counterexample reproduction --

ALPHAS_13 = list(range(13))


def check_reproduction():
    sys_ = TextileSystem.counterexample(ALPHAS_13)
    for N in range(1, 13):
        y = counterexample_solution(ALPHAS_13, N)
        g = evaluate(sys_, y, N + 2)
        low = [g.coeff(1, (d,)) for d in range(N + 1)]
        if any(c != 0 for c in low):
            return False, f"y_{N} leaves a nonzero coefficient below degree {N + 1}"
        top = g.coeff(1, (N + 1,))
        if top != -1:
            return False, f"y_{N}: x^{N + 1} coefficient is {top}, expected -1"
    return True, "y_1..y_12 vanish through degree N, x^(N+1) coefficient -1"


# -- 2: nonexistence certificates --


def check_certificates():
    certs = counterexample_nonexistence(ALPHAS_13)
    if len(certs) != 13:
        return False, f"{len(certs)} certificates, expected 13"
    bad = [c.l0 for c in certs if not (c.specialized.is_constant() and c.specialized == -1)]
    if bad:
        return False, f"certificates not equal to -1 at l0 = {bad}"
    return True, "13 certificates, each the constant -1"


# -- 3: obstruction soundness --


def check_obstruction():
    found = obstruction_scan(_composition("y1^2 - x1"), 4)
    if found is None or found.N != 2:
        return False, f"expected N = 2, got {None if found is None else found.N}"
    if not found.certificate.is_unit() or [str(g) for g in found.certificate.gens] != ["1"]:
        return False, f"certificate {found.certificate} is not {{1}}"
    hits = sqrt_x_order2_grid(-3, 3)
    if hits:
        return False, f"brute force found order-2 solutions {hits}"
    # y0^2 = 0 forces y0 = 0, and then 2*y0*y1 = 0 != 1
    if any(2 * 0 * y1 == 1 for y1 in range(-3, 4)):
        return False, "symbolic check failed"
    return True, "N = 2 with certificate {1}; 49-point grid has no order-2 solution"


# -- 4: solvable lifting --


def check_lifting():
    res = lift(_composition("y1^2 - (1 + x1)"), 8)
    if res.status != "exact":
        return False, f"status {res.status}"
    got = [res.series.coeff(1, (d,)) for d in range(8)]
    newton = newton_sqrt([1, 1], 8)
    if newton != binomial_sqrt_coeffs(8):
        return False, "the two oracles disagree"
    if got != newton:
        return False, f"coefficients {got} differ from {newton}"
    return True, "8 coefficients equal the Newton-iteration series of (1+x)^(1/2)"


# -- 5: chain stabilization --


def check_stabilization():
    report = stabilization_scan(_composition("y1^2 - (1 + x1)"), 1, 6)
    ring = PolyRing(["y1_0"], QQ)
    expected = parse_poly("y1_0^2 - 1", ring)
    for row in report.rows:
        if list(row.basis.gens) != [expected]:
            return False, f"row N={row.N} has basis {row.basis}"
    if report.stabilized_at != 1:
        return False, f"stabilized at {report.stabilized_at}"
    return True, "every row {y1_0^2 - 1}, stabilized at 1"


# -- 6: non-stabilization signature of the counterexample --

ALPHAS_7 = list(range(7))
GRID = [Fraction(v, 2) for v in range(-16, 17)]


def expected_generator(N):
    """The claimed generator prod_{l <= N-2} (y1_0 - alpha_l), low to high."""
    return poly_from_roots([Fraction(a) for a in ALPHAS_7[: N - 1]])


def check_nonstabilization():
    report = stabilization_scan(TextileSystem.counterexample(ALPHAS_7), 1, 6)
    observed = f"scan: every J_N^1 = {report.row(6).basis}, stabilized at {report.stabilized_at}"
    # the generator law is validated against the elimination oracle first
    for N in range(2, 5):
        witnesses = projection_witnesses(ALPHAS_7, N, GRID)
        if not univariate_vanishes_on(expected_generator(N), witnesses):
            bad = next(w for w in witnesses if not univariate_vanishes_on(expected_generator(N), [w]))
            return False, (
                f"oracle refutes the generator law at N={N} (y1_0 = {bad} is in the projection, "
                f"the claimed generator is nonzero there); {observed}"
            )
    for a, b in zip(report.rows, report.rows[1:]):
        if not (a.contained_in_next and any(g not in a.basis for g in b.basis.gens)):
            return False, f"J_{a.N} and J_{b.N} are not strictly increasing; {observed}"
    if report.stabilized_at is not None:
        return False, observed
    return True, "strictly growing, no stabilization within 6"


# -- 7: Groebner property suite --


def _random_poly(rng, ring):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exp = [0] * ring.nvars
        for _ in range(rng.randint(0, 3)):
            exp[rng.randrange(ring.nvars)] += 1
        terms[tuple(exp)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ring.from_dict(terms)


def _spolys_reduce(gb):
    gens = gb.gens
    return all(
        gb.reduce(s_polynomial(gens[i], gens[j], gb.order)).is_zero()
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )


def check_groebner_suite(count=200, seed=20261018):
    rng = random.Random(seed)
    done = 0
    while done < count:
        nv = rng.randint(1, 3)
        ring = PolyRing(["y0", "y1", "y2"][:nv], QQ)
        gens = [p for p in (_random_poly(rng, ring) for _ in range(rng.randint(1, 3))) if not p.is_zero()]
        if not gens:
            continue
        order = rng.choice([LEX, GREVLEX])
        gb = buchberger(gens, order, ring)
        if not (is_groebner(gb) and is_reduced(gb) and _spolys_reduce(gb)):
            return False, f"case {done}: {gb} is not a reduced basis"
        if any(g not in gb for g in gens):
            return False, f"case {done}: a generator is not reduced to 0"
        for perm in permutations(gens):
            if buchberger(list(perm), order, ring).gens != gb.gens:
                return False, f"case {done}: basis depends on generator order"
        keep = sorted(rng.sample(ring.names, rng.randint(1, nv)))
        elim = eliminate(gens, keep, ring)
        if any(not ideal_member(ring.convert(g), gb) for g in elim.gens):
            return False, f"case {done}: eliminate output outside the source ideal"
        done += 1
    return True, f"{count} random ideals: S-polynomials reduce to 0, permutation invariant, eliminate members"


# -- 8: extraction/evaluation commutation --


def check_commutation(count=100, seed=8):
    rng = random.Random(seed)
    N = 4
    for case in range(count):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        ring = PolyRing([f"x{j}" for j in range(1, n + 1)] + [f"y{i}" for i in range(1, m + 1)], QQ)
        F = _random_poly(rng, ring)
        if F.is_zero():
            F = ring.one()
        sys_ = TextileSystem.composition([F], n, m)
        coeffs = {
            (i, a): Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            for i in range(1, m + 1)
            for a in indices_below(n, N)
        }
        y = TruncatedSeries(n, m, N, coeffs, QQ)
        g = evaluate(sys_, y, N)
        values = y.assignment(N)
        ext = extract_coeffs(sys_, N)
        ys = [{a: c for (i, a), c in coeffs.items() if i == k} for k in range(1, m + 1)]
        brute = brute_force_compose(dict(F.terms), n, ys, N)
        for beta in indices_below(n, N):
            direct = substitute(ext[(1, beta)], values).constant_coeff()
            if direct != g.coeff(1, beta):
                return False, f"case {case}: beta={beta} extract gives {direct}, evaluate {g.coeff(1, beta)}"
            if direct != brute.get(beta, 0):
                return False, f"case {case}: beta={beta} disagrees with brute-force composition"
    return True, f"{count} random systems agree for all |beta| < {N}, matching brute-force composition"


CRITERIA = [
    (1, "counterexample reproduction", 5, check_reproduction),
    (2, "nonexistence certificates", 1, check_certificates),
    (3, "obstruction soundness", 1, check_obstruction),
    (4, "solvable lifting", 2, check_lifting),
    (5, "chain stabilization", 2, check_stabilization),
    (6, "counterexample chain non-stabilization", 10, check_nonstabilization),
    (7, "Groebner property suite", 60, check_groebner_suite),
    (8, "extraction/evaluation commutation", 30, check_commutation),
]


@pytest.mark.parametrize("number,title,bound,check", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, title, bound, check):
    ok, line = _run(number, title, bound, check)
    assert ok, line


def test_coefficient_names_are_stable():
    # the criteria above address coefficients by these names
    assert coeff_var_name(1, (0,)) == "y1_0"


if __name__ == "__main__":
    failures = sum(not _run(*c)[0] for c in CRITERIA)
    sys.exit(1 if failures else 0)
