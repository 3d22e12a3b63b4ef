from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artinapprox.errors import ComponentMismatch, ParseError, ValidationError
from artinapprox.exactfield import QQ
from artinapprox.grammar import format_poly, format_scalar, parse_poly, parse_scalar
from artinapprox.multipoly import LEX, PolyRing
from artinapprox.sysfile import parse_field, parse_solution, parse_system, render_solution, render_system
from conftest import SQRT2, nf_elems, polys

MINIMAL = """textile-system v1
field: Q
x-vars: 1
unknowns: 1
outputs: 1
mode: composition
F1 = y1^2 - (1 + x1)
"""


def test_minimal_composition():
    sys_ = parse_system(MINIMAL)
    assert (sys_.n, sys_.m, sys_.q, sys_.mode) == (1, 1, 1, "composition")
    assert format_poly(sys_.F[0]) == "y1^2 - x1 - 1"


def test_explicit_depend_below_n_is_rejected():
    text = """textile-system v1
field: Q
x-vars: 1
unknowns: 1
outputs: 1
mode: explicit
max-degree: 2
depend 1 = 1
depend 2 = 1
coef 1 (0) = y1_0
"""
    with pytest.raises(ValidationError):
        parse_system(text)


def test_counterexample_file():
    sys_ = parse_system("textile-system v1\nfield: Q\nmode: counterexample\nalphas = 0,1,2\n")
    assert sys_.mode == "counterexample" and sys_.alphas == (0, 1, 2)
    with pytest.raises(ValidationError):
        parse_system("textile-system v1\nfield: Q\nmode: counterexample\nalphas = 0, 1/2, 2/4\n")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_system(MINIMAL.replace("F1 = y1^2 - (1 + x1)", "F1 = y1^2 - (1 + x1"))
    assert info.value.line == 7
    with pytest.raises(ParseError):
        parse_system(MINIMAL.replace("textile-system v1", "textile-system v2"))
    with pytest.raises(ParseError):
        parse_system(MINIMAL.replace("mode: composition", "mode: magic"))
    with pytest.raises(ParseError) as info:
        parse_system(MINIMAL + "colour: blue\n")
    assert info.value.line == 8


def test_unknown_variable_is_rejected():
    with pytest.raises(ParseError):
        parse_system(MINIMAL.replace("y1^2", "y2^2"))


def test_field_header():
    assert parse_field("Q") is QQ
    K = parse_field("Q(t)/t^2 - 2")
    assert K == SQRT2 and K.name == "Q(t)/t^2 - 2"
    with pytest.raises(ParseError):
        parse_field("Q(t)/2*t^2 - 1")
    with pytest.raises(ParseError):
        parse_field("R")


def test_sample_systems_round_trip(systems_dir):
    for path in sorted(systems_dir.glob("*.txt")):
        if path.name.endswith("_y2.txt"):
            continue
        sys_ = parse_system(path.read_text())
        again = parse_system(render_system(sys_))
        assert again == sys_, path.name
        assert render_system(again) == render_system(sys_)


def test_solution_examples(systems_dir):
    y = parse_solution((systems_dir / "counterexample_y2.txt").read_text(), 1, 1)
    assert y.cap == 3
    assert [y.coeff(1, (d,)) for d in range(3)] == [2, Fraction(1, 2), 1]
    assert parse_solution("y1 = 0", 1, 1).is_zero()
    with pytest.raises(ComponentMismatch):
        parse_solution("y2 = 1", 1, 1)
    assert parse_solution("y1 = x1", 1, 1, cap=5).cap == 5


def test_solution_round_trip_over_extension():
    y = parse_solution("y1 = t + (1/2*t - 3)*x1\ny2 = x1*x2", 2, 2, SQRT2)
    assert parse_solution(render_solution(y), 2, 2, SQRT2) == y


RING = PolyRing(["x1", "y1", "y2"])
RING_T = PolyRing(["y0", "y1"], SQRT2)


@given(polys(RING, max_terms=5))
def test_poly_format_round_trip(f):
    assert parse_poly(format_poly(f), RING) == f
    assert parse_poly(format_poly(f, LEX, ascending=True), RING) == f


@given(polys(RING_T, coeffs=nf_elems(SQRT2)))
def test_extension_poly_round_trip(f):
    assert parse_poly(format_poly(f), RING_T) == f


@given(nf_elems(SQRT2))
def test_scalar_round_trip(a):
    assert parse_scalar(format_scalar(a), SQRT2) == a


@given(st.fractions(max_denominator=50))
def test_rational_scalar_round_trip(a):
    assert parse_scalar(format_scalar(a), QQ) == a
