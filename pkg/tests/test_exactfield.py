from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from artinapprox.errors import DivisionByZero, ModulusMismatch, NonInvertible
from artinapprox.exactfield import (
    QQ,
    NumberField,
    check_modulus,
    nf_arith,
    rat,
    rat_arith,
    rational_roots,
)
from conftest import CBRT2, SQRT2, nf_elems, small_fractions


def test_rat_add():
    assert rat_arith("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_rat_normalizes():
    r = rat_arith("mul", Fraction(2, 4), 1)
    assert (r.numerator, r.denominator) == (1, 2)


def test_rat_div_by_zero():
    with pytest.raises(DivisionByZero):
        rat_arith("div", 1, 0)
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(1, 20))
def test_rat_canonical(num, den, scale):
    a = rat(num, den)
    b = rat(num * scale, den * scale)
    assert (a.numerator, a.denominator) == (b.numerator, b.denominator)
    assert a.denominator > 0


def test_nf_examples():
    t = SQRT2.gen()
    assert nf_arith("mul", t, t) == 2
    assert nf_arith("inv", t) == t / 2
    assert str(nf_arith("add", t + 1, t - 1)) == "2*t"


def test_nf_inverse_checked_by_product():
    t = CBRT2.gen()
    a = t * t + t + 1
    assert a * a.inverse() == CBRT2.one


def test_nf_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        nf_arith("add", SQRT2.gen(), CBRT2.gen())


def test_nf_reducible_modulus_is_exposed():
    K = NumberField([-1, 0, 1])  # (t - 1)(t + 1)
    with pytest.raises(NonInvertible):
        (K.gen() - 1).inverse()


def test_nf_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        SQRT2.zero.inverse()


@pytest.mark.parametrize("field", [SQRT2, CBRT2], ids=["sqrt2", "cbrt2"])
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(nf_elems(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assume(a != 0)
    assert a * a.inverse() == field.one
    assert (b / a) * a == b


@given(small_fractions, small_fractions)
def test_rational_embedding_agrees(p, q):
    K = SQRT2
    assert K.convert(p) + K.convert(q) == p + q
    assert K.convert(p) * q == p * q
    assert hash(K.convert(p)) == hash(p)


def test_check_modulus_examples():
    d = check_modulus([-2, 0, 1])
    assert d.squarefree and d.rational_roots == ()
    assert d.warnings == []
    assert not check_modulus([0, 0, 1]).squarefree
    assert set(check_modulus([-1, 0, 1]).rational_roots) == {1, -1}


def test_rational_roots_candidates():
    # 6z^3 - 7z^2 + 1 = (z - 1)(2z - 1)(3z + 1)
    assert rational_roots([1, 0, -7, 6]) == [Fraction(-1, 3), Fraction(1, 2), 1]
    assert rational_roots([-2, 0, 1]) == []
    assert rational_roots([0, 0, 1]) == [0]


@given(st.lists(small_fractions, min_size=1, max_size=3, unique=True))
def test_rational_roots_recovers_planted(roots):
    p = [Fraction(1)]
    for r in roots:
        p = [(p[i - 1] if i else 0) - r * (p[i] if i < len(p) else 0) for i in range(len(p) + 1)]
    assert sorted(rational_roots(p)) == sorted(set(roots))


def test_qq_rejects_extension_elements():
    with pytest.raises(ModulusMismatch):
        QQ.convert(SQRT2.gen())


def test_modulus_must_be_monic():
    with pytest.raises(ValueError):
        NumberField([1, 2])
