"""Exact scalars: rationals and elements of a simple extension Q(t)/(m(t)).

Rationals are plain :class:`fractions.Fraction` values; they already keep
``den > 0`` and ``gcd(num, den) == 1``.  Extension elements are
:class:`NFElem` instances tied to a :class:`NumberField`.  A computation uses
exactly one field object, which also knows how to coerce integers and
rationals into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import DivisionByZero, ModulusMismatch, NonInvertible

Rat = Fraction


def rat(num, den=1) -> Fraction:
    if den == 0:
        raise DivisionByZero("zero denominator")
    return Fraction(num, den)


def rat_arith(op: str, a, b) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("division of a rational by zero")
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


# -- univariate polynomials over Q, coefficient lists from low to high degree --


def utrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def udivmod(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b`` (any exact field)."""
    a, b = utrim(a), utrim(b)
    if not b:
        raise DivisionByZero("division by the zero polynomial")
    if len(a) < len(b):
        return [], a
    inv_lead = 1 / b[-1] if not isinstance(b[-1], int) else Fraction(1, b[-1])
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    for shift in range(len(a) - len(b), -1, -1):
        c = r[shift + len(b) - 1] * inv_lead
        q[shift] = c
        if c != 0:
            for i, bi in enumerate(b):
                r[shift + i] -= c * bi
    return utrim(q), utrim(r[: len(b) - 1])


def umonic(p):
    p = utrim(p)
    if not p:
        return p
    lead = p[-1]
    return [Fraction(c) / lead for c in p]


def ugcd(a, b):
    """Monic gcd over Q."""
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def uxgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = utrim(a), utrim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
        t0, t1 = t1, _usub(t0, _umul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return ([c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0])


def uderiv(p):
    return utrim([i * c for i, c in enumerate(p)][1:])


def _umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return utrim(out)


def _usub(a, b):
    n = max(len(a), len(b))
    return utrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def root_order_key(r: Fraction):
    """Small magnitudes first, positive before negative."""
    return (abs(r), r < 0)


def rational_roots(p):
    """Distinct rational roots of a polynomial with rational coefficients.

    Rational root test on the primitive integer multiple of ``p``.  The
    result is ordered by :func:`root_order_key`.
    """
    p = utrim([Fraction(c) for c in p])
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    if p[0] == 0:
        roots.append(Fraction(0))
        while p[0] == 0:
            p = p[1:]
    if len(p) > 1:
        lcm_den = 1
        for c in p:
            lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
        ints = [int(c * lcm_den) for c in p]
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if _ueval(p, cand) == 0:
                        roots.append(cand)
    return sorted(set(roots), key=root_order_key)


def _ueval(p, v):
    acc = 0
    for c in reversed(p):
        acc = acc * v + c
    return acc


@dataclass(frozen=True)
class ModulusDiagnostics:
    squarefree: bool
    rational_roots: tuple

    @property
    def warnings(self):
        out = []
        if not self.squarefree:
            out.append("modulus is not squarefree")
        if self.rational_roots:
            roots = ", ".join(str(r) for r in self.rational_roots)
            out.append(f"modulus has rational roots: {roots}")
        return out


def check_modulus(m) -> ModulusDiagnostics:
    """Squarefreeness and rational roots of a defining polynomial.

    Irreducibility is not certified; a reducible modulus may still pass and
    will surface later as :class:`NonInvertible`.
    """
    m = utrim([Fraction(c) for c in m])
    squarefree = len(ugcd(m, uderiv(m))) <= 1
    return ModulusDiagnostics(squarefree, tuple(rational_roots(m)))


# -- fields --


class RationalField:
    """The field Q; elements are Fractions."""

    name = "Q"
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, value):
        if isinstance(value, NFElem):
            raise ModulusMismatch("extension element used in a rational session")
        return Fraction(value)

    def is_rational(self, value) -> bool:
        return True

    def as_rational(self, value) -> Fraction:
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NumberField:
    """Q[t]/(m(t)) for a monic ``m`` of degree at least 1.

    ``modulus`` is given low degree first.  Irreducibility is the caller's
    responsibility; see :func:`check_modulus`.
    """

    def __init__(self, modulus):
        m = utrim([Fraction(c) for c in modulus])
        if len(m) < 2:
            raise ValueError("modulus must have degree at least 1")
        if m[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.zero = NFElem(self, (Fraction(0),) * self.degree)
        self.one = self.convert(1)
        # t^j mod m for j < 2*degree - 1, used by multiplication
        self._powers = []
        cur = [Fraction(0)] * self.degree
        cur[0] = Fraction(1)
        for _ in range(2 * self.degree - 1):
            self._powers.append(tuple(cur))
            cur = self._times_t(cur)

    def _times_t(self, v):
        top = v[-1]
        shifted = [Fraction(0)] + list(v[:-1])
        return [s - top * mc for s, mc in zip(shifted, self.modulus[:-1])]

    @property
    def name(self):
        from .grammar import format_upoly

        return f"Q(t)/{format_upoly(self.modulus, 't')}"

    def gen(self) -> NFElem:
        coeffs = [Fraction(0)] * self.degree
        if self.degree == 1:
            coeffs[0] = -self.modulus[0]
        else:
            coeffs[1] = Fraction(1)
        return NFElem(self, tuple(coeffs))

    def convert(self, value) -> NFElem:
        if isinstance(value, NFElem):
            if value.field != self:
                raise ModulusMismatch("element of a different extension")
            return value
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return NFElem(self, tuple(coeffs))

    def from_coeffs(self, coeffs) -> NFElem:
        """Reduce an arbitrary polynomial in t modulo the defining polynomial."""
        _, r = udivmod([Fraction(c) for c in coeffs], list(self.modulus))
        r = list(r) + [Fraction(0)] * (self.degree - len(r))
        return NFElem(self, tuple(Fraction(c) for c in r))

    def is_rational(self, value) -> bool:
        return all(c == 0 for c in value.coeffs[1:])

    def as_rational(self, value) -> Fraction:
        if not self.is_rational(value):
            raise ValueError(f"{value} is not rational")
        return value.coeffs[0]

    def diagnostics(self) -> ModulusDiagnostics:
        return check_modulus(self.modulus)

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("NF", self.modulus))

    def __repr__(self):
        return f"NumberField({list(map(str, self.modulus))})"


class NFElem:
    """Immutable element of a :class:`NumberField`, reduced mod the modulus."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise ModulusMismatch("arithmetic across different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        acc = [Fraction(0)] * d
        powers = self.field._powers
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                ab = a * b
                for r, pc in enumerate(powers[i + j]):
                    if pc:
                        acc[r] += ab * pc
        return NFElem(self.field, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> NFElem:
        a = utrim(self.coeffs)
        if not a:
            raise DivisionByZero("inverse of zero in an extension field")
        g, s, _ = uxgcd(a, list(self.field.modulus))
        if len(g) != 1:
            raise NonInvertible(
                "element shares a factor with the modulus; the modulus is reducible"
            )
        s = list(s) + [Fraction(0)] * (self.field.degree - len(s))
        return NFElem(self.field, tuple(s[: self.field.degree]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return NFElem(self.field, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        from .grammar import format_upoly

        return f"NFElem({format_upoly(self.coeffs, 't')})"

    def __str__(self):
        from .grammar import format_upoly

        return format_upoly(self.coeffs, "t")


def nf_arith(op: str, a: NFElem, b: NFElem | None = None) -> NFElem:
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if a.field != b.field:
        raise ModulusMismatch("operands live in different extensions")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown extension operation {op!r}")
