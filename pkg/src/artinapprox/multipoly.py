"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict from exponent tuples to nonzero coefficients, bound to
a :class:`PolyRing` that fixes the variable names and the coefficient field.
Terms are stored unordered; a :class:`MonomialOrder` is supplied wherever an
ordering matters (leading terms, division, printing).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatch, ZeroPolynomial
from .exactfield import QQ


class PolyRing:
    def __init__(self, names, field=QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.nvars = len(self.names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    def zero(self) -> MPoly:
        return MPoly(self, {})

    def one(self) -> MPoly:
        return self.const(1)

    def const(self, c) -> MPoly:
        c = self.field.convert(c)
        return MPoly(self, {self.zero_exp: c} if c != 0 else {})

    def gen(self, var) -> MPoly:
        i = self.index[var] if isinstance(var, str) else var
        exp = [0] * self.nvars
        exp[i] = 1
        return MPoly(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> MPoly:
        c = self.field.convert(coeff)
        return MPoly(self, {tuple(exp): c} if c != 0 else {})

    def from_dict(self, terms) -> MPoly:
        conv = self.field.convert
        out = {}
        for exp, c in terms.items():
            c = conv(c)
            if c != 0:
                out[tuple(exp)] = c
        return MPoly(self, out)

    def subring(self, indices) -> PolyRing:
        return PolyRing([self.names[i] for i in indices], self.field)

    def convert(self, f: MPoly) -> MPoly:
        """Rewrite ``f`` in this ring, matching variables by name."""
        if f.ring == self:
            return f
        if f.ring.field != self.field:
            raise RingMismatch("rings have different coefficient fields")
        pos = []
        for i, name in enumerate(f.ring.names):
            pos.append(self.index.get(name))
        used = f.support()
        missing = [f.ring.names[i] for i in used if pos[i] is None]
        if missing:
            raise RingMismatch(f"variables {missing} are not in the target ring")
        out = {}
        for exp, c in f.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exp):
                if e:
                    new[pos[i]] = e
            out[tuple(new)] = c
        return MPoly(self, out)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block``.

    ``block`` with ``split = s`` compares the first ``s`` variables by
    grevlex and breaks ties with grevlex on the remaining ones, so any
    polynomial whose leading monomial avoids the first block lies entirely
    in the second.
    """

    kind: str
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp):
        if self.kind == "lex":
            return exp
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        s = self.split
        return (_grevlex_key(exp[:s]), _grevlex_key(exp[s:]))

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


def divides(a, b) -> bool:
    """Whether monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MPoly:
    """Polynomial in ``ring``; treat instances as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _check(self, other: MPoly):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp)
            if s is None:
                out[exp] = c
            else:
                s = s + c
                if s == 0:
                    del out[exp]
                else:
                    out[exp] = s
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = self.ring.field.convert(other)
            if c == 0:
                return self.ring.zero()
            return MPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MPoly(self.ring, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant() or other.is_zero():
                raise ValueError("only division by nonzero scalars is supported")
            other = other.constant_coeff()
        return self * (self.ring.field.one / self.ring.field.convert(other))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            c = self.ring.field.convert(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == ({self.ring.zero_exp: c} if c != 0 else {})

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        from .grammar import format_poly

        return format_poly(self)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support(self):
        """Indices of variables that occur in the polynomial."""
        used = set()
        for exp in self.terms:
            used.update(i for i, x in enumerate(exp) if x)
        return sorted(used)

    def sorted_terms(self, order: MonomialOrder):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def monic(self, order: MonomialOrder) -> MPoly:
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self * (self.ring.field.one / lc)

    def substitute(self, assignment, ring: PolyRing | None = None) -> MPoly:
        return substitute(self, assignment, ring)


def poly_arith(op: str, f: MPoly, g) -> MPoly:
    if isinstance(g, MPoly) and g.ring != f.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        if isinstance(g, MPoly):
            raise TypeError("scale takes a field element")
        return f * g
    raise ValueError(f"unknown polynomial operation {op!r}")


def leading_term(f: MPoly, order: MonomialOrder):
    return f.leading_term(order)


def divide(f: MPoly, divisors, order: MonomialOrder):
    """Multivariate division; divisors are tried in list order.

    Returns ``(quotients, remainder)`` with ``f == sum(q*g) + r`` and no term
    of ``r`` divisible by a leading monomial of a divisor.
    """
    ring = f.ring
    for g in divisors:
        if g.ring != ring:
            raise RingMismatch("divisor in a different ring")
        if g.is_zero():
            raise ZeroPolynomial("cannot divide by the zero polynomial")
    leads = [g.leading_term(order) for g in divisors]
    quots = [{} for _ in divisors]
    rem = {}
    p = dict(f.terms)
    key = order.key
    while p:
        exp = max(p, key=key)
        c = p[exp]
        for i, (lexp, lc) in enumerate(leads):
            if divides(lexp, exp):
                shift = mono_div(exp, lexp)
                factor = c / lc
                quots[i][shift] = quots[i].get(shift, ring.field.zero) + factor
                for gexp, gc in divisors[i].terms.items():
                    e = mono_mul(gexp, shift)
                    v = p.get(e, ring.field.zero) - factor * gc
                    if v == 0:
                        p.pop(e, None)
                    else:
                        p[e] = v
                break
        else:
            rem[exp] = c
            del p[exp]
    qs = [MPoly(ring, {e: c for e, c in q.items() if c != 0}) for q in quots]
    return qs, MPoly(ring, rem)


def substitute(f: MPoly, assignment, ring: PolyRing | None = None) -> MPoly:
    """Replace variables by scalars or polynomials.

    ``assignment`` maps variable names (or indices of ``f.ring``) to field
    elements or polynomials.  Polynomial values must live in the result
    ring, which defaults to ``f.ring``; unassigned variables are carried over
    by name.
    """
    src = f.ring
    target = ring if ring is not None else src
    field = src.field
    if target.field != field:
        raise RingMismatch("substitution across coefficient fields")
    values = {}
    for var, val in assignment.items():
        i = src.index[var] if isinstance(var, str) else var
        if isinstance(val, MPoly):
            if val.ring != target:
                val = target.convert(val)
            values[i] = val
        else:
            values[i] = field.convert(val)
    keep = {}
    for i, name in enumerate(src.names):
        if i in values:
            continue
        if name not in target.index:
            if any(exp[i] for exp in f.terms):
                raise RingMismatch(f"unassigned variable {name} missing from target ring")
            continue
        keep[i] = target.index[name]
    power_cache = {}

    def power(i, e):
        k = (i, e)
        if k not in power_cache:
            power_cache[k] = values[i] ** e
        return power_cache[k]

    out = target.zero()
    scalar_terms = {}
    for exp, c in f.terms.items():
        coeff = c
        poly_factor = None
        new = [0] * target.nvars
        for i, e in enumerate(exp):
            if not e:
                continue
            if i in values:
                v = values[i]
                if isinstance(v, MPoly):
                    pw = power(i, e)
                    poly_factor = pw if poly_factor is None else poly_factor * pw
                else:
                    coeff = coeff * power(i, e)
            else:
                new[keep[i]] = e
        if coeff == 0:
            continue
        new = tuple(new)
        if poly_factor is None:
            s = scalar_terms.get(new)
            scalar_terms[new] = coeff if s is None else s + coeff
        else:
            out = out + poly_factor * MPoly(target, {new: coeff})
    if scalar_terms:
        out = out + MPoly(target, {e: c for e, c in scalar_terms.items() if c != 0})
    return out
