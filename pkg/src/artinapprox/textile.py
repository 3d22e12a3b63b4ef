"""Truncated power series and finitely presented textile maps.

A textile map sends a tuple of power series ``y(x)`` to a tuple ``G(y(x))``
whose coefficients are polynomials in the coefficients ``y_{i,a}`` of
``y``.  Three presentations are supported:

* ``composition``: ``G(y) = F(x, y(x))`` for polynomials ``F``;
* ``explicit``: the coefficient polynomials are listed up to a degree, with
  dependency bounds ``D_N``;
* ``counterexample``: the one-variable family
  ``sum_{l>=1} ((y_0 - a_{l-1}) y_l - 1) x^l`` built from distinct scalars.

Multi-indices are enumerated in graded lex order everywhere.  The
coefficient variables of degree below ``k`` form a prefix of those below any
``k' > k``, so truncation maps are coordinate projections onto a prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

from .errors import (
    AlphaListTooShort,
    BadBounds,
    CapExceeded,
    ComponentMismatch,
    DuplicateAlphas,
    InsufficientCap,
    OutOfRange,
    ValidationError,
)
from .exactfield import QQ
from .multipoly import GREVLEX, MPoly, PolyRing, substitute


@lru_cache(maxsize=None)
def multi_indices(n: int, d: int):
    """All ``a`` in N^n with ``|a| = d``, lexicographically decreasing."""
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in multi_indices(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def indices_below(n: int, k: int):
    return [a for d in range(k) for a in multi_indices(n, d)]


def var_count(n: int, k: int, m: int) -> int:
    if n < 1 or k < 1 or m < 1:
        raise BadBounds("n, k and m must be positive")
    return m * comb(n + k - 1, k - 1)


def coeff_var_name(i: int, alpha) -> str:
    return f"y{i}_" + ".".join(str(a) for a in alpha)


def parse_coeff_var_name(name: str):
    """Inverse of :func:`coeff_var_name`; returns ``(i, alpha)`` or None."""
    if not name.startswith("y") or "_" not in name:
        return None
    head, _, tail = name[1:].partition("_")
    try:
        i = int(head)
        alpha = tuple(int(p) for p in tail.split("."))
    except ValueError:
        return None
    if i < 1 or any(a < 0 for a in alpha):
        return None
    return i, alpha


class CoeffIndexing:
    """Bijection between ``(i, alpha)`` with ``|alpha| < k`` and flat variable ids.

    Degree-major: all constant terms first, then degree one, and so on; the
    component index varies fastest.
    """

    def __init__(self, m: int, n: int, k: int):
        self.m, self.n, self.k = m, n, k
        self.entries = [(i, a) for a in indices_below(n, k) for i in range(1, m + 1)]
        self.position = {e: p for p, e in enumerate(self.entries)}
        self.names = [coeff_var_name(i, a) for i, a in self.entries]

    def __len__(self):
        return len(self.entries)

    def ring(self, field=QQ) -> PolyRing:
        return PolyRing(self.names, field)

    def names_of_degree(self, d: int):
        return [coeff_var_name(i, a) for i, a in self.entries if sum(a) == d]


@lru_cache(maxsize=None)
def _coeff_ring(m, n, k, field):
    return CoeffIndexing(m, n, k).ring(field)


def coeff_ring(m: int, n: int, k: int, field=QQ) -> PolyRing:
    return _coeff_ring(m, n, k, field)


def x_ring(n: int, field=QQ) -> PolyRing:
    return PolyRing([f"x{j}" for j in range(1, n + 1)], field)


@dataclass
class TruncatedSeries:
    """``m`` power series in ``n`` variables, known below total degree ``cap``."""

    n: int
    m: int
    cap: int
    coeffs: dict = dc_field(default_factory=dict)
    field: object = QQ

    def __post_init__(self):
        clean = {}
        for (i, a), c in self.coeffs.items():
            a = tuple(a)
            if not 1 <= i <= self.m or len(a) != self.n:
                raise ComponentMismatch(f"bad coefficient index {(i, a)}")
            if sum(a) >= self.cap:
                raise CapExceeded(f"coefficient of degree {sum(a)} beyond cap {self.cap}")
            c = self.field.convert(c)
            if c != 0:
                clean[(i, a)] = c
        self.coeffs = clean

    def coeff(self, i: int, alpha):
        return self.coeffs.get((i, tuple(alpha)), self.field.zero)

    def component(self, i: int) -> dict:
        return {a: c for (j, a), c in self.coeffs.items() if j == i}

    def component_poly(self, i: int) -> MPoly:
        return MPoly(x_ring(self.n, self.field), self.component(i))

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self):
        """Least total degree with a nonzero coefficient (None for zero)."""
        if not self.coeffs:
            return None
        return min(sum(a) for _, a in self.coeffs)

    def vector(self, k: int | None = None):
        """Coefficient vector under ``CoeffIndexing(m, n, k)``."""
        k = self.cap if k is None else k
        if k > self.cap:
            raise CapExceeded(f"level {k} beyond cap {self.cap}")
        return tuple(self.coeff(i, a) for i, a in CoeffIndexing(self.m, self.n, k).entries)

    def assignment(self, k: int | None = None) -> dict:
        """Map from coefficient variable names of degree ``< k`` to values."""
        k = self.cap if k is None else k
        idx = CoeffIndexing(self.m, self.n, k)
        return dict(zip(idx.names, self.vector(k)))

    @classmethod
    def from_vector(cls, m, n, k, values, field=QQ):
        idx = CoeffIndexing(m, n, k)
        if len(values) != len(idx):
            raise ValueError("vector length does not match the indexing")
        return cls(n, m, k, dict(zip(idx.entries, values)), field)

    @classmethod
    def from_polys(cls, polys, cap: int | None = None):
        """Build from one polynomial in ``x1..xn`` per component."""
        ring = polys[0].ring
        if cap is None:
            cap = 1 + max((p.total_degree() for p in polys), default=0)
            cap = max(cap, 1)
        coeffs = {}
        for i, p in enumerate(polys, start=1):
            for a, c in p.terms.items():
                coeffs[(i, a)] = c
        return cls(ring.nvars, len(polys), cap, coeffs, ring.field)

    def __str__(self):
        from .grammar import format_poly

        lines = []
        for i in range(1, self.m + 1):
            lines.append(f"y{i} = {format_poly(self.component_poly(i), GREVLEX, ascending=True)}")
        return "\n".join(lines)


def truncate(y: TruncatedSeries, k: int) -> TruncatedSeries:
    """The truncation map: keep coefficients of total degree below ``k``."""
    if k > y.cap:
        raise CapExceeded(f"cannot truncate at {k} a series known below {y.cap}")
    if k < 0:
        raise BadBounds("negative truncation level")
    kept = {(i, a): c for (i, a), c in y.coeffs.items() if sum(a) < k}
    return TruncatedSeries(y.n, y.m, k, kept, y.field)


def project(values, k: int, l: int, n: int, m: int):
    """Coordinate projection from level-``k`` to level-``l`` coefficient vectors."""
    if l > k:
        raise BadBounds(f"cannot project level {k} to higher level {l}")
    if len(values) != var_count(n, k, m):
        raise BadBounds("vector length does not match level k")
    return tuple(values[: var_count(n, l, m)]) if l >= 1 else ()


# -- series arithmetic on dicts alpha -> coefficient (scalars or polynomials) --


def _series_mul(a: dict, b: dict, cap: int, zero):
    out = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) >= cap:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, zero) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _compose(F: MPoly, n: int, series, cap: int, zero, one):
    """Coefficients of ``F(x, y(x))`` below ``cap``.

    ``F`` lives in a ring whose first ``n`` variables are ``x1..xn`` and whose
    remaining variables are the series slots; ``series`` holds one dict per
    slot.
    """
    powers = [{0: {(0,) * n: one}} for _ in series]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = _series_mul(power(i, e - 1), series[i], cap, zero)
        return cache[e]

    out = {}
    for exp, c in F.terms.items():
        xa = exp[:n]
        shift = sum(xa)
        if shift >= cap:
            continue
        term = {(0,) * n: one}
        for i, e in enumerate(exp[n:]):
            if e:
                term = _series_mul(term, power(i, e), cap - shift, zero)
        for a, v in term.items():
            e2 = tuple(x + y for x, y in zip(a, xa))
            out[e2] = out.get(e2, zero) + v * c
    return {e: v for e, v in out.items() if v != 0}


# -- systems --


def _check_alphas(alphas):
    seen = set()
    for a in alphas:
        if a in seen:
            raise DuplicateAlphas(f"alpha value {a} repeated")
        seen.add(a)


@dataclass
class TextileSystem:
    """Finite presentation of a textile map ``K[[x]]^m -> K[[x]]^q``.

    Build instances with :meth:`composition`, :meth:`explicit` or
    :meth:`counterexample`.
    """

    n: int
    m: int
    q: int
    mode: str
    field: object = QQ
    F: tuple = ()
    max_degree: int = 0
    depend: dict = dc_field(default_factory=dict)
    table: dict = dc_field(default_factory=dict)
    alphas: tuple = ()

    @classmethod
    def composition(cls, F, n: int, m: int):
        F = tuple(F)
        if not F:
            raise ValidationError("a composition system needs at least one output")
        sys = cls(n=n, m=m, q=len(F), mode="composition", field=F[0].ring.field, F=F)
        sys.validate()
        return sys

    @classmethod
    def explicit(cls, n, m, q, max_degree, depend, table, field=QQ):
        sys = cls(
            n=n, m=m, q=q, mode="explicit", field=field,
            max_degree=max_degree, depend=dict(depend), table=dict(table),
        )
        sys.validate()
        return sys

    @classmethod
    def counterexample(cls, alphas, field=QQ):
        sys = cls(
            n=1, m=1, q=1, mode="counterexample", field=field,
            alphas=tuple(field.convert(a) for a in alphas),
        )
        sys.validate()
        return sys

    def fx_ring(self) -> PolyRing:
        names = [f"x{j}" for j in range(1, self.n + 1)] + [f"y{i}" for i in range(1, self.m + 1)]
        return PolyRing(names, self.field)

    def validate(self):
        if min(self.n, self.m, self.q) < 1:
            raise ValidationError("n, m and q must be positive")
        if self.mode == "composition":
            ring = self.fx_ring()
            for j, f in enumerate(self.F, start=1):
                if f.ring != ring:
                    raise ValidationError(f"F{j} must be a polynomial in x1..x{self.n}, y1..y{self.m}")
        elif self.mode == "explicit":
            self._validate_explicit()
        elif self.mode == "counterexample":
            if (self.n, self.m, self.q) != (1, 1, 1):
                raise ValidationError("the counterexample family has n = m = q = 1")
            try:
                _check_alphas(self.alphas)
            except DuplicateAlphas as exc:
                raise ValidationError(str(exc)) from exc
        else:
            raise ValidationError(f"unknown mode {self.mode!r}")

    def _validate_explicit(self):
        if self.max_degree < 1:
            raise ValidationError("max-degree must be at least 1")
        for N in range(1, self.max_degree + 1):
            if N not in self.depend:
                raise ValidationError(f"missing dependency bound for N = {N}")
        for N, D in self.depend.items():
            if not 1 <= N <= self.max_degree:
                raise ValidationError(f"dependency bound for N = {N} outside 1..{self.max_degree}")
            if D < N:
                raise ValidationError(f"dependency bound D_{N} = {D} is smaller than {N}")
        for (j, beta), poly in self.table.items():
            if not 1 <= j <= self.q:
                raise ValidationError(f"output index {j} outside 1..{self.q}")
            if len(beta) != self.n:
                raise ValidationError(f"multi-index {beta} has the wrong length")
            if sum(beta) >= self.max_degree:
                raise ValidationError(f"coefficient {beta} beyond max-degree")
            if poly.ring.field != self.field:
                raise ValidationError("coefficient polynomial over the wrong field")
            bound = self.depend[sum(beta) + 1]
            for name in (poly.ring.names[v] for v in poly.support()):
                parsed = parse_coeff_var_name(name)
                if parsed is None or parsed[0] > self.m or len(parsed[1]) != self.n:
                    raise ValidationError(f"{name} is not a coefficient variable of this system")
                if sum(parsed[1]) >= bound:
                    raise ValidationError(
                        f"coef {j} {beta} uses {name}, beyond the dependency bound {bound}"
                    )

    def __eq__(self, other):
        if not isinstance(other, TextileSystem):
            return NotImplemented
        if (self.n, self.m, self.q, self.mode, self.field) != (
            other.n, other.m, other.q, other.mode, other.field
        ):
            return False
        if self.mode == "composition":
            return self.F == other.F
        if self.mode == "counterexample":
            return self.alphas == other.alphas
        if self.max_degree != other.max_degree or self.depend != other.depend:
            return False
        top = max(self.depend.values())
        ring = coeff_ring(self.m, self.n, top, self.field)
        keys = set(self.table) | set(other.table)
        for k in keys:
            a = ring.convert(self.table[k]) if k in self.table else ring.zero()
            b = ring.convert(other.table[k]) if k in other.table else ring.zero()
            if a != b:
                return False
        return True


def depend_bound(sys: TextileSystem, N: int) -> int:
    if N < 1:
        raise OutOfRange("N must be at least 1")
    if sys.mode == "explicit":
        if N > sys.max_degree:
            raise OutOfRange(f"N = {N} beyond the declared max-degree {sys.max_degree}")
        return sys.depend[N]
    return N


def extract_coeffs(sys: TextileSystem, N: int) -> dict:
    """Coefficient polynomials ``G_{j,beta}`` for ``|beta| < N``.

    Keys are ``(j, beta)`` in graded lex order of ``beta``; values live in the
    ring of coefficient variables of degree below ``depend_bound(sys, N)``.
    """
    D = depend_bound(sys, N)
    ring = coeff_ring(sys.m, sys.n, D, sys.field)
    betas = indices_below(sys.n, N)
    out = {}
    if sys.mode == "composition":
        series = []
        for i in range(1, sys.m + 1):
            series.append({a: ring.gen(coeff_var_name(i, a)) for a in indices_below(sys.n, N)})
        for j, f in enumerate(sys.F, start=1):
            coeffs = _compose(f, sys.n, series, N, ring.zero(), ring.one())
            for b in betas:
                out[(j, b)] = coeffs.get(b, ring.zero())
    elif sys.mode == "explicit":
        for j in range(1, sys.q + 1):
            for b in betas:
                p = sys.table.get((j, b))
                out[(j, b)] = ring.zero() if p is None else ring.convert(p)
    else:
        if N - 2 >= len(sys.alphas):
            raise AlphaListTooShort(
                f"order {N} needs {N - 1} alpha values, only {len(sys.alphas)} given"
            )
        y0 = ring.gen(coeff_var_name(1, (0,)))
        out[(1, (0,))] = ring.zero()
        for l in range(1, N):
            yl = ring.gen(coeff_var_name(1, (l,)))
            out[(1, (l,))] = (y0 - sys.alphas[l - 1]) * yl - 1
    return out


def evaluate(sys: TextileSystem, y: TruncatedSeries, N: int) -> TruncatedSeries:
    """``G(y(x))`` modulo ``(x)^N`` as a series with ``q`` components and cap ``N``."""
    D = depend_bound(sys, N)
    if y.cap < D:
        raise InsufficientCap(f"order {N} needs coefficients below degree {D}, series known below {y.cap}")
    if (y.n, y.m) != (sys.n, sys.m):
        raise ComponentMismatch("series shape does not match the system")
    field = sys.field
    coeffs = {}
    if sys.mode == "composition":
        series = [{a: c for a, c in y.component(i).items() if sum(a) < N} for i in range(1, sys.m + 1)]
        for j, f in enumerate(sys.F, start=1):
            for a, c in _compose(f, sys.n, series, N, field.zero, field.one).items():
                coeffs[(j, a)] = c
    elif sys.mode == "explicit":
        values = y.assignment(D)
        ring = coeff_ring(sys.m, sys.n, D, field)
        for (j, b), p in sys.table.items():
            if sum(b) < N:
                v = substitute(ring.convert(p), values).constant_coeff()
                coeffs[(j, b)] = v
    else:
        if N - 2 >= len(sys.alphas):
            raise AlphaListTooShort(f"order {N} needs {N - 1} alpha values")
        y0 = y.coeff(1, (0,))
        for l in range(1, N):
            coeffs[(1, (l,))] = (y0 - sys.alphas[l - 1]) * y.coeff(1, (l,)) - 1
    return TruncatedSeries(sys.n, sys.q, N, coeffs, field)


def first_failure(sys: TextileSystem, y: TruncatedSeries, N: int):
    """First ``(j, beta, value)`` in graded lex order with nonzero value, or None."""
    g = evaluate(sys, y, N)
    for b in indices_below(sys.n, N):
        for j in range(1, sys.q + 1):
            v = g.coeff(j, b)
            if v != 0:
                return j, b, v
    return None


def order_at_least(sys: TextileSystem, y: TruncatedSeries, N: int) -> bool:
    return evaluate(sys, y, N).is_zero()


def counterexample_solution(alphas, N: int, field=QQ) -> TruncatedSeries:
    """``a_N + sum_{k=1}^{N} x^k / (a_N - a_{k-1})``, known below degree ``N + 2``."""
    alphas = [field.convert(a) for a in alphas]
    if N < 0:
        raise BadBounds("N must be nonnegative")
    if len(alphas) < N + 1:
        raise AlphaListTooShort(f"y_{N} needs {N + 1} alpha values, got {len(alphas)}")
    _check_alphas(alphas)
    top = alphas[N]
    coeffs = {(1, (0,)): top}
    for k in range(1, N + 1):
        coeffs[(1, (k,))] = field.one / (top - alphas[k - 1])
    return TruncatedSeries(1, 1, N + 2, coeffs, field)
