"""Reduced Groebner bases, elimination and lex back-substitution.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller update (coprime and chain criteria).  Every basis returned is
reduced, monic and sorted by decreasing leading monomial, so two bases of the
same ideal under the same order compare equal term for term.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotZeroDimensionalHandled, OrderMismatch, RingMismatch
from .exactfield import QQ, NumberField, rational_roots, root_order_key, udivmod, utrim
from .multipoly import GREVLEX, LEX, MPoly, MonomialOrder, PolyRing, block, divides, mono_lcm


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: MonomialOrder
    gens: tuple

    def is_unit(self) -> bool:
        """True when the basis is ``{1}``, i.e. the variety is empty."""
        return len(self.gens) == 1 and self.gens[0].is_constant()

    def reduce(self, f: MPoly) -> MPoly:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and basis live in different rings")
        key = _KeyCache(self.order)
        basis = [(g.leading_term(self.order)[0], g.terms) for g in self.gens]
        return MPoly(self.ring, _normal_form(dict(f.terms), basis, key, self.ring.field))

    def __contains__(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __str__(self):
        from .grammar import format_poly

        return "{" + ", ".join(format_poly(g, self.order) for g in self.gens) + "}"


class _KeyCache(dict):
    """Memoised monomial order keys."""

    def __init__(self, order):
        super().__init__()
        self.order = order

    def __missing__(self, exp):
        k = self[exp] = self.order.key(exp)
        return k


def _leading(p, key):
    return max(p, key=key.__getitem__)


def _normal_form(p, basis, key, field):
    """Full reduction of the term dict ``p`` by monic ``(lm, terms)`` pairs."""
    rem = {}
    zero = field.zero
    while p:
        m = _leading(p, key)
        c = p[m]
        for lm, g in basis:
            if all(a <= b for a, b in zip(lm, m)):
                shift = tuple(b - a for a, b in zip(lm, m))
                for e, gc in g.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = p.get(e2, zero) - c * gc
                    if v == 0:
                        p.pop(e2, None)
                    else:
                        p[e2] = v
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _make_monic(p, key, field):
    lc = p[_leading(p, key)]
    if lc == 1:
        return p
    inv = field.one / lc
    return {e: c * inv for e, c in p.items()}


def s_polynomial(f: MPoly, g: MPoly, order: MonomialOrder) -> MPoly:
    lf, cf = f.leading_term(order)
    lg, cg = g.leading_term(order)
    lcm = mono_lcm(lf, lg)
    ring = f.ring
    a = ring.monomial(tuple(x - y for x, y in zip(lcm, lf)), ring.field.one / cf)
    b = ring.monomial(tuple(x - y for x, y in zip(lcm, lg)), ring.field.one / cg)
    return a * f - b * g


def _check_common_ring(gens, ring):
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
    return ring


def buchberger(gens, order: MonomialOrder = GREVLEX, ring: PolyRing | None = None) -> GroebnerBasis:
    ring = _check_common_ring(list(gens), ring)
    field = ring.field
    key = _KeyCache(order)
    polys = [dict(g.terms) for g in gens if not g.is_zero()]
    if not polys:
        return GroebnerBasis(ring, order, ())

    basis = []  # all polynomials ever added: (lm, terms)
    active = []  # indices into basis forming the current G
    pairs = []  # heap of (deg(lcm), lcm, i, j)

    def update(h):
        nonlocal active, pairs
        lh = h[0]
        hid = len(basis)
        basis.append(h)
        cands = [(gid, mono_lcm(basis[gid][0], lh)) for gid in active]

        def coprime(gid):
            return all(not (a and b) for a, b in zip(basis[gid][0], lh))

        kept = []
        for idx, (gid, lcm) in enumerate(cands):
            if coprime(gid):
                kept.append((gid, lcm))
                continue
            others = [c for c in cands[idx + 1 :]] + kept
            if not any(divides(l2, lcm) for _, l2 in others):
                kept.append((gid, lcm))
        new_pairs = [(gid, lcm) for gid, lcm in kept if not coprime(gid)]

        survivors = []
        for item in pairs:
            _, lcm, i, j = item
            if (
                not divides(lh, lcm)
                or mono_lcm(basis[i][0], lh) == lcm
                or mono_lcm(basis[j][0], lh) == lcm
            ):
                survivors.append(item)
        seen = set()
        for gid, lcm in new_pairs:
            if lcm in seen:
                continue
            seen.add(lcm)
            survivors.append((sum(lcm), lcm, gid, hid))
        heapq.heapify(survivors)
        pairs = survivors
        active = [gid for gid in active if not divides(lh, basis[gid][0])] + [hid]

    for p in sorted(polys, key=lambda q: key[_leading(q, key)]):
        p = _normal_form(p, [basis[i] for i in active], key, field)
        if p:
            p = _make_monic(p, key, field)
            update((_leading(p, key), p))

    while pairs:
        _, lcm, i, j = heapq.heappop(pairs)
        (li, fi), (lj, fj) = basis[i], basis[j]
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        s = {}
        for e, c in fi.items():
            s[tuple(x + y for x, y in zip(e, si))] = c
        for e, c in fj.items():
            e2 = tuple(x + y for x, y in zip(e, sj))
            v = s.get(e2, field.zero) - c
            if v == 0:
                s.pop(e2, None)
            else:
                s[e2] = v
        r = _normal_form(s, [basis[k] for k in active], key, field)
        if r:
            r = _make_monic(r, key, field)
            update((_leading(r, key), r))

    return GroebnerBasis(ring, order, _reduce_basis([basis[i] for i in active], key, ring))


def _reduce_basis(items, key, ring):
    items = sorted(items, key=lambda it: key[it[0]])
    minimal = []
    for k, (lm, g) in enumerate(items):
        if any(divides(lm2, lm) for lm2, _ in minimal):
            continue
        if any(divides(lm2, lm) for lm2, _ in items[k + 1 :] if lm2 != lm):
            continue
        minimal.append((lm, g))
    out = []
    for k, (lm, g) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = dict(g)
        lead = tail.pop(lm)
        r = _normal_form(tail, others, key, ring.field)
        r[lm] = lead
        out.append((lm, _make_monic(r, key, ring.field)))
    out.sort(key=lambda it: key[it[0]], reverse=True)
    return tuple(MPoly(ring, g) for _, g in out)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Direct check that every S-polynomial reduces to zero."""
    gens = list(gb.gens)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not gb.reduce(s_polynomial(gens[a], gens[b], gb.order)).is_zero():
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    leads = [g.leading_term(gb.order) for g in gb.gens]
    if any(c != 1 for _, c in leads):
        return False
    for a, g in enumerate(gb.gens):
        for b, (lm, _) in enumerate(leads):
            if a != b and any(divides(lm, e) for e in g.terms):
                return False
    return True


def is_trivial(gens, ring: PolyRing | None = None):
    """Whether the ideal contains 1; returns ``(trivial, reduced basis)``.

    Over an algebraically closed field this decides emptiness of the
    variety, so a ``True`` answer certifies that no solution exists in any
    extension of the coefficient field.
    """
    gb = buchberger(gens, GREVLEX, ring)
    return gb.is_unit(), gb


def ideal_member(f: MPoly, gb: GroebnerBasis) -> bool:
    return f in gb


def ideal_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    if a.ring != b.ring:
        raise RingMismatch("bases live in different rings")
    if a.order != b.order:
        raise OrderMismatch(f"{a.order} vs {b.order}")
    return a.gens == b.gens


def eliminate(gens, keep, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced grevlex basis of ``I ∩ K[keep]`` in the subring of kept variables.

    ``keep`` lists variable names or indices.  The eliminated variables are
    moved in front and a block order is used, so the kept-variable members
    of the block basis generate the elimination ideal.
    """
    ring = _check_common_ring(list(gens), ring)
    keep_idx = sorted(ring.index[v] if isinstance(v, str) else v for v in keep)
    keep_set = set(keep_idx)
    sub = ring.subring(keep_idx)
    used = set()
    for g in gens:
        used.update(g.support())
    elim_idx = [i for i in range(ring.nvars) if i not in keep_set]
    if not used & set(elim_idx):
        return buchberger([sub.convert(g) for g in gens], GREVLEX, sub)
    perm = PolyRing([ring.names[i] for i in elim_idx + keep_idx], ring.field)
    gb = buchberger([perm.convert(g) for g in gens], block(len(elim_idx)), perm)
    s = len(elim_idx)
    kept = [g for g in gb.gens if all(not any(e[:s]) for e in g.terms)]
    return GroebnerBasis(sub, GREVLEX, tuple(sub.convert(g) for g in kept))


def lex_basis(gens, ring: PolyRing | None = None) -> GroebnerBasis:
    return buchberger(gens, LEX, ring)


# -- root finding and back-substitution --


@dataclass(frozen=True)
class PointSet:
    """Points found by :func:`solve_points`.

    ``complete`` is False when some part of the variety could not be
    expressed over the session field (or was only sampled through free
    values); the list then certifies existence, never emptiness.
    """

    points: tuple
    complete: bool
    variables: tuple = ()

    @property
    def inconclusive(self) -> bool:
        return not self.complete

    def as_dicts(self):
        return [dict(zip(self.variables, p)) for p in self.points]


def _ugcd(a, b):
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _uderiv(p):
    return utrim([c * i for i, c in enumerate(p)][1:])


def _squarefree_part(p):
    g = _ugcd(p, _uderiv(p))
    if len(g) <= 1:
        return [c / p[-1] for c in p]
    q, _ = udivmod(p, g)
    return [c / q[-1] for c in q]


def field_sqrt(field, value):
    """All square roots of ``value`` lying in ``field`` (None if unknown)."""
    if field == QQ or isinstance(value, Fraction):
        value = field.convert(value)
    if not isinstance(field, NumberField):
        r = rational_roots([-Fraction(value), 0, 1])
        return [field.convert(x) for x in r]
    d = field.degree
    ring = PolyRing([f"c{i}" for i in range(d)], QQ)
    cs = ring.gens()
    eqs = [ring.const(-value.coeffs[r]) for r in range(d)]
    for i in range(d):
        for j in range(d):
            for r, pc in enumerate(field._powers[i + j]):
                if pc:
                    eqs[r] = eqs[r] + cs[i] * cs[j] * pc
    try:
        sol = solve_points(lex_basis(eqs, ring))
    except NotZeroDimensionalHandled:
        return None
    pts = sorted(sol.points, key=lambda p: tuple(root_order_key(x) for x in p))
    return [NFElem_from(field, p) for p in pts]


def NFElem_from(field, coeffs):
    return field.from_coeffs(list(coeffs))


def field_roots(field, coeffs):
    """Distinct roots in ``field`` of a nonzero univariate polynomial.

    ``coeffs`` run from low to high degree.  Returns ``(roots, split)``
    where ``split`` says whether every root over the algebraic closure was
    found.
    """
    p = utrim([field.convert(c) for c in coeffs])
    if not p:
        raise ValueError("the zero polynomial has no finite root set")
    if len(p) == 1:
        return [], True
    p = _squarefree_part(p)
    roots = []
    if all(field.is_rational(c) for c in p):
        for r in rational_roots([field.as_rational(c) for c in p]):
            roots.append(field.convert(r))
            p, _ = udivmod(p, [field.convert(-r), field.one])
    if field == QQ:
        return roots, len(p) <= 1
    if len(p) == 2:
        roots.append(-p[0] / p[1])
        return roots, True
    if len(p) == 3:
        c, b, a = p
        disc = b * b - 4 * a * c
        if disc == 0:
            roots.append(-b / (2 * a))
            return roots, True
        sq = field_sqrt(field, disc)
        if sq:
            s = sq[0]
            roots.append((-b + s) / (2 * a))
            roots.append((-b - s) / (2 * a))
            return roots, True
        return roots, False
    return roots, len(p) <= 1


def solve_points(gb: GroebnerBasis, free_values=None) -> PointSet:
    """Points of a lex basis whose coordinates lie in the session field.

    Back-substitutes from the last variable to the first.  A variable left
    unconstrained raises :class:`NotZeroDimensionalHandled` unless
    ``free_values`` supplies sample values for it, in which case the
    result is marked incomplete.
    """
    if gb.order != LEX:
        raise OrderMismatch("solve_points needs a lex basis")
    ring = gb.ring
    field = ring.field
    n = ring.nvars
    if gb.is_unit():
        return PointSet((), True, ring.names)
    by_var = [[] for _ in range(n)]
    for g in gb.gens:
        sup = g.support()
        if sup:
            by_var[sup[0]].append(g)
    complete = True
    partial = [()]
    for j in range(n - 1, -1, -1):
        nxt = []
        for pt in partial:
            values = {j + 1 + k: v for k, v in enumerate(pt)}
            uni = []
            for g in by_var[j]:
                coeffs = {}
                for exp, c in g.terms.items():
                    for k in range(j + 1, n):
                        if exp[k]:
                            c = c * values[k] ** exp[k]
                    coeffs[exp[j]] = coeffs.get(exp[j], field.zero) + c
                u = utrim([coeffs.get(d, field.zero) for d in range(max(coeffs) + 1)])
                if u:
                    uni.append(u)
            if not uni:
                if free_values is None:
                    raise NotZeroDimensionalHandled(
                        f"variable {ring.names[j]} is unconstrained at a partial point"
                    )
                complete = False
                nxt.extend((field.convert(v),) + pt for v in free_values)
                continue
            g = uni[0]
            for u in uni[1:]:
                g = _ugcd(g, u)
            if len(g) == 1:
                continue
            roots, split = field_roots(field, g)
            complete = complete and split
            nxt.extend((r,) + pt for r in roots)
        partial = nxt
    return PointSet(tuple(partial), complete, ring.names)
