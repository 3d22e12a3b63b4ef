"""Approximate-solution varieties, their projections, and lifting.

For a textile system and an order ``N``, ``I_N`` is the ideal generated by the
coefficient polynomials of degree below ``N``; its zero set in the
coefficients of degree below ``D_N`` is the variety of approximate solutions
to order ``N``.  Eliminating every coefficient of degree ``>= k`` gives
``J_N^k``, the ideal of the Zariski closure of the projection to level ``k``.

Only closures are computed.  Nonemptiness of a projection is never inferred
from a stabilized chain of closures; existence is claimed only together with
an explicit witness (see :func:`lift`).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import BadBounds, DuplicateAlphas
from .exactfield import QQ
from .groebner import (
    GroebnerBasis,
    eliminate,
    ideal_equal,
    ideal_member,
    is_trivial,
    lex_basis,
    solve_points,
)
from .grammar import format_poly, format_scalar
from .multipoly import GREVLEX, MPoly, PolyRing, substitute
from .textile import (
    CoeffIndexing,
    TextileSystem,
    TruncatedSeries,
    coeff_ring,
    coeff_var_name,
    depend_bound,
    extract_coeffs,
    order_at_least,
    var_count,
)

DEFAULT_BRANCH_LIMIT = 64
DEFAULT_FREE_VALUES = (0, 1, -1)


def ideal_ring(sys: TextileSystem, N: int) -> PolyRing:
    return coeff_ring(sys.m, sys.n, depend_bound(sys, N), sys.field)


def build_ideal(sys: TextileSystem, N: int) -> list:
    """Nonzero coefficient polynomials of degree below ``N`` (generators of ``I_N``)."""
    if N < 1:
        raise BadBounds("N must be at least 1")
    return [g for g in extract_coeffs(sys, N).values() if not g.is_zero()]


def closure_projection(sys: TextileSystem, N: int, k: int) -> GroebnerBasis:
    """Reduced grevlex basis of ``J_N^k`` in the level-``k`` coefficient ring."""
    if not 1 <= k <= N:
        raise BadBounds(f"need 1 <= k <= N, got k = {k}, N = {N}")
    ring = ideal_ring(sys, N)
    keep = ring.names[: var_count(sys.n, k, sys.m)]
    gb = eliminate(build_ideal(sys, N), keep, ring)
    return GroebnerBasis(coeff_ring(sys.m, sys.n, k, sys.field), GREVLEX, gb.gens)


@dataclass
class ChainRow:
    N: int
    D: int
    gens: int
    basis: GroebnerBasis
    trivial: bool
    certificate: GroebnerBasis
    contained_in_next: bool | None = None


@dataclass
class ChainReport:
    k: int
    max_order: int
    rows: list
    stabilized_at: int | None
    obstruction_at: int | None

    @property
    def containment_holds(self) -> bool:
        return all(r.contained_in_next is not False for r in self.rows)

    def row(self, N: int) -> ChainRow:
        return next(r for r in self.rows if r.N == N)

    def lines(self):
        out = [f"CHAIN k={self.k} max-order={self.max_order}"]
        for r in self.rows:
            out.append(
                f"N={r.N} D={r.D} gens={r.gens} trivial={'y' if r.trivial else 'n'} gb={r.basis}"
            )
        if self.stabilized_at is None:
            out.append(f"STABILIZED NONE within horizon {self.max_order}")
        else:
            out.append(f"STABILIZED N0={self.stabilized_at} within horizon {self.max_order}")
        if self.obstruction_at is None:
            out.append("OBSTRUCTION NONE")
        else:
            out.append(f"OBSTRUCTION N={self.obstruction_at}")
        if not self.containment_holds:
            out.append("WARNING chain containment violated")
        return out

    def records(self):
        out = [("k", self.k), ("max_order", self.max_order)]
        for r in self.rows:
            p = f"row.{r.N}."
            out += [
                (p + "D", r.D),
                (p + "gens", r.gens),
                (p + "trivial", "y" if r.trivial else "n"),
                (p + "gb", str(r.basis)),
            ]
        out.append(("stabilized_at", self.stabilized_at if self.stabilized_at is not None else "none"))
        out.append(("obstruction_at", self.obstruction_at if self.obstruction_at is not None else "none"))
        return out


def _chain_row(args):
    sys, N, k = args
    gens = build_ideal(sys, N)
    trivial, cert = is_trivial(gens, ideal_ring(sys, N))
    basis = closure_projection(sys, N, k)
    return ChainRow(N, depend_bound(sys, N), len(gens), basis, trivial, cert)


def stabilization_scan(sys: TextileSystem, k: int, max_order: int, workers: int = 1) -> ChainReport:
    """Rows ``J_N^k`` for ``k <= N <= max_order`` plus stabilization and obstruction levels.

    ``stabilized_at`` is the least ``N0 < max_order`` whose basis equals every
    later basis within the horizon.  Rows are independent; ``workers > 1``
    computes them in separate processes without changing the result.
    """
    if k < 1 or max_order < k:
        raise BadBounds(f"need 1 <= k <= max-order, got k = {k}, max-order = {max_order}")
    jobs = [(sys, N, k) for N in range(k, max_order + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_chain_row, jobs))
    else:
        rows = [_chain_row(job) for job in jobs]
    for a, b in zip(rows, rows[1:]):
        a.contained_in_next = all(ideal_member(g, b.basis) for g in a.basis.gens)
    stabilized = None
    for i in range(len(rows) - 2, -1, -1):
        if ideal_equal(rows[i].basis, rows[i + 1].basis):
            stabilized = rows[i].N
        else:
            break
    obstruction = next((r.N for r in rows if r.trivial), None)
    return ChainReport(k, max_order, rows, stabilized, obstruction)


@dataclass
class Obstruction:
    N: int
    certificate: GroebnerBasis


def obstruction_scan(sys: TextileSystem, max_order: int) -> Obstruction | None:
    """Least ``N <= max_order`` with ``1 in I_N``.

    Such an ``N`` rules out approximate solutions to order ``N`` over every
    algebraically closed extension of the coefficient field.
    """
    if max_order < 1:
        raise BadBounds("max-order must be at least 1")
    for N in range(1, max_order + 1):
        trivial, gb = is_trivial(build_ideal(sys, N), ideal_ring(sys, N))
        if trivial:
            return Obstruction(N, gb)
    return None


# -- lifting --


@dataclass
class LiftResult:
    """Outcome of :func:`lift`.

    ``status`` is ``exact`` (``series`` verified to ``verified_order``),
    ``partial`` (``series`` known below ``reached_degree``; ``block_reason``
    is ``NoFieldPoint`` or ``BranchLimit``) or ``obstructed`` (``level`` with
    a ``{1}`` certificate).
    """

    status: str
    series: TruncatedSeries | None = None
    verified_order: int | None = None
    reached_degree: int | None = None
    block_reason: str | None = None
    level: int | None = None
    certificate: GroebnerBasis | None = None
    dead_ends: list = dc_field(default_factory=list)

    def lines(self):
        if self.status == "exact":
            out = [f"LIFT EXACT verified-order={self.verified_order}"]
            out += str(self.series).splitlines()
        elif self.status == "partial":
            out = [f"LIFT PARTIAL reached={self.reached_degree} reason={self.block_reason}"]
            if self.series is not None and self.reached_degree:
                out += str(self.series).splitlines()
        else:
            out = [f"LIFT OBSTRUCTED N={self.level} certificate={self.certificate}"]
        for level, assignment in self.dead_ends:
            point = ", ".join(f"{k}={format_scalar(v)}" for k, v in assignment.items())
            out.append(f"DEAD level={level} at {{{point}}}")
        return out

    def records(self):
        out = [("status", self.status)]
        if self.status == "exact":
            out.append(("verified_order", self.verified_order))
        if self.status == "partial":
            out += [("reached", self.reached_degree), ("reason", self.block_reason)]
        if self.status == "obstructed":
            out += [("level", self.level), ("certificate", str(self.certificate))]
        if self.series is not None:
            for i, line in enumerate(str(self.series).splitlines(), start=1):
                out.append((f"series.{i}", line.split(" = ", 1)[1]))
        out.append(("dead_ends", len(self.dead_ends)))
        return out


def default_free_values(sys: TextileSystem):
    """Sample values tried for unconstrained coefficients.

    The counterexample family samples its own listed field elements, the
    only values a finite enumeration can offer; other systems try small
    integers.
    """
    if sys.mode == "counterexample":
        return tuple(sys.alphas)
    return DEFAULT_FREE_VALUES


class _Lifter:
    def __init__(self, sys, d_max, branch_limit, free_values):
        self.sys = sys
        self.d_max = d_max
        self.branch_limit = branch_limit
        self.free_values = tuple(free_values)
        self._ideals = {}

    def ideal(self, N):
        if N not in self._ideals:
            self._ideals[N] = (ideal_ring(self.sys, N), build_ideal(self.sys, N))
        return self._ideals[N]

    def children(self, level, assign):
        """Extensions of a level-``level`` assignment to level ``level + 1``.

        Returns ``(points, split)``; an empty point list means the branch is
        dead at ``level + 1``.
        """
        sys = self.sys
        N = level + 1
        ring, gens = self.ideal(N)
        start = var_count(sys.n, level, sys.m) if level else 0
        rest = ring.subring(range(start, ring.nvars))
        special = [substitute(g, assign, rest) for g in gens]
        special = [g for g in special if not g.is_zero()]
        if any(g.is_constant() for g in special):
            return [], True
        if special and is_trivial(special, rest)[0]:
            return [], True
        new_names = CoeffIndexing(sys.m, sys.n, N).names_of_degree(level)
        new_ring = PolyRing(new_names, sys.field)
        extra = len(rest.names) > len(new_names) and any(
            v >= len(new_names) for g in special for v in g.support()
        )
        if extra:
            local = eliminate(special, new_names, rest).gens
        else:
            local = [new_ring.convert(g) for g in special]
        pts = solve_points(lex_basis(local, new_ring), self.free_values)
        out = []
        for pt in pts.as_dicts():
            if extra:
                check = [substitute(g, pt, rest) for g in special]
                check = [g for g in check if not g.is_zero()]
                if check and is_trivial(check, rest)[0]:
                    continue
            child = dict(assign)
            child.update(pt)
            out.append(child)
        return out, pts.complete

    def series(self, level, assign):
        idx = CoeffIndexing(self.sys.m, self.sys.n, max(level, 1))
        coeffs = {}
        for (i, a), name in zip(idx.entries, idx.names):
            if name in assign:
                coeffs[(i, a)] = assign[name]
        return TruncatedSeries(self.sys.n, self.sys.m, level, coeffs, self.sys.field)

    def verified_order(self):
        best = 0
        top = self.sys.max_degree if self.sys.mode == "explicit" else self.d_max
        for N in range(1, min(self.d_max, top) + 1):
            if depend_bound(self.sys, N) <= self.d_max:
                best = N
        return best

    def run(self) -> LiftResult:
        stack = [(0, {})]
        best = (0, {})
        dead = []
        while stack:
            level, assign = stack.pop()
            if level > best[0]:
                best = (level, assign)
            if level == self.d_max:
                y = self.series(level, assign)
                order = self.verified_order()
                if not order_at_least(self.sys, y, order):
                    raise AssertionError("lifted series fails verification")
                return LiftResult("exact", y, verified_order=order, reached_degree=level, dead_ends=dead)
            kids, _ = self.children(level, assign)
            if not kids:
                dead.append((level + 1, assign))
                if len(dead) > self.branch_limit:
                    return LiftResult(
                        "partial", self.series(*best), reached_degree=best[0],
                        block_reason="BranchLimit", dead_ends=dead,
                    )
                continue
            stack.extend((level + 1, kid) for kid in reversed(kids))
        deepest = max((lvl for lvl, _ in dead), default=1)
        for N in range(1, deepest + 1):
            ring, gens = self.ideal(N)
            trivial, cert = is_trivial(gens, ring)
            if trivial:
                return LiftResult("obstructed", level=N, certificate=cert, dead_ends=dead)
        return LiftResult(
            "partial", self.series(*best), reached_degree=best[0],
            block_reason="NoFieldPoint", dead_ends=dead,
        )


def lift(
    sys: TextileSystem,
    d_max: int,
    branch_limit: int = DEFAULT_BRANCH_LIMIT,
    free_values=None,
) -> LiftResult:
    """Degree-by-degree search for coefficients solving the system to order ``d_max``.

    Level ``k`` fixes the coefficients of degree below ``k``.  Each step
    specializes ``I_{k+1}`` at the current assignment, discards the branch if
    the result contains 1, and otherwise branches over the field points of
    the new coefficients (in :func:`solve_points` order).  Unconstrained
    coefficients take ``free_values``.
    """
    if d_max < 1:
        raise BadBounds("max-degree must be at least 1")
    if free_values is None:
        free_values = default_free_values(sys)
    return _Lifter(sys, d_max, branch_limit, free_values).run()


# -- the counterexample --


@dataclass(frozen=True)
class NonexistenceCertificate:
    """``G_{1, l0+1}`` with ``y1_0 = alpha_{l0}`` substituted."""

    l0: int
    alpha: object
    polynomial: MPoly
    specialized: MPoly

    @property
    def holds(self) -> bool:
        return self.specialized == -1

    def line(self):
        return (
            f"CERT l0={self.l0} alpha={format_scalar(self.alpha)} "
            f"G[{self.l0 + 1}]={format_poly(self.polynomial)} -> {format_poly(self.specialized)}"
        )


def counterexample_nonexistence(alphas, field=QQ) -> list:
    """One certificate per listed value: ``y1_0 = alpha_{l0}`` forces ``-1 = 0`` at degree ``l0 + 1``.

    Together they exclude exact solutions whose constant term is one of the
    listed values; nothing is claimed about values outside the list.
    """
    alphas = [field.convert(a) for a in alphas]
    if len(set(alphas)) != len(alphas):
        raise DuplicateAlphas("alpha values must be pairwise distinct")
    sys = TextileSystem.counterexample(alphas, field)
    coeffs = extract_coeffs(sys, len(alphas) + 1)
    y0 = coeff_var_name(1, (0,))
    certs = []
    for l0, a in enumerate(alphas):
        g = coeffs[(1, (l0 + 1,))]
        certs.append(NonexistenceCertificate(l0, a, g, substitute(g, {y0: a})))
    return certs

