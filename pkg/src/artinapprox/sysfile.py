"""Plain-text system and solution files.

System file::

    textile-system v1
    field: Q                      # or  Q(t)/t^2 - 2
    x-vars: 1
    unknowns: 1
    outputs: 1
    mode: composition             # composition | explicit | counterexample
    F1 = y1^2 - (1 + x1)

Explicit bodies use ``max-degree: <N>``, ``depend <N> = <D_N>`` and
``coef <j> (<beta>) = <poly in y<i>_<alpha>>``; counterexample bodies use
``alphas = <scalar>, <scalar>, ...``.  ``#`` starts a comment.

Solution file: one ``y<i> = <poly in x1..xn>`` line per component.  A
solution file denotes polynomials, so coefficients beyond the highest
written degree are zero.
"""

from __future__ import annotations

import re

from .errors import ArtinError, ComponentMismatch, ParseError, ValidationError
from .exactfield import QQ, NumberField
from .grammar import (
    evaluate,
    format_poly,
    format_scalar,
    identifiers,
    parse_ast,
    parse_poly,
    parse_scalar_list,
)
from .multipoly import PolyRing
from .textile import (
    TextileSystem,
    TruncatedSeries,
    coeff_ring,
    indices_below,
    parse_coeff_var_name,
    x_ring,
)

FORMAT_TAG = "textile-system v1"
HEADER_KEYS = ("field", "x-vars", "unknowns", "outputs", "mode")
MODES = ("composition", "explicit", "counterexample")

_HEADER = re.compile(r"^([a-z-]+)\s*:\s*(.*)$")
_F_LINE = re.compile(r"^F(\d+)\s*=(.*)$")
_DEPEND = re.compile(r"^depend\s+(\d+)\s*=\s*(\d+)\s*$")
_COEF = re.compile(r"^coef\s+(\d+)\s*\(([^)]*)\)\s*=(.*)$")
_ALPHAS = re.compile(r"^alphas\s*=(.*)$")
_SOLUTION = re.compile(r"^y(\d+)\s*=(.*)$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line, raw


def _col(raw, fragment):
    """1-based column of ``fragment`` inside the raw line."""
    pos = raw.find(fragment)
    return pos + 1 if pos >= 0 else 1


def parse_field(text: str, line=None):
    text = text.strip()
    if text == "Q":
        return QQ
    m = re.match(r"^Q\(t\)\s*/\s*(.+)$", text)
    if not m:
        raise ParseError(f"unknown field {text!r}; expected Q or Q(t)/<monic poly>", line)
    ring = PolyRing(["t"], QQ)
    poly = parse_poly(m.group(1), ring, line)
    deg = poly.total_degree()
    if deg < 1:
        raise ParseError("extension modulus must have degree at least 1", line)
    coeffs = [poly.coeff((d,)) for d in range(deg + 1)]
    if coeffs[-1] != 1:
        raise ParseError("extension modulus must be monic", line)
    return NumberField(coeffs)


def format_field(field) -> str:
    return field.name


def _int(text, what, line, col=1):
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", line, col) from None
    return v


def parse_system(text: str) -> TextileSystem:
    lines = list(_lines(text))
    if not lines or lines[0][1] != FORMAT_TAG:
        raise ParseError(f"first line must be {FORMAT_TAG!r}", lines[0][0] if lines else 1, 1)
    header = {}
    body = []
    for no, line, raw in lines[1:]:
        m = _HEADER.match(line)
        if m and m.group(1) in HEADER_KEYS:
            if body:
                raise ParseError(f"header key {m.group(1)!r} after the body started", no, 1)
            if m.group(1) in header:
                raise ParseError(f"duplicate header key {m.group(1)!r}", no, 1)
            header[m.group(1)] = (m.group(2).strip(), no)
        else:
            body.append((no, line, raw))
    for key in ("field", "mode"):
        if key not in header:
            raise ParseError(f"missing header key {key!r}")
    field = parse_field(*header["field"])
    mode, mode_line = header["mode"]
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}", mode_line, 1)
    dims = {}
    for key in ("x-vars", "unknowns", "outputs"):
        if key in header:
            dims[key] = _int(header[key][0], key, header[key][1])
        elif mode != "counterexample":
            raise ParseError(f"missing header key {key!r}")
        else:
            dims[key] = 1
    n, m, q = dims["x-vars"], dims["unknowns"], dims["outputs"]
    if min(n, m, q) < 1:
        raise ValidationError("x-vars, unknowns and outputs must be positive")
    try:
        if mode == "composition":
            return _parse_composition(body, n, m, q, field)
        if mode == "explicit":
            return _parse_explicit(body, n, m, q, field)
        return _parse_counterexample(body, n, m, q, field)
    except ValidationError:
        raise
    except ParseError:
        raise
    except ArtinError as exc:
        raise ValidationError(str(exc)) from exc


def _parse_composition(body, n, m, q, field):
    proto = TextileSystem(n=n, m=m, q=q, mode="composition", field=field)
    ring = proto.fx_ring()
    F = {}
    for no, line, raw in body:
        mm = _F_LINE.match(line)
        if not mm:
            raise ParseError(f"unexpected line in a composition system: {line!r}", no, 1)
        j = int(mm.group(1))
        if not 1 <= j <= q:
            raise ValidationError(f"F{j} outside F1..F{q} (line {no})")
        if j in F:
            raise ParseError(f"F{j} defined twice", no, 1)
        expr = mm.group(2)
        F[j] = _parse_expr_at(expr, ring, no, raw)
    missing = [j for j in range(1, q + 1) if j not in F]
    if missing:
        raise ValidationError(f"missing definitions for F{missing}")
    return TextileSystem.composition([F[j] for j in range(1, q + 1)], n, m)


def _parse_expr_at(expr, ring, no, raw):
    offset = _col(raw, expr) - 1 if expr.strip() else 0
    try:
        return parse_poly(expr, ring, no)
    except ParseError as exc:
        col = None if exc.column is None else exc.column + offset
        raise ParseError(exc.message, no, col) from None


def _parse_explicit(body, n, m, q, field):
    max_degree = None
    depend = {}
    raw_coefs = {}
    for no, line, raw in body:
        hm = _HEADER.match(line)
        if hm and hm.group(1) == "max-degree":
            if max_degree is not None:
                raise ParseError("duplicate max-degree", no, 1)
            max_degree = _int(hm.group(2).strip(), "max-degree", no)
            continue
        dm = _DEPEND.match(line)
        if dm:
            N, D = int(dm.group(1)), int(dm.group(2))
            if N in depend:
                raise ParseError(f"duplicate dependency bound for N = {N}", no, 1)
            if D < N:
                raise ValidationError(f"line {no}: dependency bound D_{N} = {D} is smaller than {N}")
            depend[N] = D
            continue
        cm = _COEF.match(line)
        if cm:
            j = int(cm.group(1))
            try:
                beta = tuple(int(p) for p in cm.group(2).split(","))
            except ValueError:
                raise ParseError("multi-index must be a comma list of integers", no, _col(raw, "(") + 1) from None
            if (j, beta) in raw_coefs:
                raise ParseError(f"coef {j} {beta} defined twice", no, 1)
            expr = cm.group(3)
            try:
                ast = parse_ast(expr, no)
            except ParseError as exc:
                raise ParseError(exc.message, no, (exc.column or 1) + _col(raw, expr) - 1) from None
            raw_coefs[(j, beta)] = (ast, no, raw, expr)
            continue
        raise ParseError(f"unexpected line in an explicit system: {line!r}", no, 1)
    if max_degree is None:
        raise ParseError("explicit system needs max-degree")
    top = max(depend.values(), default=1)
    for ast, no, raw, expr in raw_coefs.values():
        for name in identifiers(ast):
            parsed = parse_coeff_var_name(name)
            if name == "t" and isinstance(field, NumberField):
                continue
            if parsed is None or parsed[0] > m or len(parsed[1]) != n:
                raise ParseError(f"unknown identifier {name!r}", no, _col(raw, name))
            top = max(top, sum(parsed[1]) + 1)
    ring = coeff_ring(m, n, top, field)
    table = {}
    for key, (ast, no, raw, expr) in raw_coefs.items():
        poly = evaluate(ast, ring, no)
        if not poly.is_zero():
            table[key] = poly
    return TextileSystem.explicit(n, m, q, max_degree, depend, table, field)


def _parse_counterexample(body, n, m, q, field):
    if (n, m, q) != (1, 1, 1):
        raise ValidationError("the counterexample family has x-vars = unknowns = outputs = 1")
    alphas = None
    for no, line, raw in body:
        am = _ALPHAS.match(line)
        if not am:
            raise ParseError(f"unexpected line in a counterexample system: {line!r}", no, 1)
        if alphas is not None:
            raise ParseError("alphas given twice", no, 1)
        alphas = parse_scalar_list(am.group(1), field, no)
    if alphas is None:
        raise ParseError("counterexample system needs an alphas line")
    if len(set(alphas)) != len(alphas):
        raise ValidationError("alpha values must be pairwise distinct")
    return TextileSystem.counterexample(alphas, field)


def render_system(sys: TextileSystem) -> str:
    out = [
        FORMAT_TAG,
        f"field: {format_field(sys.field)}",
        f"x-vars: {sys.n}",
        f"unknowns: {sys.m}",
        f"outputs: {sys.q}",
        f"mode: {sys.mode}",
    ]
    if sys.mode == "composition":
        for j, f in enumerate(sys.F, start=1):
            out.append(f"F{j} = {format_poly(f)}")
    elif sys.mode == "explicit":
        out.append(f"max-degree: {sys.max_degree}")
        for N in sorted(sys.depend):
            out.append(f"depend {N} = {sys.depend[N]}")
        for b in indices_below(sys.n, sys.max_degree):
            for j in range(1, sys.q + 1):
                p = sys.table.get((j, b))
                if p is not None and not p.is_zero():
                    out.append(f"coef {j} ({','.join(map(str, b))}) = {format_poly(p)}")
    else:
        out.append("alphas = " + ", ".join(format_scalar(a) for a in sys.alphas))
    return "\n".join(out) + "\n"


def parse_solution(text: str, n: int, m: int, field=QQ, cap: int | None = None) -> TruncatedSeries:
    """Read ``y<i> = <poly>`` lines into a series.

    ``cap`` defaults to one more than the highest degree written; a larger
    ``cap`` pads with zero coefficients.
    """
    ring = x_ring(n, field)
    polys = {}
    for no, line, raw in _lines(text):
        mm = _SOLUTION.match(line)
        if not mm:
            raise ParseError(f"expected 'y<i> = <polynomial>', got {line!r}", no, 1)
        i = int(mm.group(1))
        if not 1 <= i <= m:
            raise ComponentMismatch(f"line {no}: component y{i} but the system has {m} unknowns")
        if i in polys:
            raise ParseError(f"y{i} given twice", no, 1)
        polys[i] = _parse_expr_at(mm.group(2), ring, no, raw)
    if not polys:
        raise ParseError("empty solution file")
    degree = max(p.total_degree() for p in polys.values())
    natural = max(1, degree + 1)
    cap = natural if cap is None else max(cap, natural)
    coeffs = {}
    for i, p in polys.items():
        for a, c in p.terms.items():
            coeffs[(i, a)] = c
    return TruncatedSeries(n, m, cap, coeffs, field)


def render_solution(y: TruncatedSeries) -> str:
    return str(y) + "\n"


def format_beta(beta) -> str:
    return "(" + ",".join(str(b) for b in beta) + ")"


def format_x_monomial(alpha) -> str:
    from .grammar import format_monomial

    return format_monomial(alpha, [f"x{j}" for j in range(1, len(alpha) + 1)]) or "1"

