"""Expression grammar shared by system files, solution files and reports.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers are ring variables (``x1``, ``y2``, ``y1_0``, ``y1_2.0``) or the
extension generator ``t``.  Division is only allowed by scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exactfield import NFElem, NumberField

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_.]*)|(\S))")


def tokenize(text: str, line=None):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, line):
        self.tokens = tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def expect_op(self, ch):
        tok = self.take()
        if tok[0] != "op" or tok[1] != ch:
            self.error(f"expected {ch!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            node = ("mul" if tok[1] == "*" else "div", node, rhs, tok[2])
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer", tok)
            return ("pow", base, tok[1])
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return ("int", tok[1])
        if tok[0] == "name":
            return ("var", tok[1], tok[2])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        self.error("expected a number, a variable or '('", tok)


def parse_ast(text: str, line=None):
    return _Parser(text, line).parse()


def identifiers(node) -> set:
    kind = node[0]
    if kind == "var":
        return {node[1]}
    if kind == "int":
        return set()
    if kind in ("neg", "pow"):
        return identifiers(node[1])
    return identifiers(node[1]) | identifiers(node[2])


def evaluate(node, ring, line=None):
    """Turn an AST into an :class:`MPoly` of ``ring``."""
    kind = node[0]
    if kind == "int":
        return ring.const(node[1])
    if kind == "var":
        name = node[1]
        if name in ring.index:
            return ring.gen(name)
        if name == "t" and isinstance(ring.field, NumberField):
            return ring.const(ring.field.gen())
        raise ParseError(f"unknown identifier {name!r}", line, node[2])
    if kind == "neg":
        return -evaluate(node[1], ring, line)
    if kind == "pow":
        return evaluate(node[1], ring, line) ** node[2]
    lhs = evaluate(node[1], ring, line)
    rhs = evaluate(node[2], ring, line)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "div":
        if not rhs.is_constant():
            raise ParseError("division by a non-constant expression", line, node[3])
        if rhs.is_zero():
            raise ParseError("division by zero", line, node[3])
        return lhs / rhs.constant_coeff()
    raise AssertionError(kind)


def parse_poly(text: str, ring, line=None):
    return evaluate(parse_ast(text, line), ring, line)


def parse_scalar(text: str, field, line=None):
    from .multipoly import PolyRing

    return parse_poly(text, PolyRing([], field), line).constant_coeff()


def parse_scalar_list(text: str, field, line=None):
    parts = text.split(",")
    if any(not p.strip() for p in parts):
        raise ParseError("empty entry in comma-separated list", line)
    return [parse_scalar(p, field, line) for p in parts]


# -- rendering --


def _fmt_rat(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join(pieces):
    """Join ``(negative, body)`` pairs into ``a - b + c`` form."""
    if not pieces:
        return "0"
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_upoly(coeffs, var="t") -> str:
    pieces = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[e])
        if c == 0:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        pieces.append(_term_piece(c, mono))
    return _join(pieces)


def _term_piece(c, mono):
    """Sign and body of ``c * mono`` with ``c`` a scalar."""
    if isinstance(c, NFElem):
        if c.field.is_rational(c):
            return _term_piece(c.coeffs[0], mono)
        inner = format_upoly(c.coeffs, "t")
        nonzero = sum(1 for x in c.coeffs if x != 0)
        if not mono:
            return False, inner if nonzero == 1 else f"({inner})"
        if nonzero == 1:
            # single term like -3/2*t: keep its sign outside
            neg = inner.startswith("-")
            body = inner[1:] if neg else inner
            return neg, f"{body}*{mono}"
        return False, f"({inner})*{mono}"
    c = Fraction(c)
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return neg, _fmt_rat(a)
    if a == 1:
        return neg, mono
    return neg, f"{_fmt_rat(a)}*{mono}"


def format_scalar(c) -> str:
    neg, body = _term_piece(c, "")
    return ("-" if neg else "") + body


def format_monomial(exp, names) -> str:
    parts = []
    for e, name in zip(exp, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f, order=None, ascending=False) -> str:
    from .multipoly import GREVLEX

    order = order or GREVLEX
    terms = f.sorted_terms(order)
    if ascending:
        terms = terms[::-1]
    return _join([_term_piece(c, format_monomial(e, f.ring.names)) for e, c in terms])
