"""Text formats: polynomial expressions, polynomial files and stable-map documents.

Polynomial grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" NATURAL)?
    atom   := NUMBER | NAME | "(" expr ")"

``NUMBER`` is an integer or a rational literal ``a/b``; ``NAME`` matches
``[a-zA-Z][a-zA-Z0-9]*``.  Multiplication is always explicit.

A polynomial file declares its ring and order, then lists one polynomial
per line::

    vars: x0 y0 y1
    order: weighted 2 3 2
    4*y1 - 6*x0
    6*y0
    -2*x0*y1

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polyalg import MonomialOrder, Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-zA-Z][a-zA-Z0-9]*)|(?P<op>[-+*^()]))"
)


class PolySyntaxError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text.rstrip())))
    return toks


class _Parser:
    def __init__(self, text: str, ring: tuple[str, ...], line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.ring = ring
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok.text == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num" or "/" in tok.text:
                self.error("exponent must be a natural number literal")
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            if "/" in tok.text and int(tok.text.split("/")[1]) == 0:
                self.error("zero denominator", tok)
            return Polynomial.constant(self.ring, Fraction(tok.text))
        if tok.kind == "name":
            if tok.text not in self.ring:
                self.error(f"undeclared variable {tok.text!r}", tok)
            return Polynomial.variable(self.ring, tok.text)
        if tok.kind == "op" and tok.text == "(":
            p = self.expr()
            close = self.take()
            if close.text != ")":
                self.error("expected ')'", close)
            return p
        if tok.kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {tok.text!r}", tok)


def parse_polynomial(text: str, ring, line: int = 1, column: int = 1) -> Polynomial:
    """Parse one expression over ``ring``; errors report ``line``/``column``."""
    return _Parser(text, tuple(ring), line, column).parse()


def _content_lines(doc: str):
    for n, raw in enumerate(doc.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, body


def _parse_order(text: str, nvars: int, line: int, col: int) -> MonomialOrder:
    words = text.split()
    if not words:
        raise PolySyntaxError("missing order name", line, col)
    kind = words[0]
    if kind in ("grevlex", "lex"):
        if len(words) > 1:
            raise PolySyntaxError(f"{kind} takes no weights", line, col)
        return MonomialOrder(kind)
    if kind == "weighted":
        try:
            weights = [int(w) for w in words[1:]]
        except ValueError:
            raise PolySyntaxError("malformed weights: expected positive integers", line, col) from None
        if len(weights) != nvars:
            raise PolySyntaxError(f"malformed weights: {len(weights)} weights for {nvars} variables", line, col)
        if any(w <= 0 for w in weights):
            raise PolySyntaxError("malformed weights: weights must be positive", line, col)
        return MonomialOrder.weighted(weights)
    raise PolySyntaxError(f"unknown order {kind!r}", line, col)


def _header(body: str, key: str, line: int) -> tuple[str, int]:
    stripped = body.lstrip()
    if not stripped.startswith(key + ":"):
        raise PolySyntaxError(f"expected '{key}:' declaration", line, len(body) - len(stripped) + 1)
    col = len(body) - len(stripped) + len(key) + 2
    return stripped[len(key) + 1 :], col


def parse_poly_source(doc: str) -> tuple[tuple[str, ...], MonomialOrder, list[Polynomial]]:
    """Parse a polynomial file into ``(ring, order, polynomials)``."""
    lines = list(_content_lines(doc))
    if not lines:
        raise PolySyntaxError("empty document", 1, 1)
    n, body = lines[0]
    rest, col = _header(body, "vars", n)
    ring = tuple(rest.split())
    if not ring:
        raise PolySyntaxError("no variables declared", n, col)
    for name in ring:
        if not re.fullmatch(r"[a-zA-Z][a-zA-Z0-9]*", name):
            raise PolySyntaxError(f"bad variable name {name!r}", n, col + rest.index(name))
    if len(set(ring)) != len(ring):
        raise PolySyntaxError("duplicate variable names", n, col)
    if len(lines) < 2:
        raise PolySyntaxError("missing 'order:' declaration", len(doc.splitlines()) + 1, 1)
    n, body = lines[1]
    rest, col = _header(body, "order", n)
    order = _parse_order(rest, len(ring), n, col)
    polys = [parse_polynomial(body, ring, line=n) for n, body in lines[2:]]
    return ring, order, polys


def format_poly_source(ring, order: MonomialOrder, polys) -> str:
    out = [f"vars: {' '.join(ring)}", f"order: {order}"]
    out.extend(p.to_string(order) for p in polys)
    return "\n".join(out) + "\n"


# -- stable-map documents ------------------------------------------------------

STABLE_MAP_FIELDS = (
    "degree",
    "param_x",
    "param_y",
    "param_z",
    "implicit",
    "marked_points",
    "marked_lines",
)


def _parse_rational(text: str, line: int, col: int) -> Fraction:
    if not re.fullmatch(r"-?\d+(?:/\d+)?", text):
        raise PolySyntaxError(f"expected a rational number, got {text!r}", line, col)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise PolySyntaxError("zero denominator", line, col) from None


def parse_stable_map_document(doc: str) -> dict:
    """Parse ``key: value`` lines into the fields of a stable-map problem.

    ``param_x/param_y/param_z`` are forms in ``s, t``; ``implicit`` is a form
    in ``x, y, z``.  ``marked_points`` lists ``t s`` coordinate pairs and
    ``marked_lines`` lists linear forms in ``x, y, z``, both separated by
    ``;``.  Returns a dict with keys ``degree``, ``parametrization``,
    ``implicit``, ``marked_points``, ``marked_lines`` (the last two may be
    ``None``).
    """
    raw: dict[str, tuple[str, int, int]] = {}
    for n, body in _content_lines(doc):
        if ":" not in body:
            raise PolySyntaxError("expected 'key: value'", n, 1)
        key, value = body.split(":", 1)
        key = key.strip()
        if key not in STABLE_MAP_FIELDS:
            raise PolySyntaxError(f"unknown field {key!r}", n, 1)
        if key in raw:
            raise PolySyntaxError(f"duplicate field {key!r}", n, 1)
        raw[key] = (value, n, len(body) - len(value) + 1)
    for key in STABLE_MAP_FIELDS[:5]:
        if key not in raw:
            raise PolySyntaxError(f"missing field {key!r}", max((v[1] for v in raw.values()), default=0) + 1, 1)

    value, n, col = raw["degree"]
    if not value.strip().isdigit():
        raise PolySyntaxError("degree must be a natural number", n, col)
    degree = int(value)

    param = []
    for key in ("param_x", "param_y", "param_z"):
        value, n, col = raw[key]
        param.append(parse_polynomial(value, ("s", "t"), line=n, column=col))
    value, n, col = raw["implicit"]
    implicit = parse_polynomial(value, ("x", "y", "z"), line=n, column=col)

    points = None
    if "marked_points" in raw:
        value, n, col = raw["marked_points"]
        points = []
        for chunk in value.split(";"):
            parts = chunk.split()
            if len(parts) != 2:
                raise PolySyntaxError("a marked point is two rationals 't s'", n, col)
            points.append(tuple(_parse_rational(p, n, col) for p in parts))
    lines = None
    if "marked_lines" in raw:
        value, n, col = raw["marked_lines"]
        lines = []
        for chunk in value.split(";"):
            form = parse_polynomial(chunk, ("x", "y", "z"), line=n, column=col)
            if form.total_degree() != 1 or form.constant_term():
                raise PolySyntaxError(f"marked line {chunk.strip()!r} is not a linear form", n, col)
            lines.append(tuple(form.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    return {
        "degree": degree,
        "parametrization": tuple(param),
        "implicit": implicit,
        "marked_points": points,
        "marked_lines": lines,
    }
