"""Text forms: element literals, coefficient family files, expressions.

Element literals
    [1+2i, 0, -3]          finite, one entry per coordinate
    [1, 1 | 0.5]           sequence: prefix entries, then the constant tail
    [2, inf, 0]            extended positive (finite model, entries in [0, inf])

Family files, one coordinate per line (blank lines and # comments skipped)
    geom 0.5               a_n = 0.5^n
    geom 0.5 2             a_n = 2 * 0.5^n
    polygeom 2 0.5         a_n = (n+1)^2 * 0.5^n
    invfact                a_n = 1/n!
    fact                   a_n = n!
    table 1,2,3 then geom 0.5

Expressions
    z, i, numbers like 2 or 1.5i, +, -, *, inv(...), ^k, [element literals]
"""

from __future__ import annotations

import math
import re

from .calculus import Const, Expr, Inv, ONE, VAR
from .convergence import CoefficientFamily, CoordinateSeries
from .lattice import ComplexElement, RealElement
from .supcompletion import ExtendedPositive


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
        if column is not None:
            where += (", " if where else "") + f"column {column}"
        super().__init__(f"{message} ({where})" if where else message)


# -- formatting -------------------------------------------------------------

def _fmt_float(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def format_complex_scalar(s) -> str:
    s = complex(s)
    re_, im = s.real, s.imag
    if im == 0:
        return _fmt_float(re_)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = _fmt_float(im) + "i"
    if re_ == 0:
        return imag
    joiner = "+" if not imag.startswith("-") else ""
    return _fmt_float(re_) + joiner + imag


def _fmt_element(prefix, tail, fmt) -> str:
    entries = ", ".join(fmt(v) for v in prefix)
    if tail is None:
        return f"[{entries}]"
    if entries:
        return f"[{entries} | {fmt(tail)}]"
    return f"[| {fmt(tail)}]"


def format_complex_element(z: ComplexElement) -> str:
    return _fmt_element(z.prefix, z.tail, format_complex_scalar)


def format_real(x: RealElement) -> str:
    return _fmt_element(x.prefix, x.tail, _fmt_float)


def format_extended(u: ExtendedPositive) -> str:
    return _fmt_element(u.coords, None, _fmt_float)


# -- scalar and element literals --------------------------------------------

def parse_complex_scalar(token: str, line=None, column=None) -> complex:
    text = token.strip().replace(" ", "")
    if not text:
        raise ParseError("empty number", line, column)
    try:
        value = complex(text.replace("i", "j"))
    except ValueError:
        raise ParseError(f"bad complex number {token.strip()!r}", line, column) from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"{token.strip()!r} is not finite", line, column)
    return value


def _parse_float(token: str, line=None, allow_inf=False) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"bad number {token.strip()!r}", line) from None
    if math.isnan(value) or (math.isinf(value) and not allow_inf):
        raise ParseError(f"{token.strip()!r} is not allowed here", line)
    return value


def _split_literal(text: str, line=None):
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("element literal must look like [1, 2] or [1, 2 | 0]", line)
    inner = body[1:-1]
    tail = None
    if "|" in inner:
        if inner.count("|") > 1:
            raise ParseError("only one '|' may separate prefix from tail", line)
        inner, tail = inner.split("|")
        if not tail.strip():
            raise ParseError("missing tail entry after '|'", line)
        tail = tail.strip()
    entries = []
    if inner.strip():
        for piece in inner.split(","):
            if not piece.strip():
                raise ParseError("empty entry in element literal", line)
            entries.append(piece.strip())
    return entries, tail


def parse_complex_element(text: str, line=None) -> ComplexElement:
    entries, tail = _split_literal(text, line)
    values = tuple(parse_complex_scalar(t, line) for t in entries)
    if tail is None:
        if not values:
            raise ParseError("finite element needs at least one entry", line)
        return ComplexElement.finite(values)
    return ComplexElement.seq(values, parse_complex_scalar(tail, line))


def parse_real_element(text: str, line=None) -> RealElement:
    entries, tail = _split_literal(text, line)
    values = tuple(_parse_float(t, line) for t in entries)
    if tail is None:
        if not values:
            raise ParseError("finite element needs at least one entry", line)
        return RealElement.finite(values)
    return RealElement.seq(values, _parse_float(tail, line))


def parse_extended_element(text: str, line=None) -> ExtendedPositive:
    entries, tail = _split_literal(text, line)
    if tail is not None:
        raise ParseError("extended elements use the finite model (no '|')", line)
    if not entries:
        raise ParseError("extended element needs at least one entry", line)
    values = []
    for t in entries:
        v = _parse_float(t, line, allow_inf=True)
        if v < 0:
            raise ParseError(f"extended entries must be >= 0, got {t!r}", line)
        values.append(v)
    return ExtendedPositive.finite(values)


# -- coefficient family files ------------------------------------------------

_KINDS = ("geom", "polygeom", "invfact", "fact", "table")


def parse_coordinate_kind(tokens, line=None) -> CoordinateSeries:
    if not tokens:
        raise ParseError("empty coefficient kind", line)
    head, rest = tokens[0], list(tokens[1:])
    if head == "table":
        if "then" not in rest:
            raise ParseError("table syntax: table v0,v1,... then <kind>", line)
        cut = rest.index("then")
        blob = "".join(rest[:cut])
        if not blob:
            raise ParseError("table needs at least one value", line)
        values = [_parse_float(p, line) for p in blob.split(",") if p != ""]
        base = parse_coordinate_kind(rest[cut + 1:], line)
        return base.with_table(values)
    if head == "geom":
        if len(rest) not in (1, 2):
            raise ParseError("geom takes a ratio and an optional scale", line)
        ratio = _parse_float(rest[0], line)
        if ratio < 0:
            raise ParseError("ratio must be nonnegative (signs go in the scale)", line)
        scale = _parse_float(rest[1], line) if len(rest) == 2 else 1.0
        return CoordinateSeries.geometric(ratio, scale)
    if head == "polygeom":
        if len(rest) != 2:
            raise ParseError("polygeom takes a degree and a ratio", line)
        try:
            degree = int(rest[0])
        except ValueError:
            raise ParseError(f"bad degree {rest[0]!r}", line) from None
        if degree < 0:
            raise ParseError("degree must be nonnegative", line)
        ratio = _parse_float(rest[1], line)
        if ratio < 0:
            raise ParseError("ratio must be nonnegative", line)
        return CoordinateSeries.poly_geometric(degree, ratio)
    if head == "invfact":
        if rest:
            raise ParseError("invfact takes no arguments", line)
        return CoordinateSeries.inverse_factorial()
    if head == "fact":
        if rest:
            raise ParseError("fact takes no arguments", line)
        return CoordinateSeries.factorial()
    raise ParseError(f"unknown kind {head!r} (expected one of {', '.join(_KINDS)})", line)


def parse_family(text: str) -> CoefficientFamily:
    coords = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        coords.append(parse_coordinate_kind(stripped.split(), ln))
    if not coords:
        raise ParseError("family file has no coordinate lines")
    return CoefficientFamily.of(coords)


# -- expressions --------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?i?)"
    r"|(?P<elem>\[[^\]]*\])"
    r"|(?P<op>[()+\-*^])"
    r"|(?P<ws>\s+)"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.length = len(text)

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expect=None):
        tok = self._peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression"
                             + (f", expected {expect!r}" if expect else ""),
                             column=self.length + 1)
        self.pos += 1
        return tok

    def _expect_op(self, op):
        tok = self._next(expect=op)
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}, got {tok[1]!r}", column=tok[2])

    def parse(self) -> Expr:
        node = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", column=tok[2])
        return node

    def _expr(self) -> Expr:
        node = self._term()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "+-":
            self._next()
            rhs = self._term()
            node = node + rhs if tok[1] == "+" else node - rhs
        return node

    def _term(self) -> Expr:
        node = self._factor()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] == "*":
            self._next()
            node = node * self._factor()
        return node

    def _factor(self) -> Expr:
        # unary sign binds looser than ^, so -z^2 reads as -(z^2)
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self._next()
            arg = self._factor()
            return arg if tok[1] == "+" else (-1.0) * arg
        return self._power()

    def _power(self) -> Expr:
        node = self._atom()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] == "^":
            self._next()
            etok = self._next(expect="an integer exponent")
            if etok[0] != "num" or etok[1].endswith("i"):
                raise ParseError(f"exponent must be an integer, got {etok[1]!r}",
                                 column=etok[2])
            value = float(etok[1])
            if value != int(value):
                raise ParseError(f"exponent must be an integer, got {etok[1]!r}",
                                 column=etok[2])
            node = node ** int(value)
        return node

    def _atom(self) -> Expr:
        tok = self._next(expect="an expression")
        kind, text, col = tok
        if kind == "name":
            if text == "z":
                return VAR
            if text == "i":
                return 1j * ONE
            if text == "inv":
                self._expect_op("(")
                inner = self._expr()
                self._expect_op(")")
                return Inv(inner)
            raise ParseError(f"unknown name {text!r} (expected z, i, or inv)", column=col)
        if kind == "num":
            return parse_complex_scalar(text, column=col) * ONE
        if kind == "elem":
            return Const(parse_complex_element(text))
        if kind == "op" and text == "(":
            inner = self._expr()
            self._expect_op(")")
            return inner
        raise ParseError(f"unexpected {text!r}", column=col)


def parse_expression(text: str) -> Expr:
    if not text.strip():
        raise ParseError("empty expression")
    return _ExprParser(text).parse()
