"""Source documents: a header, bindings and directives over a grammar of rational polynomials.

    vars t, x, y          # ordered variables; the prefix x^i is the first i names
    param t               # optional
    precision 12
    series g = 4 + t + t^2
    germ x*y*(y - x)*(y - (3+t)*x)*(y - g*x)

``name = expr`` binds an exact polynomial (truncated to the precision when its
degree reaches it); ``series name = expr`` binds a truncated series.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import Jet, VarContext


class ParseError(ValueError):
    def __init__(self, message, line=1, col=1):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class UndeclaredIdentifier(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")

DIRECTIVES = ("germ", "seed", "main", "target", "delta", "epsilon", "escape", "series")


@dataclass
class SourceDocument:
    ctx: VarContext
    precision: int
    bindings: dict = field(default_factory=dict)
    germs: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    main: str | None = None
    target: int | None = None
    radii: dict = field(default_factory=dict)
    escape: Fraction | None = None

    def main_index(self, default: int = -1) -> int:
        if self.main is None:
            return default % self.ctx.arity
        return self.ctx.index(self.main)


def _tokenize(text: str, line: int, col0: int):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        kind = ("num", "id", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), line, col0 + start))
        pos = m.end()
    out.append(("end", "", line, col0 + len(text.rstrip())))
    return out


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := base ('^' natural)?; base := rational | identifier | '(' expr ')'."""

    def __init__(self, tokens, ctx: VarContext, env: dict):
        self.toks = tokens
        self.i = 0
        self.ctx = ctx
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        shown = tok[1] or "end of input"
        raise ParseError(f"{msg} (at {shown!r})", tok[2], tok[3])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] != "op":
            self.fail(f"expected {value!r}")
        return self.take()

    def parse(self) -> Jet:
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self) -> Jet:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Jet:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Jet:
        b = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.fail("exponent must be a natural number")
            self.take()
            b = b ** int(tok[1])
        return b

    def base(self) -> Jet:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            num = int(tok[1])
            if self.peek()[:2] == ("op", "/"):
                self.take()
                d = self.peek()
                if d[0] != "num" or int(d[1]) == 0:
                    self.fail("denominator must be a positive integer")
                self.take()
                return Jet.constant(self.ctx, Fraction(num, int(d[1])))
            return Jet.constant(self.ctx, num)
        if tok[0] == "id":
            self.take()
            if tok[1] in self.env:
                return self.env[tok[1]]
            if tok[1] in self.ctx.names:
                return Jet.variable(self.ctx, tok[1])
            raise UndeclaredIdentifier(f"undeclared identifier {tok[1]!r}", tok[2], tok[3])
        if tok[:2] == ("op", "("):
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        self.fail("expected a number, identifier or '('")


def _settle(value: Jet, precision: int, series: bool) -> Jet:
    """Exact polynomial below the precision, otherwise its truncation."""
    if series or (value.exact and value.degree() >= precision):
        return value.truncate(precision)
    return value


def parse_expression(text: str, ctx: VarContext, precision: int, env=None,
                     line: int = 1, col: int = 1, series: bool = False) -> Jet:
    tokens = _tokenize(text, line, col)
    value = _ExprParser(tokens, ctx, env or {}).parse()
    return _settle(value, precision, series)


def _split_comment(raw: str) -> str:
    return raw.split("#", 1)[0]


def _names(rest: str, line: int, col: int):
    names = [n.strip() for n in rest.split(",")]
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
            raise ParseError(f"bad variable name {n!r}", line, col)
    return names


def parse_document(text: str, precision: int | None = None) -> SourceDocument:
    """Parse a document; ``precision`` overrides the header value."""
    names = None
    param = None
    header_prec = None
    lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = _split_comment(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        word, _, rest = body.strip().partition(" ")
        col = indent + len(word) + 2
        if word == "vars":
            if names is not None:
                raise ParseError("variables declared twice", ln, indent + 1)
            names = _names(rest, ln, col)
        elif word == "param":
            param = rest.strip()
        elif word == "precision":
            try:
                header_prec = int(rest.strip())
            except ValueError:
                raise ParseError("precision must be an integer", ln, col) from None
            if header_prec < 1:
                raise ParseError("precision must be >= 1", ln, col)
        else:
            lines.append((ln, indent, body.strip()))
    if names is None:
        raise ParseError("missing 'vars' declaration", 1, 1)
    if precision is not None and precision < 1:
        raise ParseError("precision must be >= 1", 1, 1)
    n = precision or header_prec
    if n is None:
        raise ParseError("missing 'precision' declaration (or --precision)", 1, 1)
    try:
        ctx = VarContext(tuple(names), param or None)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
    doc = SourceDocument(ctx, n)

    for ln, indent, body in lines:
        word, _, rest = body.partition(" ")
        rest_col = indent + len(word) + 2
        if word == "series" or (word not in DIRECTIVES and "=" in body):
            series = word == "series"
            stmt = rest if series else body
            base_col = rest_col if series else indent + 1
            name, eq, expr = stmt.partition("=")
            name = name.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ParseError("expected 'name = expression'", ln, base_col)
            if name in ctx.names:
                raise ParseError(f"cannot rebind variable {name!r}", ln, base_col)
            ecol = base_col + stmt.index("=") + 1
            doc.bindings[name] = parse_expression(expr, ctx, n, doc.bindings, ln, ecol, series)
        elif word in ("germ", "seed"):
            value = parse_expression(rest, ctx, n, doc.bindings, ln, rest_col)
            (doc.germs if word == "germ" else doc.seeds).append(value)
        elif word == "main":
            name = rest.strip()
            if name not in ctx.names:
                raise UndeclaredIdentifier(f"undeclared variable {name!r}", ln, rest_col)
            doc.main = name
        elif word == "target":
            try:
                doc.target = int(rest.strip())
            except ValueError:
                raise ParseError("target must be an integer", ln, rest_col) from None
        elif word in ("delta", "epsilon"):
            name, eq, value = rest.partition("=")
            name = name.strip()
            if name not in ctx.names:
                raise UndeclaredIdentifier(f"undeclared variable {name!r}", ln, rest_col)
            doc.radii[name] = _positive_rational(value, ln, rest_col + len(rest) - len(value))
        elif word == "escape":
            doc.escape = _positive_rational(rest, ln, rest_col)
        else:
            raise ParseError(f"unknown directive {word!r}", ln, indent + 1)
    return doc


def _positive_rational(text: str, line: int, col: int) -> Fraction:
    try:
        value = Fraction(text.strip())
    except ValueError:
        raise ParseError("expected a rational number", line, col) from None
    if value <= 0:
        raise ParseError("radius must be positive", line, col)
    return value
