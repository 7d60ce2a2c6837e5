"""Reading and writing polynomials, points and ideal files.

Expression grammar (explicit ``*`` everywhere, ``^`` binds tightest)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | base ('^' nat)?
    base   := rational | ident | '(' expr ')'

Rational literals are ``p`` or ``p/q`` with ``q > 0``; identifiers match
``[A-Za-z][A-Za-z0-9_]*``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

from .errors import IdealFileError, NegativeExponent, ParseError, UnknownVariable
from .ring import ORDER_KINDS, Monomial, MonomialOrder, Polynomial, varset

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class Token(NamedTuple):
    kind: str  # num, ident, op, end
    text: str
    pos: int


class Node(NamedTuple):
    """Expression tree node. ``kind`` is number, variable, add, sub, mul, neg or pow."""

    kind: str
    value: object = None
    children: tuple = ()


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            tokens.append(Token("end", "", pos))
            return tokens
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.pos, self.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error("expected operator")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = Node("add" if op == "+" else "sub", children=(node, self.term()))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.advance()
            node = Node("mul", children=(node, self.factor()))
        return node

    def factor(self) -> Node:
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            inner = self.factor()
            return inner if op == "+" else Node("neg", children=(inner,))
        node = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            tok = self.tok
            if tok.kind == "op" and tok.text == "-":
                raise NegativeExponent("negative exponent", tok.pos, self.text)
            if tok.kind != "num" or "/" in tok.text:
                raise self.error("expected a nonnegative integer exponent")
            self.advance()
            node = Node("pow", int(tok.text), (node,))
        return node

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", tok.pos, self.text)
            return Node("number", Fraction(int(num), int(den or 1)))
        if tok.kind == "ident":
            self.advance()
            return Node("variable", tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                raise self.error("expected ')'")
            self.advance()
            return node
        raise self.error("expected a number, variable or '('")


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


def to_polynomial(node: Node, vars: Iterable[str]) -> Polynomial:
    vars = varset(vars)
    known = set(vars)

    def walk(n: Node) -> Polynomial:
        if n.kind == "number":
            return Polynomial.constant(n.value, vars)
        if n.kind == "variable":
            if n.value not in known:
                raise UnknownVariable(f"unknown variable {n.value!r}; declared {list(vars)}")
            return Polynomial.variable(n.value, vars)
        if n.kind == "neg":
            return -walk(n.children[0])
        if n.kind == "pow":
            return walk(n.children[0]) ** n.value
        left, right = (walk(c) for c in n.children)
        if n.kind == "add":
            return left + right
        if n.kind == "sub":
            return left - right
        return left * right

    return walk(node)


def parse_poly(text: str, vars: Iterable[str]) -> Polynomial:
    """Parse ``text`` into a polynomial over ``vars``; other identifiers are rejected."""
    return to_polynomial(parse_expr(text), vars)


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, order: MonomialOrder) -> str:
    exps = m.dense(order.variables)
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(order.variables, exps) if e)


def print_poly(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Deterministic text form, terms in strictly decreasing order."""
    if f.is_zero():
        return "0"
    if order is None:
        order = MonomialOrder("grevlex", f.vars)
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms(order)):
        mag = abs(c)
        if m.is_one():
            body = format_scalar(mag)
        elif mag == 1:
            body = format_monomial(m, order)
        else:
            body = f"{format_scalar(mag)}*{format_monomial(m, order)}"
        if k == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", text):
        raise ParseError(f"not a rational literal: {text!r}", 0, text)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", len(num) + 1, text)
    return Fraction(int(num), int(den or 1))


def parse_point(text: str) -> dict[str, Fraction]:
    """Parse ``"x=1,y=2/3"`` into a point."""
    point: dict[str, Fraction] = {}
    offset = 0
    for chunk in text.split(","):
        name, eq, value = chunk.partition("=")
        name = name.strip()
        if not eq or not IDENT.match(name):
            raise ParseError(f"expected name=value, got {chunk.strip()!r}", offset, text)
        if name in point:
            raise ParseError(f"coordinate {name!r} given twice", offset, text)
        try:
            point[name] = parse_scalar(value)
        except ParseError:
            raise ParseError(f"bad coordinate value {value.strip()!r}", offset + len(name) + 1, text) from None
        offset += len(chunk) + 1
    return point


def format_point(point: Mapping[str, Fraction], order: Iterable[str] | None = None) -> str:
    names = list(order) if order is not None else sorted(point)
    return ",".join(f"{v}={format_scalar(Fraction(point[v]))}" for v in names)


@dataclass
class IdealFile:
    """The JSON ideal format: ``{"vars": [...], "gens": [...], "order": "grevlex"}``."""

    vars: list[str]
    gens: list[str] = field(default_factory=list)
    order: str | None = None

    def __post_init__(self):
        if not isinstance(self.vars, list) or not all(isinstance(v, str) for v in self.vars):
            raise IdealFileError("'vars' must be a list of strings")
        for v in self.vars:
            if not IDENT.match(v):
                raise IdealFileError(f"invalid variable name {v!r}")
        if len(set(self.vars)) != len(self.vars):
            raise IdealFileError("duplicate variable names")
        if not isinstance(self.gens, list) or not all(isinstance(g, str) for g in self.gens):
            raise IdealFileError("'gens' must be a list of strings")
        if self.order is not None and self.order not in ORDER_KINDS:
            raise IdealFileError(f"unknown order {self.order!r}; expected one of {list(ORDER_KINDS)}")

    @classmethod
    def from_dict(cls, data: Mapping) -> IdealFile:
        if not isinstance(data, Mapping):
            raise IdealFileError("ideal file must hold a JSON object")
        extra = set(data) - {"vars", "gens", "order"}
        if extra:
            raise IdealFileError(f"unexpected keys {sorted(extra)}")
        if "vars" not in data:
            raise IdealFileError("missing key 'vars'")
        return cls(data["vars"], data.get("gens", []), data.get("order"))

    @classmethod
    def from_json(cls, text: str) -> IdealFile:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IdealFileError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def read(cls, path: str | Path) -> IdealFile:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        data = {"vars": self.vars, "gens": self.gens}
        if self.order is not None:
            data["order"] = self.order
        return json.dumps(data)


def load_ideal(source: IdealFile | Mapping, order: str | None = None):
    """Build an :class:`~nullstellen.groebner.Ideal` from an ideal file.

    The declared variable list doubles as the order's variable sequence;
    ``order`` overrides the file's order name (default grevlex).
    """
    from .groebner import Ideal

    if not isinstance(source, IdealFile):
        source = IdealFile.from_dict(source)
    name = order or source.order or "grevlex"
    if name not in ORDER_KINDS:
        raise IdealFileError(f"unknown order {name!r}")
    gens = [parse_poly(g, source.vars) for g in source.gens]
    return Ideal(gens, source.vars, MonomialOrder(name, tuple(source.vars)))


def dump_ideal(ideal) -> IdealFile:
    """Inverse of :func:`load_ideal` (generators printed under the ideal's order)."""
    kind = ideal.order.kind if ideal.order.kind in ORDER_KINDS else None
    return IdealFile(list(ideal.order.variables), [print_poly(g, ideal.order) for g in ideal.generators], kind)
