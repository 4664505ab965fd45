"""Recursive-descent parser for polynomial and rational-function text.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | unary)*      # juxtaposition multiplies
    unary  := ('+' | '-') unary | factor
    factor := atom (('^' | '**') uint)?
    atom   := integer | variable | '(' expr ')'

Variables are single letters from {x, t, y}; each entry point fixes which
ones are legal. The AST is folded directly into exact values.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DivisionInPolyContext, NegativeExponent, ParseError, WrongVariable
from .fields import QQ
from .funcfield import BuchiForm, FunctionField, RatFunc
from .poly import Poly

VARIABLES = ("x", "t", "y")

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "op", "var", "end"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            col = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ParseError(f"unexpected character {src[col]!r}", src, col)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(Token("num", m.group(1), start))
        elif m.group(2):
            tokens.append(Token("op", m.group(2), start))
        else:
            tokens.append(Token("var", m.group(3), start))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


# AST nodes are tuples: ("num", Fraction) | ("var", name) | ("neg", a)
# | (op, a, b) for op in + - * / | ("pow", a, k); each carries its column last.


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, self.src, min(tok.pos, max(len(self.src) - 1, 0)))

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            node = (op.text, node, self.term(), op.pos)
        return node

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "var") or (t.kind == "op" and t.text == "(")

    def term(self):
        node = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in ("*", "/"):
                self.advance()
                node = (t.text, node, self.unary(), t.pos)
            elif self._starts_atom():
                node = ("*", node, self.factor(), t.pos)
            else:
                return node

    def unary(self):
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.advance()
            inner = self.unary()
            return ("neg", inner, t.pos) if t.text == "-" else inner
        return self.factor()

    def factor(self):
        base = self.atom()
        t = self.tok
        if t.kind == "op" and t.text in ("^", "**"):
            self.advance()
            e = self.tok
            if e.kind == "op" and e.text == "-":
                raise self.error("negative exponent", e, NegativeExponent)
            if e.kind != "num":
                raise self.error("exponent must be a non-negative integer literal", e)
            self.advance()
            return ("pow", base, int(e.text), t.pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ("num", Fraction(int(t.text)), t.pos)
        if t.kind == "var":
            self.advance()
            return ("var", t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                raise self.error("expected ')'")
            self.advance()
            return node
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")


def parse_ast(src: str):
    return _Parser(src).parse()


def _fold(node, src: str, lift: Callable, variables: dict, divide: Callable):
    kind = node[0]
    if kind == "num":
        return lift(node[1])
    if kind == "var":
        name = node[1]
        if name not in variables:
            raise WrongVariable(
                f"variable {name!r} not allowed here (expected one of {sorted(variables)})",
                src,
                node[2],
            )
        return variables[name]
    if kind == "neg":
        return -_fold(node[1], src, lift, variables, divide)
    if kind == "pow":
        return _fold(node[1], src, lift, variables, divide) ** node[2]
    a = _fold(node[1], src, lift, variables, divide)
    b = _fold(node[2], src, lift, variables, divide)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    return divide(a, b, node[3])


def _check_zero_divisor(b, src: str, pos: int):
    if not b:
        raise ParseError("division by zero", src, pos)


def parse_poly(src: str, var: str = "x", field=QQ) -> Poly:
    """Parse a polynomial in ``var``; only division by nonzero constants is allowed."""
    x = Poly.monomial(1, field, var)

    def divide(a: Poly, b: Poly, pos: int):
        if b.deg > 0:
            raise DivisionInPolyContext("division by a non-constant polynomial", src, pos)
        _check_zero_divisor(b, src, pos)
        return a / b.coeff(0)

    lift = lambda c: Poly.constant(field(c), field, var)  # noqa: E731
    return _fold(parse_ast(src), src, lift, {var: x}, divide)


def parse_ratfunc(src: str, var: str = "x", field=QQ) -> RatFunc:
    K = FunctionField(field, var)

    def divide(a: RatFunc, b: RatFunc, pos: int):
        _check_zero_divisor(b, src, pos)
        return a / b

    return _fold(parse_ast(src), src, K, {var: K.gen}, divide)


def parse_form_expr(src: str, field: FunctionField | None = None) -> BuchiForm:
    """Parse a monic form written as an expression in t with coefficients in x."""
    K = field or FunctionField(QQ, "x")
    t = Poly.monomial(1, K, "t")

    def lift(c):
        return Poly.constant(K(c), K, "t")

    def divide(a: Poly, b: Poly, pos: int):
        if b.deg > 0:
            raise DivisionInPolyContext("division by an expression involving t", src, pos)
        _check_zero_divisor(b, src, pos)
        return a / b.coeff(0)

    variables = {"t": t, K.var: Poly.constant(K.gen, K, "t")}
    f = _fold(parse_ast(src), src, lift, variables, divide)
    if f.deg < 2 or f.lc != 1:
        raise ParseError("form must be monic in t of degree >= 2", src, 0)
    return BuchiForm.from_poly(f)


def parse_form(src, field: FunctionField | None = None) -> BuchiForm:
    """Build a form from JSON ``{"n": n, "coeffs": [a_0, ..., a_{n-1}]}``.

    ``src`` may be the JSON text, an already-decoded dict, or a bare
    expression in t such as ``"t^2 - x^2"``.
    """
    K = field or FunctionField(QQ, "x")
    if isinstance(src, str):
        stripped = src.strip()
        if not stripped.startswith("{"):
            return parse_form_expr(stripped, K)
        src = json.loads(stripped)
    if not isinstance(src, dict) or "coeffs" not in src:
        raise ParseError("form JSON needs a 'coeffs' list", json.dumps(src), 0)
    coeffs = [
        parse_ratfunc(c, K.var, K.base) if isinstance(c, str) else K(Fraction(c))
        for c in src["coeffs"]
    ]
    n = int(src.get("n", len(coeffs)))
    return BuchiForm(n, tuple(coeffs), K)


def parse_expr_any(src: str, variables: tuple[str, ...] = VARIABLES, field=QQ) -> RatFunc:
    """Parse a rational function in whichever single variable the text uses."""
    names = {tok.text for tok in tokenize(src) if tok.kind == "var"}
    if len(names) > 1:
        raise WrongVariable(f"expected a single variable, found {sorted(names)}", src, 0)
    var = names.pop() if names else variables[0]
    if var not in variables:
        raise WrongVariable(f"variable {var!r} not allowed here", src, src.find(var))
    return parse_ratfunc(src, var, field)
