"""Expressions in the single quaternion variable ``z``.

Grammar, loosest to tightest binding::

    expr    := term (("+" | "-") term)*
    term    := power (("*" | "/") power)*
    power   := unary ("^" exponent)?
    unary   := "-" unary | primary
    exponent:= ["-"] INT | "(" ["-"] INT ")"
    primary := NUMBER [i|j|k] | i | j | k | z | NAME | FUNC "(" expr ")" | "(" expr ")"

``a / b`` means ``a * inv(b)``; left division must be written ``inv(b) * a``.
Additive combinations of literals are folded while parsing, so ``2+3i`` is a
single constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from . import autodiff as ad
from .logarithm import DEFAULT_LOG_CONFIG, LogSolveConfig, principal_log
from .quaternion import I1, I2, I3, DomainError, Quaternion, format_quaternion, inverse, pow_int
from .series import DEFAULT_TRUNCATION, EVALUATORS, SeriesTruncation

FUNCTIONS = ("exp", "sin", "cos", "ln", "inv")
UNITS = {"i": I1, "j": I2, "k": I3}
VARIABLE = "z"

Span = tuple[int, int]


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected one of: {', '.join(sorted(expected))})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class EvaluationError(DomainError):
    """A domain error tied to the subexpression where it happened."""

    def __init__(self, message: str, span: Span | None, source: str | None):
        where = ""
        if span is not None:
            where = f" in {source[span[0]:span[1]]!r}" if source else ""
            where += f" at {span[0]}..{span[1]}"
        super().__init__(message + where)
        self.span = span


# AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Var(Expr):
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Const(Expr):
    value: Quaternion
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binary(Expr):
    left: Expr
    right: Expr
    span: Span | None = field(default=None, compare=False, repr=False)


class Add(Binary):
    pass


class Sub(Binary):
    pass


class Mul(Binary):
    pass


class Div(Binary):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    n: int
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Call(Expr):
    name: str
    arg: Expr
    span: Span | None = field(default=None, compare=False, repr=False)


# Tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?P<unit>[ijk](?![A-Za-z_0-9]))?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = "number" if m.group("number") else m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# Parser -------------------------------------------------------------------


def _fold(node: Expr) -> Expr:
    if isinstance(node, Neg) and isinstance(node.operand, Const):
        return Const(-node.operand.value, node.span)
    if isinstance(node, (Add, Sub)) and isinstance(node.left, Const) and isinstance(node.right, Const):
        a, b = node.left.value, node.right.value
        return Const(a + b if isinstance(node, Add) else a - b, node.span)
    return node


class _Parser:
    def __init__(self, text: str, constants: Mapping[str, Quaternion]):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.constants = dict(constants)
        for name in self.constants:
            if name == VARIABLE or name in FUNCTIONS or name in UNITS:
                raise ValueError(f"constant name {name!r} is reserved")

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, expected: set[str] | frozenset[str] = frozenset()) -> ParseError:
        return ParseError(message, self.tok.start, frozenset(expected))

    def expect(self, op: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        found = self.tok.text or "end of input"
        raise self.error(f"unexpected {found!r}", {op})

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", {"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Expr:
        start = self.tok.start
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            cls = Add if op == "+" else Sub
            node = _fold(cls(node, right, (start, self.tokens[self.pos - 1].end)))
        return node

    def term(self) -> Expr:
        start = self.tok.start
        node = self.power()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            right = self.power()
            cls = Mul if op == "*" else Div
            node = cls(node, right, (start, self.tokens[self.pos - 1].end))
        return node

    def power(self) -> Expr:
        start = self.tok.start
        base = self.unary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            n = self.exponent()
            if self.tok.kind == "op" and self.tok.text == "^":
                raise self.error("integer exponent required; chained powers need parentheses")
            return PowInt(base, n, (start, self.tokens[self.pos - 1].end))
        return base

    def exponent(self) -> int:
        paren = self.tok.kind == "op" and self.tok.text == "("
        if paren:
            self.advance()
        sign = 1
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            sign = -1
        t = self.tok
        if t.kind != "number" or not t.text.isdigit():
            raise self.error("integer exponent required", {"integer"})
        self.advance()
        if paren:
            self.expect(")")
        return sign * int(t.text)

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            start = self.advance().start
            operand = self.unary()
            return _fold(Neg(operand, (start, self.tokens[self.pos - 1].end)))
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self.advance()
            unit = t.text[-1]
            if unit in UNITS:
                value = UNITS[unit] * float(t.text[:-1])
            else:
                value = Quaternion.real(float(t.text))
            return Const(value, (t.start, t.end))
        if t.kind == "name":
            self.advance()
            if t.text == VARIABLE:
                return Var((t.start, t.end))
            if t.text in UNITS:
                return Const(UNITS[t.text], (t.start, t.end))
            if t.text in self.constants:
                return Const(self.constants[t.text], (t.start, t.end))
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg, (t.start, self.tokens[self.pos - 1].end))
            raise ParseError(
                f"unknown name {t.text!r}: expressions have the single variable {VARIABLE!r}",
                t.start, frozenset({VARIABLE, *FUNCTIONS}))
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", {"number", "z", "(", "-", *FUNCTIONS})


def parse(text: str, constants: Mapping[str, Quaternion] | None = None) -> Expr:
    return _Parser(text, constants or {}).parse()


_QUAT_TERM = re.compile(r"\s*([+-])?\s*(\d+\.?\d*|\.\d+)?([ijk])?\s*")


def parse_quaternion(text: str) -> Quaternion:
    """Parse a literal ``a+bi+cj+dk``; terms optional, in any order."""
    coords = [0.0, 0.0, 0.0, 0.0]
    pos = 0
    s = text.strip()
    if not s:
        raise ParseError("empty quaternion literal", 0)
    while pos < len(s):
        m = _QUAT_TERM.match(s, pos)
        sign, num, unit = m.groups()
        if (num is None and unit is None) or (pos > 0 and sign is None):
            raise ParseError(f"malformed quaternion literal {text!r}", pos)
        value = float(num) if num is not None else 1.0
        coords["_ijk".index(unit) if unit else 0] += -value if sign == "-" else value
        pos = m.end()
    return Quaternion(*coords)


# Rendering ----------------------------------------------------------------


def render(node: Expr) -> str:
    """Fully parenthesized text that parses back to an equal tree."""
    if isinstance(node, Var):
        return VARIABLE
    if isinstance(node, Const):
        return f"({format_quaternion(node.value)})"
    if isinstance(node, Binary):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
        return f"({render(node.left)} {op} {render(node.right)})"
    if isinstance(node, Neg):
        return f"(-{render(node.operand)})"
    if isinstance(node, PowInt):
        return f"({render(node.base)}^({node.n}))"
    if isinstance(node, Call):
        return f"{node.name}({render(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# Evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class _Ctx:
    trunc: SeriesTruncation
    log_cfg: LogSolveConfig
    source: str | None


def _guard(node: Expr, ctx: _Ctx, fn, *args):
    try:
        return fn(*args)
    except EvaluationError:
        raise
    except DomainError as exc:
        raise EvaluationError(str(exc), node.span, ctx.source) from exc


def _value(node: Expr, z0: Quaternion, ctx: _Ctx) -> Quaternion:
    if isinstance(node, Var):
        return z0
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Add):
        return _value(node.left, z0, ctx) + _value(node.right, z0, ctx)
    if isinstance(node, Sub):
        return _value(node.left, z0, ctx) - _value(node.right, z0, ctx)
    if isinstance(node, Mul):
        return _value(node.left, z0, ctx) * _value(node.right, z0, ctx)
    if isinstance(node, Div):
        a = _value(node.left, z0, ctx)
        b = _value(node.right, z0, ctx)
        return a * _guard(node, ctx, inverse, b)
    if isinstance(node, Neg):
        return -_value(node.operand, z0, ctx)
    if isinstance(node, PowInt):
        return _guard(node, ctx, pow_int, _value(node.base, z0, ctx), node.n)
    if isinstance(node, Call):
        w = _value(node.arg, z0, ctx)
        if node.name == "inv":
            return _guard(node, ctx, inverse, w)
        if node.name == "ln":
            return _guard(node, ctx, principal_log, w)
        return _guard(node, ctx, EVALUATORS[node.name], w, ctx.trunc)
    raise TypeError(f"not an expression node: {node!r}")


def _dual(node: Expr, z0: Quaternion, ctx: _Ctx, diag: ad.Diagnostics | None) -> ad.HDual:
    if isinstance(node, Var):
        return ad.lift_var(z0)
    if isinstance(node, Const):
        return ad.lift_const(node.value)
    if isinstance(node, Binary):
        f = _dual(node.left, z0, ctx, diag)
        g = _dual(node.right, z0, ctx, diag)
        if isinstance(node, Add):
            return ad.d_add(f, g)
        if isinstance(node, Sub):
            return ad.d_sub(f, g)
        if isinstance(node, Mul):
            return ad.d_mul(f, g)
        return ad.d_mul(f, _guard(node, ctx, ad.d_inv, g))
    if isinstance(node, Neg):
        return ad.d_neg(_dual(node.operand, z0, ctx, diag))
    if isinstance(node, PowInt):
        return _guard(node, ctx, ad.d_pow, _dual(node.base, z0, ctx, diag), node.n)
    if isinstance(node, Call):
        f = _dual(node.arg, z0, ctx, diag)
        if node.name == "inv":
            return _guard(node, ctx, ad.d_inv, f)
        if node.name == "ln":
            return _guard(node, ctx, ad.d_log, f, ctx.log_cfg, diag)
        return _guard(node, ctx, ad.d_elementary, node.name, f, ctx.trunc, diag)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: Expr, z0: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION,
             log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG, source: str | None = None) -> Quaternion:
    return _value(expr, z0, _Ctx(trunc, log_cfg, source))


def propagate(expr: Expr, z0: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION,
              log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG, source: str | None = None,
              diagnostics: ad.Diagnostics | None = None) -> ad.HDual:
    return _dual(expr, z0, _Ctx(trunc, log_cfg, source), diagnostics)


def differentiate(expr: Expr, z0: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION,
                  log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG, source: str | None = None,
                  diagnostics: ad.Diagnostics | None = None) -> Quaternion:
    return propagate(expr, z0, trunc, log_cfg, source, diagnostics).derivative
