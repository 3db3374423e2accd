"""Profile expressions in the single variable ``t``.

Grammar (whitespace insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right associative, binds tighter than '-'
    atom    := NUMBER | 't' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

The exponent of ``^`` must be constant; it is folded to a float at parse time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .jet import ELEMENTARY, Jet3, JetDomainError, power

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh", "atan")
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLE = "t"


class ExprError(ValueError):
    """Base class for parse errors; ``offset`` is a byte offset into the UTF-8 source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ExprSyntaxError(ExprError):
    def __init__(self, offset: int, expected: str, found: str = ""):
        message = f"expected {expected}" + (f", found {found!r}" if found else "")
        super().__init__(message, offset)
        self.expected = expected


class UnknownIdentifierError(ExprError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r}", offset)
        self.name = name


class ProfileDomainError(JetDomainError):
    """A jet domain error annotated with the offending node's source offset."""

    def __init__(self, cause: JetDomainError, node: "Node"):
        where = f" in {to_source(node)!r}" if node.offset < 0 else f" at byte {node.offset} ({to_source(node)!r})"
        super().__init__(f"{cause}{where}", point=cause.point)
        self.offset = node.offset
        self.node = node


# ---------------------------------------------------------------------------
# AST.  ``offset`` is excluded from equality so structural comparison ignores
# where a node came from.


@dataclass(frozen=True)
class Const:
    value: float
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    child: "Node"
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: float
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"
    offset: int = field(default=-1, compare=False, repr=False)


Node = Union[Const, Var, Neg, BinOp, Pow, Call]
ExprAst = Node


# ---------------------------------------------------------------------------
# Tokenizer


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE | re.ASCII,
)


@dataclass
class _Token:
    kind: str  # num, ident, op, end
    text: str
    offset: int  # byte offset


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    byte = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(byte, "number, identifier, operator or parenthesis", source[pos])
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, text, byte))
        byte += len(text.encode("utf-8"))
        pos = m.end()
    tokens.append(_Token("end", "", byte))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str, expected: str) -> _Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ExprSyntaxError(self.tok.offset, expected, self.tok.text)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(self.tok.offset, "operator or end of input", self.tok.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            node = BinOp(t.text, node, self.term(), offset=t.offset)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            node = BinOp(t.text, node, self.unary(), offset=t.offset)
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            t = self.advance()
            return Neg(self.unary(), offset=t.offset)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.advance()
            exp_offset = self.tok.offset
            exponent = self.unary()
            if _has_variable(exponent):
                raise ExprSyntaxError(exp_offset, "constant exponent")
            value = _fold(exponent)
            if not math.isfinite(value):
                raise ExprSyntaxError(exp_offset, "finite exponent")
            return Pow(base, value, offset=t.offset)
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = float(t.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(t.offset, "finite number", t.text)
            return Const(value, offset=t.offset)
        if t.kind == "ident":
            self.advance()
            if t.text == VARIABLE:
                return Var(offset=t.offset)
            if t.text in CONSTANTS:
                return Const(CONSTANTS[t.text], offset=t.offset)
            if t.text in FUNCTIONS:
                self.expect("(", f"'(' after {t.text}")
                arg = self.expr()
                self.expect(")", "')'")
                return Call(t.text, arg, offset=t.offset)
            raise UnknownIdentifierError(t.text, t.offset)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        raise ExprSyntaxError(t.offset, "operand", t.text)


def _has_variable(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Const):
        return False
    if isinstance(node, Neg):
        return _has_variable(node.child)
    if isinstance(node, BinOp):
        return _has_variable(node.left) or _has_variable(node.right)
    if isinstance(node, Pow):
        return _has_variable(node.base)
    return _has_variable(node.arg)


def _fold(node: Node) -> float:
    try:
        return eval_jet(node, 0.0).c0
    except (JetDomainError, OverflowError, ZeroDivisionError):
        return math.nan


def parse_profile(source: str | bytes) -> Node:
    """Parse a profile expression.

    Raises:
        ExprSyntaxError: malformed input, with byte offset and what was expected.
        UnknownIdentifierError: an identifier other than ``t``, ``pi``, ``e`` or a known function.
    """
    if isinstance(source, (bytes, bytearray)):
        try:
            source = bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ExprSyntaxError(exc.start, "valid UTF-8") from None
    if not source.strip():
        raise ExprSyntaxError(len(source.encode("utf-8")), "operand")
    try:
        return _Parser(source).parse()
    except RecursionError:
        raise ExprSyntaxError(0, "expression of reasonable nesting depth") from None


# ---------------------------------------------------------------------------
# Printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_number(value: float) -> str:
    value = float(value)
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Const) and (node.value < 0 or math.copysign(1.0, node.value) < 0):
        return 3
    return 5


def to_source(node: Node) -> str:
    """Render with the minimal parentheses that re-parse to the same tree."""
    if isinstance(node, Const):
        return format_number(node.value)
    if isinstance(node, Var):
        return VARIABLE
    if isinstance(node, Call):
        return f"{node.name}({to_source(node.arg)})"
    if isinstance(node, Neg):
        inner = to_source(node.child)
        return f"-{inner}" if _prec(node.child) >= 3 else f"-({inner})"
    if isinstance(node, Pow):
        base = to_source(node.base)
        if _prec(node.base) < 5:
            base = f"({base})"
        exponent = format_number(node.exponent)
        if node.exponent < 0:
            exponent = f"({exponent})"
        return f"{base}^{exponent}"
    p = _PREC[node.op]
    left = to_source(node.left)
    right = to_source(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# ---------------------------------------------------------------------------
# Evaluation


def eval_jet(node: Node, t: float) -> Jet3:
    """Order-3 jet of the expression at ``t``.

    Raises:
        ProfileDomainError: a node was evaluated outside its domain.
    """
    try:
        return _eval(node, Jet3.variable(t))
    except ProfileDomainError:
        raise
    except JetDomainError as exc:
        raise ProfileDomainError(exc, node) from exc


def _eval(node: Node, var: Jet3) -> Jet3:
    try:
        if isinstance(node, Const):
            return Jet3.const(node.value)
        if isinstance(node, Var):
            return var
        if isinstance(node, Neg):
            return -_eval(node.child, var)
        if isinstance(node, BinOp):
            left = _eval(node.left, var)
            right = _eval(node.right, var)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            return left / right
        if isinstance(node, Pow):
            return power(_eval(node.base, var), node.exponent)
        return ELEMENTARY[node.name](_eval(node.arg, var))
    except ProfileDomainError:
        raise
    except JetDomainError as exc:
        raise ProfileDomainError(exc, node) from exc
    except OverflowError as exc:
        raise ProfileDomainError(JetDomainError(f"overflow: {exc}", point=var.c0), node) from exc


def eval_value(node: Node, t: float) -> float:
    return eval_jet(node, t).c0


# ---------------------------------------------------------------------------
# Random expressions (property tests and the theorem audit)

_SAFE_FUNCTIONS = ("sin", "cos", "exp", "atan", "tanh", "sinh", "cosh")


def random_ast(rng: np.random.Generator, depth: int = 4, functions=_SAFE_FUNCTIONS) -> Node:
    """Random expression of at most ``depth`` levels, using only entire functions by default."""
    if depth <= 1 or rng.random() < 0.2:
        if rng.random() < 0.55:
            return Var()
        return Const(float(np.round(rng.uniform(0.1, 2.0), 3)))
    kind = rng.integers(0, 5)
    if kind == 0:
        return Neg(random_ast(rng, depth - 1, functions))
    if kind == 1:
        op = ("+", "-", "*")[rng.integers(0, 3)]
        return BinOp(op, random_ast(rng, depth - 1, functions), random_ast(rng, depth - 1, functions))
    if kind == 2:
        return Pow(random_ast(rng, depth - 1, functions), float(rng.integers(2, 4)))
    if kind == 3:
        name = functions[rng.integers(0, len(functions))]
        return Call(name, random_ast(rng, depth - 1, functions))
    # scaled variable keeps nested exponentials from overflowing
    scale = float(np.round(rng.uniform(0.2, 1.5), 3))
    return BinOp("*", Const(scale), random_ast(rng, depth - 1, functions))
