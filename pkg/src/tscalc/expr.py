"""Parsing and evaluation of real-valued functions of one variable ``t``.

Grammar (whitespace-insensitive)::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := unary ("^" factor)?          # ^ is right-associative
    unary  := "-" unary | atom
    atom   := NUMBER | "t" | IDENT "(" expr ("," expr)? ")" | "(" expr ")"

There is no implicit multiplication ("2t" is a syntax error) and ``t`` is the
only variable. Known functions: exp, log, sin, cos, sqrt, abs (unary) and
min, max, pow (binary).

Evaluation is strict about the real domain: log/sqrt of a negative, log of
zero, division by zero, a fractional power of a negative base, and any
non-finite intermediate all raise :class:`EvalDomainError` naming the
offending subexpression. Every arithmetic step goes through the checked
helpers below, so a non-finite value can never flow silently into a finite
result.

Expressions and handles are immutable and evaluation is pure, hence
thread-safe.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .errors import EvalDomainError, ParseError

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "FunctionHandle",
    "parse",
    "render",
    "eval_expr",
]


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    """The variable t."""


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Union[Num, Var, Neg, BinOp, Call]

_FUNCTION_ARITY = {
    "exp": 1,
    "log": 1,
    "sin": 1,
    "cos": 1,
    "sqrt": 1,
    "abs": 1,
    "min": 2,
    "max": 2,
    "pow": 2,
}


# -- checked arithmetic --------------------------------------------------------
#
# Shared by the tree evaluator and by compiled handles so both produce
# bit-identical values and identical failures.


def _add(a: float, b: float) -> float:
    r = a + b
    if not math.isfinite(r):
        raise EvalDomainError("non-finite result in addition")
    return r


def _sub(a: float, b: float) -> float:
    r = a - b
    if not math.isfinite(r):
        raise EvalDomainError("non-finite result in subtraction")
    return r


def _mul(a: float, b: float) -> float:
    r = a * b
    if not math.isfinite(r):
        raise EvalDomainError("non-finite result in multiplication")
    return r


def _div(a: float, b: float) -> float:
    if b == 0.0:
        raise EvalDomainError("division by zero")
    r = a / b
    if not math.isfinite(r):
        raise EvalDomainError("non-finite result in division")
    return r


def _pow(a: float, b: float) -> float:
    if a < 0.0 and not float(b).is_integer():
        raise EvalDomainError("fractional power of a negative base")
    try:
        r = a ** b
    except OverflowError:
        raise EvalDomainError("overflow in power") from None
    except ZeroDivisionError:
        raise EvalDomainError("zero raised to a negative power") from None
    if not math.isfinite(r):
        raise EvalDomainError("non-finite result in power")
    return r


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        raise EvalDomainError("overflow in exp") from None


def _log(x: float) -> float:
    if x <= 0.0:
        raise EvalDomainError(f"log of a nonpositive value ({x!r})")
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0.0:
        raise EvalDomainError(f"sqrt of a negative value ({x!r})")
    return math.sqrt(x)


_UNARY_FUNCS: dict[str, Callable[[float], float]] = {
    "exp": _exp,
    "log": _log,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": _sqrt,
    "abs": abs,
}

_BINARY_FUNCS: dict[str, Callable[[float, float], float]] = {
    "min": min,
    "max": max,
    "pow": _pow,
}


# -- tokenizer / parser ---------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup == "number":
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def _next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect(self, kind: str) -> tuple[str, str, int]:
        tok = self._next()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok[2])
        return tok

    def parse(self) -> Expr:
        e = self._expr()
        tok = self._peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while self._peek()[0] in ("+", "-"):
            op = self._next()[0]
            e = BinOp(op, e, self._term())
        return e

    def _term(self) -> Expr:
        e = self._factor()
        while self._peek()[0] in ("*", "/"):
            op = self._next()[0]
            e = BinOp(op, e, self._factor())
        return e

    def _factor(self) -> Expr:
        base = self._unary()
        if self._peek()[0] == "^":
            self._next()
            return BinOp("^", base, self._factor())
        return base

    def _unary(self) -> Expr:
        if self._peek()[0] == "-":
            self._next()
            return Neg(self._unary())
        return self._atom()

    def _atom(self) -> Expr:
        kind, value, pos = self._next()
        if kind == "number":
            num = float(value)
            if not math.isfinite(num):
                raise ParseError(f"number literal {value!r} overflows", pos)
            return Num(num)
        if kind == "ident":
            if self._peek()[0] == "(":
                return self._call(value, pos)
            if value == "t":
                return Var()
            raise ParseError(f"unknown identifier {value!r} (only 't' is legal)", pos)
        if kind == "(":
            e = self._expr()
            self._expect(")")
            return e
        shown = value or "end of input"
        raise ParseError(f"unexpected {shown!r}", pos)

    def _call(self, name: str, pos: int) -> Expr:
        arity = _FUNCTION_ARITY.get(name)
        if arity is None:
            raise ParseError(f"unknown function {name!r}", pos)
        self._expect("(")
        args = [self._expr()]
        while self._peek()[0] == ",":
            self._next()
            args.append(self._expr())
        self._expect(")")
        if len(args) != arity:
            raise ParseError(
                f"{name} takes {arity} argument{'s' if arity > 1 else ''},"
                f" got {len(args)}",
                pos,
            )
        return Call(name, tuple(args))


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises ParseError with a position."""
    return _Parser(text).parse()


# -- rendering -------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_NEG, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        if e.op in ("+", "-"):
            return _PREC_ADD
        if e.op in ("*", "/"):
            return _PREC_MUL
        return _PREC_POW
    if isinstance(e, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def render(e: Expr) -> str:
    """Render to text that re-parses to a structurally equal tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        inner = render(e.operand)
        if _prec(e.operand) < _PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(render(a) for a in e.args)})"
    my = _prec(e)
    left, right = render(e.left), render(e.right)
    if e.op == "^":
        # right-associative; and the grammar binds unary minus tighter, so a
        # Neg base needs no parentheses while a Pow base does.
        if _prec(e.left) <= my:
            left = f"({left})"
        if _prec(e.right) < my:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(e.left) < my:
        left = f"({left})"
    if _prec(e.right) <= my:
        right = f"({right})"
    return f"{left} {e.op} {right}"


# -- evaluation -------------------------------------------------------------------

_BINOP_FUNCS = {"+": _add, "-": _sub, "*": _mul, "/": _div, "^": _pow}


def eval_expr(e: Expr, t: float) -> float:
    """Evaluate the tree at t; domain errors name the offending subexpression."""
    if not math.isfinite(t):
        raise EvalDomainError(f"evaluation point must be finite, got {t!r}")
    return _eval(e, t)


def _eval(e: Expr, t: float) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return t
    try:
        if isinstance(e, Neg):
            return -_eval(e.operand, t)
        if isinstance(e, BinOp):
            return _BINOP_FUNCS[e.op](_eval(e.left, t), _eval(e.right, t))
        args = [_eval(a, t) for a in e.args]
        if len(args) == 1:
            return _UNARY_FUNCS[e.name](args[0])
        return _BINARY_FUNCS[e.name](args[0], args[1])
    except EvalDomainError as err:
        if err.subexpr is None:
            raise EvalDomainError(err.reason, render(e)) from None
        raise


# -- compilation to a fast callable ------------------------------------------------

_COMPILE_ENV = {
    "__builtins__": {},
    "_add": _add,
    "_sub": _sub,
    "_mul": _mul,
    "_div": _div,
    "_pow": _pow,
    "_exp": _exp,
    "_log": _log,
    "_sqrt": _sqrt,
    "_sin": math.sin,
    "_cos": math.cos,
    "_abs": abs,
    "_min": min,
    "_max": max,
}

_CALL_NAMES = {
    "exp": "_exp",
    "log": "_log",
    "sin": "_sin",
    "cos": "_cos",
    "sqrt": "_sqrt",
    "abs": "_abs",
    "min": "_min",
    "max": "_max",
    "pow": "_pow",
}

_BINOP_NAMES = {"+": "_add", "-": "_sub", "*": "_mul", "/": "_div", "^": "_pow"}


def _gen(e: Expr) -> str:
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        return f"(-{_gen(e.operand)})"
    if isinstance(e, BinOp):
        return f"{_BINOP_NAMES[e.op]}({_gen(e.left)}, {_gen(e.right)})"
    return f"{_CALL_NAMES[e.name]}({', '.join(_gen(a) for a in e.args)})"


def _compile(e: Expr) -> Callable[[float], float]:
    return eval(f"lambda t: {_gen(e)}", dict(_COMPILE_ENV))


# -- function handles ----------------------------------------------------------------


@dataclass(frozen=True)
class FunctionHandle:
    """An evaluatable, pure real->real mapping with an origin tag.

    Handles built from expression text keep the AST so that a domain failure
    in the fast compiled path can be re-reported with the offending
    subexpression.
    """

    fn: Callable[[float], float]
    origin: str
    tree: Expr | None = None

    def __call__(self, t: float) -> float:
        try:
            return self.fn(t)
        except EvalDomainError as err:
            if err.subexpr is None and self.tree is not None:
                eval_expr(self.tree, t)  # re-raises annotated with the subexpression
            raise

    @classmethod
    def from_expr(cls, text: str) -> "FunctionHandle":
        tree = parse(text)
        return cls(fn=_compile(tree), origin=f"expr:{text}", tree=tree)

    @classmethod
    def from_tree(cls, tree: Expr) -> "FunctionHandle":
        return cls(fn=_compile(tree), origin=f"expr:{render(tree)}", tree=tree)

    @classmethod
    def from_callable(
        cls, fn: Callable[[float], float], name: str = "anonymous"
    ) -> "FunctionHandle":
        def checked(t: float) -> float:
            r = float(fn(t))
            if not math.isfinite(r):
                raise EvalDomainError(f"{name} returned a non-finite value at t={t!r}")
            return r

        return cls(fn=checked, origin=f"builtin:{name}")

    @classmethod
    def constant(cls, value: float) -> "FunctionHandle":
        return cls(fn=lambda t: value, origin=f"constant:{value!r}")
