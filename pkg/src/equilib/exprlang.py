"""Single-variable function expressions over the positive reals.

Capacities and weight functions enter the library as strings in a small
closed grammar (one variable ``x``, arithmetic, ``^``, and the calls
``ln``/``log``, ``exp``, ``sqrt``; constants ``e`` and ``pi``):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | 'e' | 'pi'
            | ('ln'|'log'|'exp'|'sqrt') '(' expr ')'
            | '(' expr ')'

``log`` is an alias for the natural log ``ln``.  Parsed specs are immutable
and evaluation is pure, so they are safe to share across threads.

Evaluation either returns a finite float or raises: EvalDomainError for
ln/sqrt of a nonpositive value, division by zero, or a non-real power, and
EvalOverflowError whenever the result fails to be finite.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import (
    EvalDomainError,
    EvalOverflowError,
    ExprSyntaxError,
    InputError,
)

__all__ = [
    "Node",
    "Lit",
    "Var",
    "Const",
    "Neg",
    "Bin",
    "Call",
    "FunctionSpec",
    "parse",
    "render",
    "evaluate",
    "check_positive",
    "first_nonpositive",
    "product",
    "sum_of",
]

FUNCTIONS = ("ln", "exp", "sqrt")
CONSTANTS = {"e": math.e, "pi": math.pi}
_ALIASES = {"log": "ln"}


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str  # canonical name, see FUNCTIONS
    arg: "Node"


Node = Union[Lit, Var, Const, Neg, Bin, Call]

_BIN_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: Node) -> int:
    if isinstance(node, Bin):
        return _BIN_PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    return _ATOM_PREC


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------

_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER.match(src, i)
            if m is None:
                raise ExprSyntaxError(f"bad number starting with {ch!r}", i)
            tokens.append(("num", m.group(), i))
            i = m.end()
            continue
        m = _IDENT.match(src, i)
        if m is not None:
            tokens.append(("ident", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


# --------------------------------------------------------------------------
# Parser (recursive descent, precedence ^ > unary - > * / > + -)
# --------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}", tok[2])
        return self.next()

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            node = Bin(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[0] == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            return Bin("^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, text, pos = self.next()
        if kind == "num":
            return Lit(float(text))
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "ident":
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Const(text)
            name = _ALIASES.get(text, text)
            if name in FUNCTIONS:
                if self.peek()[0] != "(":
                    raise ExprSyntaxError(
                        f"function {text!r} must be called", self.peek()[2]
                    )
                self.next()
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            raise ExprSyntaxError(f"unknown identifier {text!r}", pos)
        raise ExprSyntaxError("expected a value", pos)


# --------------------------------------------------------------------------
# Rendering (inverse of parse: parse(render(ast)) is structurally identical)
# --------------------------------------------------------------------------

def render(node: Node) -> str:
    """Serialize an AST back to grammar text with minimal parentheses."""
    if isinstance(node, Lit):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return "-" + _child(node.operand, _NEG_PREC)
    if isinstance(node, Call):
        return f"{node.func}({render(node.arg)})"
    if isinstance(node, Bin):
        p = _BIN_PREC[node.op]
        if node.op == "^":
            # right-associative; the parser reads the exponent at unary level
            left = _child(node.left, p + 1)
            right = _child(node.right, _NEG_PREC)
        else:
            left = _child(node.left, p)
            right = _child(node.right, p + 1)
        return f"{left}{node.op}{right}"
    raise TypeError(f"not an AST node: {node!r}")


def _child(node: Node, min_prec: int) -> str:
    text = render(node)
    return text if _prec(node) >= min_prec else f"({text})"


# --------------------------------------------------------------------------
# Compilation and evaluation
# --------------------------------------------------------------------------

_ENV = {
    "__builtins__": {},
    "log": math.log,
    "exp": math.exp,
    "sqrt": math.sqrt,
    "pow": math.pow,
    "e": math.e,
    "pi": math.pi,
}


def _emit(node: Node) -> str:
    if isinstance(node, Lit):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return f"(-{_emit(node.operand)})"
    if isinstance(node, Call):
        fn = "log" if node.func == "ln" else node.func
        return f"{fn}({_emit(node.arg)})"
    if isinstance(node, Bin):
        left, right = _emit(node.left), _emit(node.right)
        if node.op == "^":
            return f"pow({left},{right})"
        return f"({left}{node.op}{right})"
    raise TypeError(f"not an AST node: {node!r}")


def _compile(node: Node):
    return eval(f"lambda x: {_emit(node)}", dict(_ENV))


@dataclass(frozen=True)
class FunctionSpec:
    """A parsed, immutable expression in one positive variable."""

    source: str
    ast: Node

    def __post_init__(self):
        object.__setattr__(self, "_fn", _compile(self.ast))

    @classmethod
    def from_ast(cls, ast: Node) -> "FunctionSpec":
        return cls(render(ast), ast)

    def __call__(self, x: float) -> float:
        return evaluate(self, x)


@lru_cache(maxsize=4096)
def parse(src: str) -> FunctionSpec:
    """Parse expression source; raises ExprSyntaxError with a byte offset."""
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(_tokenize(src))
    ast = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "eof":
        raise ExprSyntaxError("trailing input after expression", pos)
    return FunctionSpec(src, ast)


def evaluate(f: FunctionSpec, x: float) -> float:
    """Value of f at x > 0; every failure raises, never returns inf/nan."""
    if not (x > 0.0) or math.isinf(x):
        raise InputError(f"evaluation point must be a positive real, got {x!r}")
    try:
        y = f._fn(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise EvalDomainError(str(exc) or "domain error", x) from None
    except OverflowError:
        raise EvalOverflowError("overflow", x) from None
    if not math.isfinite(y):
        raise EvalOverflowError(f"non-finite value {y!r}", x)
    return y


# --------------------------------------------------------------------------
# Positivity sampling
# --------------------------------------------------------------------------

def _grid(a: float, b: float, n: int) -> list[float]:
    if n == 1:
        return [a]
    step = (b - a) / (n - 1)
    xs = [a + i * step for i in range(n - 1)]
    xs.append(b)
    return xs


def first_nonpositive(
    f: FunctionSpec, a: float, b: float, grid_size: int = 1001
) -> tuple[float, str] | None:
    """First grid point of [a, b] where f fails to be strictly positive.

    Returns (x, reason) for the offending point, or None if f(x) > 0 on the
    whole uniform grid.  Evaluation errors count as failures.  This is a
    sampling check: it cannot prove positivity between grid points.
    """
    if not (0.0 < a <= b):
        raise InputError(f"interval must satisfy 0 < a <= b, got [{a!r}, {b!r}]")
    if grid_size < 1:
        raise InputError(f"grid_size must be >= 1, got {grid_size}")
    for x in _grid(a, b, grid_size):
        try:
            y = evaluate(f, x)
        except (EvalDomainError, EvalOverflowError) as exc:
            return x, str(exc)
        if y <= 0.0:
            return x, f"value {y!r} is not positive"
    return None


def check_positive(f: FunctionSpec, a: float, b: float, grid_size: int = 1001) -> bool:
    """True iff f > 0 at every point of a uniform grid_size grid over [a, b]."""
    return first_nonpositive(f, a, b, grid_size) is None


# --------------------------------------------------------------------------
# Structural combinators
# --------------------------------------------------------------------------

def product(f: FunctionSpec, g: FunctionSpec) -> FunctionSpec:
    """The pointwise product f*g as a new spec."""
    return FunctionSpec.from_ast(Bin("*", f.ast, g.ast))


def sum_of(specs: "list[FunctionSpec] | tuple[FunctionSpec, ...]") -> FunctionSpec:
    """The pointwise sum of one or more specs."""
    if not specs:
        raise InputError("sum_of requires at least one spec")
    ast: Node = specs[0].ast
    for spec in specs[1:]:
        ast = Bin("+", ast, spec.ast)
    return FunctionSpec.from_ast(ast)
