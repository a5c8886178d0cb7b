"""Expression trees and the text grammar shared by identity files and the CLI.

Grammar (informal)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <implicit>) unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := number | name | name '(' args ')' | '(' expr ')' | '[' args ']'

Numbers are integers or decimal-free rationals written with ``/``; a number
directly followed by a name or '(' multiplies (``2t+1/3``).  Runs of
single-letter variables split into products (``ab`` is ``a*b``).  Call
arguments may be separated by ``,`` or ``;`` and a ``|`` inside an argument
offers alternatives (only used by ``poch(x; q^r; k|inf)``).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .forms import LinearForm
from .polynomial import VARIABLES, Polynomial
from .rational import RationalFunction

FUNCTIONS = {"gamma", "sqrt", "hyper", "cmprod", "poch", "legendre", "qbinom-exp"}
CONSTANTS = {"pi", "inf"}
LETTERS = set(VARIABLES) | {"q", "k"}


class ParseError(ValueError):
    pass


class Expr:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True)
class Sym(Expr):
    name: str


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple


@dataclass(frozen=True)
class ListExpr(Expr):
    items: tuple


@dataclass(frozen=True)
class Choice(Expr):
    """``x|y`` inside call arguments."""

    options: tuple


for _cls in (Num, Sym, BinOp, Neg, Call, ListExpr, Choice):
    _cls.__str__ = Expr.__str__


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<qexp>qbinom-exp)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;\[\]|])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "qexp":
            out.append(("name", m.group()))
        else:
            out.append((kind, m.group()))
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return e

    def expr(self):
        left = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            left = _fold(BinOp(op, left, self.term()))
        return left

    def term(self):
        left = self.unary()
        while True:
            kind, val = self.peek()
            if val in ("*", "/"):
                self.take()
                left = _fold(BinOp(val, left, self.unary()))
            elif kind in ("name", "num") or val == "(":
                # implicit multiplication: 2t, 2(t+1), a b
                left = _fold(BinOp("*", left, self.unary()))
            else:
                return left

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return _fold(Neg(self.unary()))
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            return _fold(BinOp("^", base, self.unary()))
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Num(Fraction(int(val)))
        if val == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if val == "[":
            self.take()
            items = self.args("]")
            return ListExpr(tuple(items))
        if kind == "name":
            self.take()
            if val in FUNCTIONS:
                self.take("(")
                return Call(val, tuple(self.args(")")))
            if val in CONSTANTS:
                return Sym(val)
            if all(ch in LETTERS for ch in val):
                e = Sym(val[0])
                for ch in val[1:]:
                    e = BinOp("*", e, Sym(ch))
                return e
            raise ParseError(f"unknown name {val!r} in {self.text!r}")
        raise ParseError(f"unexpected {val!r} in {self.text!r}")

    def args(self, closer):
        items = []
        if self.peek()[1] == closer:
            self.take()
            return items
        while True:
            e = self.expr()
            if self.peek()[1] == "|":
                opts = [e]
                while self.peek()[1] == "|":
                    self.take()
                    opts.append(self.expr())
                e = Choice(tuple(opts))
            items.append(e)
            sep = self.take()[1]
            if sep == closer:
                return items
            if sep not in (",", ";"):
                raise ParseError(f"expected separator, found {sep!r} in {self.text!r}")


def _fold(e):
    """Constant-fold rational arithmetic so literals like -1/8 become one Num."""
    if isinstance(e, Neg) and isinstance(e.arg, Num):
        return Num(-e.arg.value)
    if isinstance(e, BinOp) and isinstance(e.left, Num) and isinstance(e.right, Num):
        x, y = e.left.value, e.right.value
        if e.op == "+":
            return Num(x + y)
        if e.op == "-":
            return Num(x - y)
        if e.op == "*":
            return Num(x * y)
        if e.op == "/" and y != 0:
            return Num(x / y)
        if e.op == "^" and y.denominator == 1 and (x != 0 or y >= 0):
            return Num(x ** int(y))
    return e


def parse(text):
    if isinstance(text, Expr):
        return text
    return _Parser(str(text)).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _num_text(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _prec_of(e):
    if isinstance(e, Num):
        if e.value < 0:
            return 3 if e.value.denominator == 1 else 2
        return 5 if e.value.denominator == 1 else 2
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    return 5


def to_text(e):
    if isinstance(e, Num):
        return _num_text(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        if _prec_of(e.arg) < 3 or (isinstance(e.arg, Num)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left, right = to_text(e.left), to_text(e.right)
        lp, rp = _prec_of(e.left), _prec_of(e.right)
        if e.op == "^":
            if lp <= p:
                left = f"({left})"
            if rp < 5:
                right = f"({right})"
            return f"{left}^{right}"
        if lp < p:
            left = f"({left})"
        if rp <= p or (e.op in ("*", "/") and rp == 3):
            right = f"({right})"
        if e.op in ("+", "-") and isinstance(e.right, Num) and e.right.value < 0:
            right = f"({right})"
        if e.op in ("*", "/") and isinstance(e.left, Num) and e.left.value < 0 and lp == 2:
            left = f"({left})"
        return f"{left} {e.op} {right}" if p == 1 else f"{left}{e.op}{right}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(to_text(a) for a in e.args)})" if e.name != "poch" else (
            f"poch({'; '.join(to_text(a) for a in e.args)})"
        )
    if isinstance(e, ListExpr):
        return "[" + ", ".join(to_text(a) for a in e.items) + "]"
    if isinstance(e, Choice):
        return "|".join(to_text(a) for a in e.options)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# conversions


def to_rational_function(e):
    """Convert a purely algebraic tree to a RationalFunction in the alphabet."""
    e = parse(e)
    if isinstance(e, Num):
        return RationalFunction.const(e.value)
    if isinstance(e, Sym):
        if e.name not in VARIABLES:
            raise ParseError(f"{e.name!r} is not in the variable alphabet {VARIABLES}")
        return RationalFunction.var(e.name)
    if isinstance(e, Neg):
        return -to_rational_function(e.arg)
    if isinstance(e, BinOp):
        left = to_rational_function(e.left)
        if e.op == "^":
            right = to_rational_function(e.right)
            if not right.is_constant() or right.constant_value().denominator != 1:
                raise ParseError("exponents must be integers in rational expressions")
            return left ** int(right.constant_value())
        right = to_rational_function(e.right)
        return {"+": left.__add__, "-": left.__sub__, "*": left.__mul__, "/": left.__truediv__}[e.op](right)
    raise ParseError(f"{to_text(e)} is not a rational expression")


def parse_rational_function(text):
    return to_rational_function(parse(text))


def parse_polynomial(text):
    rf = parse_rational_function(text)
    if not rf.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return rf.num * (1 / rf.den.constant_value())


def parse_rational(text):
    rf = parse_rational_function(text)
    if not rf.is_constant():
        raise ParseError(f"{text!r} is not a rational constant")
    return rf.constant_value()


def parse_linear_form(text, var="t"):
    p = parse_polynomial(text) if not isinstance(text, Polynomial) else text
    others = [v for v in p.variables() if v != var]
    if others or p.degree(var) > 1:
        raise ParseError(f"{text!r} is not linear in {var}")
    coeffs = p.coefficient_list(var) if p.variables() else [p]
    const = coeffs[0].constant_value() if coeffs and not coeffs[0].is_zero() else Fraction(0)
    slope = coeffs[1].constant_value() if len(coeffs) > 1 else Fraction(0)
    return LinearForm(const, slope)


def from_polynomial(p):
    """Expression tree for a Polynomial (used when emitting records)."""
    return parse(str(p))


def from_linear_form(f):
    return parse(str(f))


def num(x):
    return Num(Fraction(x))


def call(name, *args):
    return Call(name, tuple(args))


def mul(*factors):
    out = None
    for f in factors:
        out = f if out is None else BinOp("*", out, f)
    return out if out is not None else Num(Fraction(1))


def div(a, b):
    return BinOp("/", a, b)


def power(base, exponent):
    return BinOp("^", base, exponent)


def free_symbols(e):
    if isinstance(e, Sym):
        return {e.name} if e.name not in CONSTANTS else set()
    if isinstance(e, (Num,)):
        return set()
    if isinstance(e, Neg):
        return free_symbols(e.arg)
    if isinstance(e, BinOp):
        return free_symbols(e.left) | free_symbols(e.right)
    if isinstance(e, Call):
        return set().union(*(free_symbols(a) for a in e.args)) if e.args else set()
    if isinstance(e, (ListExpr,)):
        return set().union(*(free_symbols(a) for a in e.items)) if e.items else set()
    if isinstance(e, Choice):
        return set().union(*(free_symbols(a) for a in e.options))
    return set()


def substitute(e, bindings):
    """Replace symbols by expressions (or rationals)."""
    if isinstance(e, Sym):
        if e.name in bindings:
            v = bindings[e.name]
            return v if isinstance(v, Expr) else Num(Fraction(v))
        return e
    if isinstance(e, Num):
        return e
    if isinstance(e, Neg):
        return _fold(Neg(substitute(e.arg, bindings)))
    if isinstance(e, BinOp):
        return _fold(BinOp(e.op, substitute(e.left, bindings), substitute(e.right, bindings)))
    if isinstance(e, Call):
        return Call(e.name, tuple(substitute(a, bindings) for a in e.args))
    if isinstance(e, ListExpr):
        return ListExpr(tuple(substitute(a, bindings) for a in e.items))
    if isinstance(e, Choice):
        return Choice(tuple(substitute(a, bindings) for a in e.options))
    raise TypeError(e)
