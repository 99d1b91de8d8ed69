"""Closed-form prefactors as small expression trees in the parameter a.

Nodes are frozen dataclasses, so structural equality doubles as the
round-trip check for the JSON export.  Python operators build trees:
``4 / PI * Pow(Fraction(4), affine()) / CosPi(affine()) ** 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .bigreal import BigFloat, constant, cos_pi, gamma, ln, power, working_prec
from .series import Affine


class SingularPoint(ValueError):
    """The expression has a pole (or 0/0) at the requested a."""


class Expr:
    def __add__(self, other):
        return Add((self, wrap(other)))

    def __radd__(self, other):
        return Add((wrap(other), self))

    def __sub__(self, other):
        return Sub(self, wrap(other))

    def __rsub__(self, other):
        return Sub(wrap(other), self)

    def __mul__(self, other):
        return Mul((self, wrap(other)))

    def __rmul__(self, other):
        return Mul((wrap(other), self))

    def __truediv__(self, other):
        return Div(self, wrap(other))

    def __rtruediv__(self, other):
        return Div(wrap(other), self)

    def __pow__(self, m: int):
        return IPow(self, int(m))

    def __neg__(self):
        return Mul((Lit(Fraction(-1)), self))


def wrap(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Lit(Fraction(x))
    raise TypeError(f"cannot use {type(x).__name__} in a closed form")


@dataclass(frozen=True, eq=True)
class Lit(Expr):
    value: Fraction


@dataclass(frozen=True, eq=True)
class Const(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class Param(Expr):
    """The parameter a."""


@dataclass(frozen=True, eq=True)
class Add(Expr):
    args: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    args: Tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True, eq=True)
class IPow(Expr):
    arg: Expr
    exponent: int


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    """base ** (slope*a + offset) with rational base > 0."""

    base: Fraction
    exponent: Affine


@dataclass(frozen=True, eq=True)
class CosPi(Expr):
    arg: Affine


@dataclass(frozen=True, eq=True)
class PochA(Expr):
    """(base)_a = Gamma(base + a) / Gamma(base)."""

    base: Fraction


@dataclass(frozen=True, eq=True)
class Ln(Expr):
    arg: Fraction


# convenient leaves
a = Param()
PI = Const("pi")
LN2 = Const("ln2")
CATALAN = Const("catalan")
ZETA3 = Const("zeta3")
SQRT2 = Const("sqrt2")
SQRT3 = Const("sqrt3")
LN3 = Ln(Fraction(3))


def affine(slope=1, offset=0) -> Affine:
    return Affine(Fraction(slope), Fraction(offset))


def evaluate(e: Expr, a_val, prec: int) -> BigFloat:
    """Numeric value at a = a_val (Fraction, int or BigFloat), using guard bits internally."""
    wp = working_prec(prec)
    av = a_val if isinstance(a_val, BigFloat) else BigFloat(Fraction(a_val), wp + 32)
    return _eval(e, av.with_prec(wp + 32), wp).with_prec(prec)


def _eval(e: Expr, av: BigFloat, wp: int) -> BigFloat:
    if isinstance(e, Lit):
        return BigFloat(e.value, wp)
    if isinstance(e, Const):
        return constant(e.name, wp)
    if isinstance(e, Param):
        return av.with_prec(wp)
    if isinstance(e, Add):
        out = BigFloat(0, wp)
        for x in e.args:
            out = out + _eval(x, av, wp)
        return out
    if isinstance(e, Sub):
        return _eval(e.left, av, wp) - _eval(e.right, av, wp)
    if isinstance(e, Mul):
        out = BigFloat(1, wp)
        for x in e.args:
            out = out * _eval(x, av, wp)
        return out
    if isinstance(e, Div):
        d = _eval(e.den, av, wp)
        if d.is_zero():
            raise SingularPoint("division by zero in closed form")
        return _eval(e.num, av, wp) / d
    if isinstance(e, IPow):
        return _eval(e.arg, av, wp) ** e.exponent
    if isinstance(e, Pow):
        return power(e.base, e.exponent.at(av), wp)
    if isinstance(e, CosPi):
        return cos_pi(e.arg.at(av), wp)
    if isinstance(e, PochA):
        return gamma(av + e.base, wp) / gamma(BigFloat(e.base, wp), wp)
    if isinstance(e, Ln):
        return ln(BigFloat(e.arg, wp))
    raise TypeError(f"unknown node {e!r}")


def exact_value(e: Expr, a_val: Fraction) -> Optional[Fraction]:
    """Exact rational value when it is forced (e.g. cos(pi/2) = 0), else None."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Param):
        return Fraction(a_val)
    if isinstance(e, Const):
        return None
    if isinstance(e, Add):
        vals = [exact_value(x, a_val) for x in e.args]
        return None if any(v is None for v in vals) else sum(vals, Fraction(0))
    if isinstance(e, Sub):
        l, r = exact_value(e.left, a_val), exact_value(e.right, a_val)
        return None if l is None or r is None else l - r
    if isinstance(e, Mul):
        vals = [exact_value(x, a_val) for x in e.args]
        if any(v == 0 for v in vals if v is not None):
            return Fraction(0)
        if any(v is None for v in vals):
            return None
        out = Fraction(1)
        for v in vals:
            out *= v
        return out
    if isinstance(e, Div):
        n, d = exact_value(e.num, a_val), exact_value(e.den, a_val)
        if d == 0:
            return None
        if n == 0:
            return Fraction(0)
        return None if n is None or d is None else n / d
    if isinstance(e, IPow):
        v = exact_value(e.arg, a_val)
        if v is None:
            return None
        if v == 0:
            return None if e.exponent < 0 else (Fraction(1) if e.exponent == 0 else Fraction(0))
        return v ** e.exponent
    if isinstance(e, Pow):
        x = e.exponent.at(Fraction(a_val))
        return e.base ** int(x) if x.denominator == 1 else None
    if isinstance(e, CosPi):
        x = e.arg.at(Fraction(a_val))
        if (x - Fraction(1, 2)).denominator == 1:
            return Fraction(0)
        if x.denominator == 1:
            return Fraction(1 if int(x) % 2 == 0 else -1)
        return None
    if isinstance(e, PochA):
        x = Fraction(a_val)
        if x.denominator == 1 and x >= 0:
            out = Fraction(1)
            for i in range(int(x)):
                out *= e.base + i
            return out
        return None
    if isinstance(e, Ln):
        return Fraction(0) if e.arg == 1 else None
    raise TypeError(f"unknown node {e!r}")


def singular_reason(e: Expr, a_val: Fraction) -> Optional[str]:
    """Why e cannot be evaluated at a rational a (syntactic check), or None if it can."""
    a_val = Fraction(a_val)
    if isinstance(e, (Add, Mul)):
        for x in e.args:
            r = singular_reason(x, a_val)
            if r:
                return r
        return None
    if isinstance(e, Sub):
        return singular_reason(e.left, a_val) or singular_reason(e.right, a_val)
    if isinstance(e, Div):
        r = singular_reason(e.num, a_val) or singular_reason(e.den, a_val)
        if r:
            return r
        if exact_value(e.den, a_val) == 0:
            return f"denominator {to_text(e.den)} vanishes at a = {a_val}"
        return None
    if isinstance(e, IPow):
        r = singular_reason(e.arg, a_val)
        if r:
            return r
        if e.exponent < 0 and exact_value(e.arg, a_val) == 0:
            return f"negative power of {to_text(e.arg)} = 0 at a = {a_val}"
        return None
    if isinstance(e, PochA):
        x = e.base + a_val
        if x <= 0 and x.denominator == 1:
            return f"Gamma pole in ({e.base})_a at a = {a_val}"
        return None
    return None


def is_singular(e: Expr, a_val) -> bool:
    return singular_reason(e, a_val) is not None


# ---------------------------------------------------------------------------
# text and JSON

_CONST_TEXT = {"pi": "π", "ln2": "ln2", "catalan": "G", "zeta3": "ζ(3)", "sqrt2": "√2", "sqrt3": "√3"}


def _atom(e: Expr) -> str:
    t = to_text(e)
    return t if isinstance(e, (Lit, Const, Param, Pow, CosPi, PochA, Ln)) and not t.startswith("-") else f"({t})"


def to_text(e: Expr) -> str:
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Const):
        return _CONST_TEXT[e.name]
    if isinstance(e, Param):
        return "a"
    if isinstance(e, Add):
        return " + ".join(to_text(x) for x in e.args)
    if isinstance(e, Sub):
        right = _atom(e.right) if isinstance(e.right, (Add, Sub)) else to_text(e.right)
        return f"{to_text(e.left)} - {right}"
    if isinstance(e, Mul):
        return "·".join(_atom(x) if isinstance(x, (Add, Sub)) else to_text(x) for x in e.args)
    if isinstance(e, Div):
        num = _atom(e.num) if isinstance(e.num, (Add, Sub)) else to_text(e.num)
        return f"{num}/{_atom(e.den)}"
    if isinstance(e, IPow):
        return f"{_atom(e.arg)}^{e.exponent}"
    if isinstance(e, Pow):
        return f"{e.base}^({e.exponent})"
    if isinstance(e, CosPi):
        return f"cos(π({e.arg}))"
    if isinstance(e, PochA):
        return f"({e.base})_a"
    if isinstance(e, Ln):
        return f"ln{e.arg}"
    raise TypeError(e)


def to_json(e: Expr):
    if isinstance(e, Lit):
        return {"op": "lit", "value": str(e.value)}
    if isinstance(e, Const):
        return {"op": "const", "name": e.name}
    if isinstance(e, Param):
        return {"op": "a"}
    if isinstance(e, Add):
        return {"op": "add", "args": [to_json(x) for x in e.args]}
    if isinstance(e, Sub):
        return {"op": "sub", "args": [to_json(e.left), to_json(e.right)]}
    if isinstance(e, Mul):
        return {"op": "mul", "args": [to_json(x) for x in e.args]}
    if isinstance(e, Div):
        return {"op": "div", "args": [to_json(e.num), to_json(e.den)]}
    if isinstance(e, IPow):
        return {"op": "ipow", "args": [to_json(e.arg)], "exponent": e.exponent}
    if isinstance(e, Pow):
        return {"op": "pow", "base": str(e.base), "exponent": e.exponent.to_json()}
    if isinstance(e, CosPi):
        return {"op": "cos_pi", "arg": e.arg.to_json()}
    if isinstance(e, PochA):
        return {"op": "pochhammer_a", "base": str(e.base)}
    if isinstance(e, Ln):
        return {"op": "ln", "arg": str(e.arg)}
    raise TypeError(e)


def from_json(d) -> Expr:
    op = d["op"]
    if op == "lit":
        return Lit(Fraction(d["value"]))
    if op == "const":
        return Const(d["name"])
    if op == "a":
        return Param()
    if op == "add":
        return Add(tuple(from_json(x) for x in d["args"]))
    if op == "sub":
        return Sub(from_json(d["args"][0]), from_json(d["args"][1]))
    if op == "mul":
        return Mul(tuple(from_json(x) for x in d["args"]))
    if op == "div":
        return Div(from_json(d["args"][0]), from_json(d["args"][1]))
    if op == "ipow":
        return IPow(from_json(d["args"][0]), int(d["exponent"]))
    if op == "pow":
        return Pow(Fraction(d["base"]), Affine.from_json(d["exponent"]))
    if op == "cos_pi":
        return CosPi(Affine.from_json(d["arg"]))
    if op == "pochhammer_a":
        return PochA(Fraction(d["base"]))
    if op == "ln":
        return Ln(Fraction(d["arg"]))
    raise ValueError(f"unknown closed-form op {op!r}")
