"""Exact bivariate polynomials and rational functions over Q.

Coefficients are Python ints where integral and ``fractions.Fraction``
otherwise, so expansion of large certificates stays on the fast integer path.
Rational functions are never gcd-reduced; equality and zero tests go through
cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Tuple, Union

Rational = Fraction
Exponent = Tuple[int, int]
Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class BiPoly:
    """Polynomial in two variables, stored as ``{(deg_n, deg_k): coeff}``.

    The variables are called n and k, but nothing here depends on that; the
    series engine reuses the type for weights in (n, a).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[(int(e[0]), int(e[1]))] = _norm(c)
        self.terms = clean

    @classmethod
    def const(cls, c: Scalar) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def n(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def k(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Scalar]) -> "BiPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @staticmethod
    def coerce(x) -> "BiPoly":
        if isinstance(x, BiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return BiPoly.const(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Tuple[int, int]:
        if not self.terms:
            return (-1, -1)
        return (max(e[0] for e in self.terms), max(e[1] for e in self.terms))

    def total_degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        other = BiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "BiPoly":
        other = BiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = _norm(v)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BiPoly":
        other = BiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return BiPoly.coerce(other) - self

    def __mul__(self, other) -> "BiPoly":
        other = BiPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Exponent, Scalar] = {}
        get = out.get
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = get(e, 0) + c1 * c2
        return BiPoly._raw({e: _norm(c) for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "BiPoly":
        if m < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def shift(self, dn: Scalar = 0, dk: Scalar = 0) -> "BiPoly":
        """Return p(n + dn, k + dk)."""
        if dn == 0 and dk == 0:
            return self
        out: Dict[Exponent, Scalar] = {}
        for (i, j), c in self.terms.items():
            for a in range(i + 1):
                ca = c * comb(i, a) * dn ** (i - a) if a < i else c
                if ca == 0:
                    continue
                for b in range(j + 1):
                    cb = ca * comb(j, b) * dk ** (j - b) if b < j else ca
                    if cb == 0:
                        continue
                    out[(a, b)] = out.get((a, b), 0) + cb
        return BiPoly(out)

    def evaluate(self, n, k):
        """Horner-free evaluation; works for Fraction, int, or BigFloat inputs."""
        if not self.terms:
            return 0
        dn, dk = self.degree()
        npow = [1]
        for _ in range(dn):
            npow.append(npow[-1] * n)
        kpow = [1]
        for _ in range(dk):
            kpow.append(kpow[-1] * k)
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * npow[i] * kpow[j]
        return total

    def to_table(self) -> list:
        """Coefficient table as ``[[deg_n, deg_k, "p/q"], ...]`` in sorted order."""
        return [[i, j, str(Fraction(c))] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_table(cls, rows: Iterable) -> "BiPoly":
        return cls({(int(i), int(j)): Fraction(c) for i, j, c in rows})

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                s for s in (
                    ("n" if i == 1 else f"n^{i}") if i else "",
                    ("k" if j == 1 else f"k^{j}") if j else "",
                ) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class RatFunc:
    """Unreduced quotient ``num / den`` of two BiPoly values."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = BiPoly.coerce(num)
        den = BiPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = BiPoly.const(1)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (BiPoly, int, Fraction)):
            return RatFunc(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFunc equality is semantic; not hashable")

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, m: int) -> "RatFunc":
        if m >= 0:
            return RatFunc(self.num ** m, self.den ** m)
        if self.is_zero():
            raise ZeroDivisionError("negative power of the zero rational function")
        return RatFunc(self.den ** -m, self.num ** -m)

    def shift(self, dn: Scalar = 0, dk: Scalar = 0) -> "RatFunc":
        return RatFunc(self.num.shift(dn, dk), self.den.shift(dn, dk))

    def evaluate(self, n, k) -> Fraction:
        """Exact value at rational (n, k); raises PoleError on a vanishing denominator."""
        n, k = Fraction(n), Fraction(k)
        d = self.den.evaluate(n, k)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at n={n}, k={k}")
        return Fraction(self.num.evaluate(n, k)) / d

    def evaluate_real(self, n, k):
        """Evaluate at non-exact points (e.g. BigFloat); no pole check beyond the arithmetic's own."""
        return self.num.evaluate(n, k) / self.den.evaluate(n, k)

    def __repr__(self) -> str:
        return f"RatFunc(({self.num}) / ({self.den}))"


def ratfunc_is_zero(f: RatFunc) -> bool:
    return f.num.is_zero()


def poly_arith(lhs: BiPoly, rhs: BiPoly, op: str) -> BiPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown polynomial op {op!r}")


def ratfunc_arith(lhs: RatFunc, rhs: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown rational-function op {op!r}")


def ratfunc_eval(f: RatFunc, n, k) -> Fraction:
    return f.evaluate(n, k)


N = BiPoly.n()
K = BiPoly.k()
