"""Sums of a WZ pair along rows and columns at a shifted index n -> n + a.

Column sums  sum_n G(n + a, k)  converge geometrically; row sums
sum_k F(a, k) converge only algebraically and go through the Levin
transform.  Both walk the exact shift quotients of the kernel, so after one
log-gamma evaluation every further term costs a few polynomial evaluations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .bigreal import BigFloat, power, working_prec
from .exact import BiPoly, RatFunc
from .hyperterm import WZPair, eval_term_real, shift_ratio
from .series import AccelerationFailed, SumResult, ToleranceUnachievable, levin_settle


def _fixed_k(poly: BiPoly, k, wp: int) -> List[BigFloat]:
    """Coefficients in n of poly(n, k) with k substituted."""
    deg = max(poly.degree()[0], 0)
    out = [BigFloat(0, wp) for _ in range(deg + 1)]
    kb = BigFloat(k, wp)
    for (i, j), c in poly.terms.items():
        out[i] = out[i] + (kb ** j) * c
    return out


def _fixed_n(poly: BiPoly, n, wp: int) -> List[BigFloat]:
    """Coefficients in k of poly(n, k) with n substituted."""
    deg = max(poly.degree()[1], 0)
    out = [BigFloat(0, wp) for _ in range(deg + 1)]
    nb = n if isinstance(n, BigFloat) else BigFloat(n, wp)
    for (i, j), c in poly.terms.items():
        out[j] = out[j] + (nb ** i) * c
    return out


def _horner(coeffs: Sequence[BigFloat], x) -> BigFloat:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


class _Univariate:
    """A RatFunc restricted to one free variable, evaluated by Horner."""

    def __init__(self, f: RatFunc, num: List[BigFloat], den: List[BigFloat]):
        self.num, self.den = num, den

    @classmethod
    def in_n(cls, f: RatFunc, k, wp):
        return cls(f, _fixed_k(f.num, k, wp), _fixed_k(f.den, k, wp))

    @classmethod
    def in_k(cls, f: RatFunc, n, wp):
        return cls(f, _fixed_n(f.num, n, wp), _fixed_n(f.den, n, wp))

    def __call__(self, x) -> BigFloat:
        return _horner(self.num, x) / _horner(self.den, x)


def _column_at(pair: WZPair, a: Fraction, k: int, wp: int, rel_tol: float, max_terms: int):
    rho = _Univariate.in_n(shift_ratio(pair.B, "n"), k, wp)
    rg = _Univariate.in_n(pair.RG, k, wp)
    a_b = BigFloat(a, wp + 32)
    b = eval_term_real(pair.B, a_b, k, wp)
    total = BigFloat(0, wp)
    peak = BigFloat(0, wp)
    prev = None
    for m in range(max_terms):
        x = a_b + m
        t = b * rg(x)
        total = total + t
        at = abs(t)
        if at > peak:
            peak = at
        r = rho(x)
        ar = abs(r)
        if m > 4 and prev is not None and ar < 0.9 and at <= prev:
            tail = at * ar / (1 - ar)
            if total.is_zero() or tail <= abs(total) * rel_tol:
                return total, peak, m + 1, tail
        prev = at
        b = b * r
    raise ToleranceUnachievable(f"column sum did not converge in {max_terms} terms")


def column_sum(pair: WZPair, a, k: int, prec: int, tol: float = 1e-30, max_terms: int = 100_000) -> SumResult:
    """sum_{n >= 0} G(n + a, k), raising precision when the terms dwarf the sum."""
    a = Fraction(a)
    guard = max(32, prec // 10)
    extra = 0
    for _ in range(4):
        wp = prec + guard + extra
        total, peak, used, tail = _column_at(pair, a, k, wp, tol / 16, max_terms)
        if total.is_zero():
            return SumResult(total, BigFloat(0, 64), used, "direct")
        lost = peak.exponent() - total.exponent()
        if lost <= guard + extra - 8:
            rounding = peak * used * BigFloat(2, 64) ** (-wp + 2)
            return SumResult(total.with_prec(prec), (tail + rounding).with_prec(64), used, "direct")
        extra = lost + 16
    raise ToleranceUnachievable("cancellation in the column sum exceeded the precision budget")


def _row_terms(pair: WZPair, a, count: int, wp: int) -> List[BigFloat]:
    """F(a, k) for k = 0 .. count-1."""
    rho = _Univariate.in_k(shift_ratio(pair.B, "k"), BigFloat(a, wp + 32), wp)
    rf = _Univariate.in_k(pair.RF, BigFloat(a, wp + 32), wp)
    b = eval_term_real(pair.B, BigFloat(a, wp + 32), 0, wp)
    out = []
    for k in range(count):
        out.append(b * rf(k))
        b = b * rho(k)
    return out


def row_partial(pair: WZPair, a, K: int, prec: int) -> BigFloat:
    """sum_{k < K} F(a, k)."""
    wp = working_prec(prec) + 32
    total = BigFloat(0, wp)
    for t in _row_terms(pair, Fraction(a), K, wp):
        total = total + t
    return total.with_prec(prec)


def row_sum(pair: WZPair, a, prec: int, tol: float = 1e-30,
            orders: Sequence[int] = (20, 30, 40, 50, 60, 80, 100, 120, 160)) -> SumResult:
    """sum_{k >= 0} F(a, k) for algebraically decaying rows, via the Levin transform."""
    top = orders[-1]
    wp = 2 * prec + 4 * top
    terms = _row_terms(pair, Fraction(a), top + 1, wp)
    if all(t.is_zero() for t in terms):
        return SumResult(BigFloat(0, prec), BigFloat(0, 64), len(terms), "direct")
    if any(t.is_zero() for t in terms):
        raise AccelerationFailed("vanishing term inside the transform window")
    value, err, used = levin_settle(terms, tol, orders)
    return SumResult(value.with_prec(prec), err.with_prec(64), used, "accelerated")


def row_decay_exponent(pair: WZPair, a) -> float:
    """c with F(a, k) ~ k**c, read off the k-shift quotient r(k) = 1 + c/k + O(1/k**2)."""
    r = shift_ratio(pair.B, "k") * pair.RF.shift(0, 1) / pair.RF
    a = Fraction(a)
    num = [float(c) for c in _fixed_n(r.num, a, 128)]
    den = [float(c) for c in _fixed_n(r.den, a, 128)]
    num, den = _trim(num), _trim(den)
    if len(num) != len(den) or not math.isclose(num[-1], den[-1], rel_tol=1e-12):
        raise ValueError("row terms do not decay algebraically")
    return (num[-2] - den[-2]) / num[-1]


def _trim(c: List[float]) -> List[float]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def extrapolate_columns(ks: Sequence[int], values: Sequence[BigFloat], exponent, prec: int) -> Tuple[BigFloat, BigFloat]:
    """Fit values[i] = S + sum_j c_j k_i**(exponent - j) and return (S, |S - S_without_last_point|)."""
    s_all = _power_fit(ks, values, exponent, prec)
    s_less = _power_fit(ks[:-1], values[:-1], exponent, prec)
    return s_all, abs(s_all - s_less)


def _power_fit(ks, values, exponent, prec: int) -> BigFloat:
    m = len(ks)
    wp = prec + 64
    rows = []
    for k, v in zip(ks, values):
        row = [BigFloat(1, wp)] + [power(k, Fraction(exponent) - j, wp) for j in range(m - 1)]
        rows.append(row + [v.with_prec(wp)])
    return _solve(rows)[0].with_prec(prec)


def _solve(rows: List[List[BigFloat]]) -> List[BigFloat]:
    """Gaussian elimination with partial pivoting on an augmented matrix."""
    m = len(rows)
    for col in range(m):
        piv = max(range(col, m), key=lambda r: abs(rows[r][col]))
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(col + 1, m):
            f = rows[r][col] / rows[col][col]
            rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    x = [None] * m
    for r in reversed(range(m)):
        acc = rows[r][m]
        for c in range(r + 1, m):
            acc = acc - rows[r][c] * x[c]
        x[r] = acc / rows[r][r]
    return x
