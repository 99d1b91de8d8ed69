"""Summation of hypergeometric series in a real parameter a.

A series here is

    sum_n  z**n * prod (p_i(a))_n / prod (q_j(a))_n * w(n, a)

with p_i, q_j affine in a and w a polynomial in (n, a).  Geometrically
convergent series (|z| < 1) are summed directly with a ratio-based tail bound.
Balanced series at |z| = 1 converge only like n**c; those go through a Levin
u-transform at raised precision, with a plain partial sum plus power-law tail
as a coarse guard against gross failure of the transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bigreal import BigFloat, gamma, working_prec
from .exact import BiPoly

DEFAULT_MAX_TERMS = 100_000


class InadmissibleParameter(ValueError):
    """The series is undefined at this a (a denominator Pochhammer hits a pole)."""


class NonConvergentSeries(ValueError):
    pass


class AccelerationFailed(ArithmeticError):
    pass


class ToleranceUnachievable(ArithmeticError):
    pass


@dataclass(frozen=True)
class Affine:
    """slope * a + offset."""

    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def const(cls, c) -> "Affine":
        return cls(Fraction(0), Fraction(c))

    def at(self, a):
        if self.slope == 0:
            return self.offset
        return self.slope * a + self.offset

    def __str__(self):
        if self.slope == 0:
            return str(self.offset)
        s = "a" if self.slope == 1 else f"{self.slope}*a"
        if self.offset:
            s += f" + {self.offset}" if self.offset > 0 else f" - {-self.offset}"
        return s

    def to_json(self):
        return [str(self.slope), str(self.offset)]

    @classmethod
    def from_json(cls, v):
        return cls(Fraction(v[0]), Fraction(v[1]))


def A(slope=1, offset=0) -> Affine:
    return Affine(Fraction(slope), Fraction(offset))


@dataclass(frozen=True)
class PochhammerSeries:
    numerator_params: Tuple[Affine, ...]
    denominator_params: Tuple[Affine, ...]
    ratio_z: Fraction
    # polynomial in (n, a); the BiPoly's second variable stands for a
    weight: BiPoly = field(default_factory=lambda: BiPoly.const(1), compare=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "numerator_params", tuple(self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(self.denominator_params))
        object.__setattr__(self, "ratio_z", Fraction(self.ratio_z))

    def __eq__(self, other):
        if not isinstance(other, PochhammerSeries):
            return NotImplemented
        return (self.numerator_params, self.denominator_params, self.ratio_z, self.weight, self.label) == (
            other.numerator_params, other.denominator_params, other.ratio_z, other.weight, other.label)

    def __hash__(self):
        return hash((self.numerator_params, self.denominator_params, self.ratio_z, self.label))

    @property
    def balanced(self) -> bool:
        return len(self.numerator_params) == len(self.denominator_params)

    @property
    def kind(self) -> str:
        """'linear', 'algebraic' or 'divergent' (independent of a)."""
        z = abs(self.ratio_z)
        p, q = len(self.numerator_params), len(self.denominator_params)
        if p < q or (p == q and z < 1):
            return "linear"
        if p == q and z == 1:
            return "algebraic"
        return "divergent"

    def weight_degree(self) -> int:
        return self.weight.degree()[0]

    def decay_exponent(self, a) -> Fraction:
        """c with term(n) ~ n**c for balanced series (exact for rational a)."""
        s = sum(p.at(a) for p in self.numerator_params) - sum(q.at(a) for q in self.denominator_params)
        return s + self.weight_degree()

    def check_admissible(self, a) -> None:
        for q in self.denominator_params:
            v = Fraction(q.at(a)) if not isinstance(a, BigFloat) else q.at(a).to_fraction()
            if v <= 0 and v.denominator == 1:
                raise InadmissibleParameter(f"denominator parameter {q} = {v} is a non-positive integer")
        if self.kind == "divergent":
            raise NonConvergentSeries(f"series {self.label or self} diverges")
        if self.kind == "algebraic":
            c = self.decay_exponent(a if not isinstance(a, BigFloat) else a.to_fraction())
            if c >= -1:
                raise NonConvergentSeries(f"terms decay like n^{float(c):.4g}; need exponent < -1")

    def terminates_at(self, a) -> Optional[int]:
        """Index of the first vanishing term if a numerator parameter is a non-positive integer."""
        best = None
        for p in self.numerator_params:
            v = Fraction(p.at(a)) if not isinstance(a, BigFloat) else p.at(a).to_fraction()
            if v <= 0 and v.denominator == 1:
                m = int(-v) + 1
                best = m if best is None else min(best, m)
        return best

    def term_value(self, a, n: int, prec: int) -> BigFloat:
        """Single term from Pochhammer products (used as an independent check of the recurrence)."""
        ab = BigFloat(a, prec) if not isinstance(a, BigFloat) else a
        v = BigFloat(self.ratio_z, prec) ** n
        for p in self.numerator_params:
            v = v * pochhammer(p.at(ab), n, prec)
        for q in self.denominator_params:
            v = v / pochhammer(q.at(ab), n, prec)
        return v * self.weight.evaluate(n, ab)

    def __str__(self):
        num = " ".join(f"({p})_n" for p in self.numerator_params) or "1"
        den = " ".join(f"({q})_n" for q in self.denominator_params) or "1"
        w = "" if self.weight == BiPoly.const(1) else f" * [{str(self.weight).replace('k', 'a')}]"
        return f"sum ({self.ratio_z})^n {num} / {den}{w}"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "z": str(self.ratio_z),
            "num": [p.to_json() for p in self.numerator_params],
            "den": [q.to_json() for q in self.denominator_params],
            "weight_n_a": self.weight.to_table(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "PochhammerSeries":
        return cls(
            tuple(Affine.from_json(p) for p in d["num"]),
            tuple(Affine.from_json(q) for q in d["den"]),
            Fraction(d["z"]),
            BiPoly.from_table(d["weight_n_a"]),
            d.get("label", ""),
        )


@dataclass
class SumResult:
    value: BigFloat
    error_estimate: BigFloat
    terms_used: int
    method: str

    def __add__(self, other: "SumResult") -> "SumResult":
        return SumResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.terms_used + other.terms_used,
            self.method if self.method == other.method else "mixed",
        )

    def scaled(self, c) -> "SumResult":
        return SumResult(self.value * c, self.error_estimate * abs(c), self.terms_used, self.method)


def pochhammer(x, n: int, prec: Optional[int] = None):
    """Rising factorial x (x+1) ... (x+n-1); exact for int/Fraction input when prec is None."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if prec is None and not isinstance(x, BigFloat):
        out = Fraction(1)
        for i in range(n):
            out *= x + i
        return out
    if prec is None:
        prec = x.prec
    xb = BigFloat(x, prec + 16) if not isinstance(x, BigFloat) else x.with_prec(prec + 16)
    out = BigFloat(1, prec + 16)
    for i in range(n):
        out = out * (xb + i)
    return out.with_prec(prec)


def pochhammer_gamma(x, n: int, prec: int) -> BigFloat:
    """(x)_n as Gamma(x+n)/Gamma(x), the independent route."""
    wp = working_prec(prec)
    xb = BigFloat(x, wp)
    return (gamma(xb + n, wp) / gamma(xb, wp)).with_prec(prec)


# ---------------------------------------------------------------------------
# term generation

def _params(series: PochhammerSeries, a, wp: int):
    ab = a if isinstance(a, BigFloat) else BigFloat(a, wp + 32)
    ab = ab.with_prec(wp + 32)
    num = [BigFloat(p.at(a) if not isinstance(a, BigFloat) else p.at(ab), wp) for p in series.numerator_params]
    den = [BigFloat(q.at(a) if not isinstance(a, BigFloat) else q.at(ab), wp) for q in series.denominator_params]
    return ab, num, den


def iter_terms(series: PochhammerSeries, a, wp: int):
    """Yield (n, P_n, t_n) where P_n is the hypergeometric part and t_n = P_n * w(n, a).

    P_{n+1} = P_n * z * prod(n + p_i) / prod(n + q_j): O(1) work per term.
    """
    ab, num, den = _params(series, a, wp)
    z = series.ratio_z
    weight = series.weight.shift(0, 0)
    wa = _weight_in_n(weight, ab, wp)
    P = BigFloat(1, wp)
    n = 0
    while True:
        yield n, P, P * _horner(wa, n)
        top = BigFloat(z, wp)
        for p in num:
            top = top * (p + n)
        bot = None
        for q in den:
            bot = (q + n) if bot is None else bot * (q + n)
        P = P * top if bot is None else P * top / bot
        n += 1


def _weight_in_n(weight: BiPoly, a: BigFloat, wp: int) -> List[BigFloat]:
    """Coefficients of w(n, a) as a polynomial in n, with a substituted."""
    deg = weight.degree()[0]
    coeffs = [BigFloat(0, wp) for _ in range(max(deg, 0) + 1)]
    for (i, j), c in weight.terms.items():
        coeffs[i] = coeffs[i] + (a ** j) * c if j else coeffs[i] + c
    return coeffs


def _horner(coeffs: Sequence[BigFloat], n: int):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * n + c
    return acc


# ---------------------------------------------------------------------------
# linear (geometric) convergence

def sum_linear(series: PochhammerSeries, a, prec: int, tol, max_terms: int = DEFAULT_MAX_TERMS,
               block_size: int = 1) -> SumResult:
    """Direct summation until a geometric tail bound certifies the remainder below tol*|sum|.

    ``tol`` is relative.  Summation precision is raised automatically when
    alternating terms exceed the sum by more than the guard bits.
    """
    series.check_admissible(a)
    if series.kind != "linear":
        raise NonConvergentSeries("sum_linear needs |z| < 1")
    tol = BigFloat(tol, 64) if not isinstance(tol, BigFloat) else tol
    stop = series.terminates_at(a)
    guard = max(32, prec // 10)
    extra = 0
    for _attempt in range(4):
        wp = prec + guard + extra
        res, peak = _sum_linear_at(series, a, wp, tol, max_terms, block_size, stop)
        if res.value.is_zero():
            return res
        lost = peak.exponent() - res.value.exponent()
        if lost <= guard + extra - 8:
            return SumResult(res.value.with_prec(prec), res.error_estimate, res.terms_used, res.method)
        extra = lost + 16
    raise ToleranceUnachievable("cancellation exceeded the precision budget")


def _sum_linear_at(series, a, wp, tol, max_terms, block_size, stop):
    # term ratios tend to |z| for balanced series and to 0 when denominators outnumber numerators
    limit_ratio = float(abs(series.ratio_z)) if series.balanced else 0.0
    total = BigFloat(0, wp)
    block = BigFloat(0, wp)
    peak = BigFloat(0, wp)
    prev_t = None
    in_block = 0
    n_used = 0
    for n, P, t in iter_terms(series, a, wp):
        if stop is not None and n >= stop:
            total = total + block
            return SumResult(total, BigFloat(0, 64), n, "direct"), peak
        if n >= max_terms:
            raise ToleranceUnachievable(f"no certified tail bound within {max_terms} terms")
        block = block + t
        in_block += 1
        if in_block >= block_size:
            total = total + block
            block = BigFloat(0, wp)
            in_block = 0
        at = abs(t)
        if at > peak:
            peak = at
        n_used = n + 1
        if prev_t is not None and not prev_t.is_zero() and n > 4:
            r = float(at / abs(prev_t)) if not at.is_zero() else 0.0
            r_sup = max(r, limit_ratio)
            if r_sup < 1 and (r <= (1 + limit_ratio) / 2):
                s = total + block
                # next term is at most r_sup * |t|
                tail = at * BigFloat(r_sup / (1 - r_sup), 64)
                if s.is_zero() or tail <= tol * abs(s) * Fraction(1, 16):
                    total = s
                    rounding = peak * n_used * BigFloat(2, 64) ** (-wp + 2)
                    return SumResult(total, tail + rounding, n_used, "direct"), peak
        prev_t = t
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# algebraic convergence: Levin u-transform

def levin_u(terms: Sequence[BigFloat], n0: int = 0, beta: int = 1) -> BigFloat:
    """Levin u-transform L_k^{(n0)} of the series with the given terms, k = len(terms) - n0 - 1.

    Uses partial sums S_{n0..n0+k} and remainder estimates omega_n = (beta + n) a_n.
    The (beta + n)**(k-1) weights are exact integers; all cancellation happens
    in the caller's precision, so callers must supply well-padded terms.
    """
    k = len(terms) - n0 - 1
    if k < 1:
        raise ValueError("need at least two terms")
    partial = []
    s = None
    for t in terms:
        s = t if s is None else s + t
        partial.append(s)
    num = None
    den = None
    for j in range(k + 1):
        n = n0 + j
        c = (-1) ** j * math.comb(k, j) * (beta + n) ** (k - 1)
        omega = terms[n] * (beta + n)
        w = c / omega
        num = partial[n] * w if num is None else num + partial[n] * w
        den = w if den is None else den + w
    return num / den


def sum_algebraic(series: PochhammerSeries, a, prec: int, tol, max_terms: int = DEFAULT_MAX_TERMS,
                  orders: Sequence[int] = (20, 30, 40, 50, 60, 80, 100, 120, 160)) -> SumResult:
    """Sum a balanced |z| = 1 series with the Levin u-transform.

    The transform runs at 2x the target precision plus a margin for its own
    cancellation.  The error estimate is the larger of (i) the change between
    successive transform orders and (ii) the change when the same order is
    recomputed 64 bits lower.  A direct partial sum with a power-law tail is
    then required to agree within its own (much looser) uncertainty.
    """
    series.check_admissible(a)
    if series.kind != "algebraic":
        raise NonConvergentSeries("sum_algebraic needs a balanced series with |z| = 1")
    tol = BigFloat(tol, 64) if not isinstance(tol, BigFloat) else tol
    stop = series.terminates_at(a)
    if stop is not None:
        wp = working_prec(prec)
        total = BigFloat(0, wp)
        for n, _, t in iter_terms(series, a, wp):
            if n >= stop:
                break
            total = total + t
        return SumResult(total.with_prec(prec), BigFloat(0, 64), stop, "direct")

    orders = [m for m in orders if m + 1 <= max_terms]
    if len(orders) < 2:
        raise AccelerationFailed("max_terms too small for the transform")
    top = orders[-1]
    wp = 2 * prec + 4 * top
    terms = []
    for n, _, t in iter_terms(series, a, wp):
        terms.append(t)
        if n >= top:
            break
    if any(t.is_zero() for t in terms):
        raise AccelerationFailed("vanishing term inside the transform window")

    value, err, used = levin_settle(terms, tol, orders)
    _coarse_guard(series, a, value, max_terms)
    return SumResult(value.with_prec(prec), err.with_prec(64), used, "accelerated")


def levin_settle(terms: Sequence[BigFloat], tol, orders: Sequence[int]) -> Tuple[BigFloat, BigFloat, int]:
    """Run the u-transform at increasing orders until successive values settle below tol (relative).

    ``terms`` must hold at least ``max(orders) + 1`` entries at the working
    precision.  The rounding part of the estimate recomputes each order with
    64 fewer bits.
    """
    tol = BigFloat(tol, 64) if not isinstance(tol, BigFloat) else tol
    lo_terms = [t.with_prec(t.prec - 64) for t in terms]
    prev = None
    best = None
    used = 0
    for m in orders:
        if m + 1 > len(terms):
            break
        val = levin_u(terms[: m + 1])
        if prev is not None:
            trunc = abs(val - prev)
            rnd = abs(val - levin_u(lo_terms[: m + 1]))
            err = trunc if trunc > rnd else rnd
            if best is None or err < best[1]:
                best = (val, err)
                used = m + 1
            if err <= tol * abs(val) * Fraction(1, 16):
                break
        prev = val
    if best is None:
        raise AccelerationFailed("need at least two transform orders")
    value, err = best
    if err > tol * abs(value):
        raise AccelerationFailed(f"Levin transform did not settle: estimate {float(err):.3g}")
    return value, err, used


def direct_with_tail(series: PochhammerSeries, a, terms: int = 4000, prec: int = 80) -> Tuple[BigFloat, BigFloat]:
    """Partial sum of ``terms`` terms plus an integral power-law tail, and a bound on that tail's error.

    The local exponent is fitted from the last two octaves of terms, which
    absorbs the leading 1/n correction to the pure power law.
    """
    c_exact = series.decay_exponent(a if not isinstance(a, BigFloat) else a.to_fraction())
    total = BigFloat(0, prec)
    half = terms // 2
    t_half = None
    t_last = None
    for n, _, t in iter_terms(series, a, prec):
        if n >= terms:
            break
        total = total + t
        if n == half:
            t_half = t
        t_last = t
    N = terms - 1
    c_fit = math.log(float(t_last / t_half)) / math.log(N / half)
    c = float(c_exact)
    # sum_{n > N} t_n  ~  integral from N + 1/2 of t_N (x/N)^c dx
    tail = t_last * BigFloat(N / (-c_fit - 1) * ((N + 0.5) / N) ** (c_fit + 1), prec)
    spread = abs(tail) * BigFloat(abs(c_fit - c) + 4.0 / N, 64) * 4
    return total + tail, spread


def _coarse_guard(series, a, value, max_terms):
    n = min(max_terms, 4000)
    est, spread = direct_with_tail(series, a, n)
    if abs(value.with_prec(80) - est) > spread + abs(est) * BigFloat(2, 64) ** -60:
        raise AccelerationFailed(
            f"transform value {value.to_decimal(20)} disagrees with direct sum + tail {est.to_decimal(20)} "
            f"(allowed spread {float(spread):.3g})"
        )


def sum_series(series: PochhammerSeries, a, prec: int, tol, max_terms: int = DEFAULT_MAX_TERMS) -> SumResult:
    if series.kind == "linear":
        return sum_linear(series, a, prec, tol, max_terms)
    return sum_algebraic(series, a, prec, tol, max_terms)
