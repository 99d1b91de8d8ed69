"""Arbitrary-precision reals with explicit per-value precision.

``BigFloat`` is a thin immutable wrapper over mpmath's raw binary floats
(``mpmath.libmp``), which supplies correctly rounded +, -, *, /, sqrt, exp,
log and cos(pi x).  Nothing here touches mpmath's global context: every value
carries its own precision in bits, and mixed-precision operations round to the
narrower of the two.

Log-gamma, the Bernoulli numbers behind it, and the mathematical constants are
computed here from first principles.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from mpmath import libmp

RND = libmp.round_nearest

__all__ = [
    "BigFloat", "DomainError", "PrecisionError", "GammaPoleError",
    "working_prec", "sqrt", "exp", "ln", "cos_pi", "sin_pi", "power",
    "lngamma", "lngamma_signed", "gamma", "constant", "CONSTANT_NAMES",
    "bernoulli_2n", "arith", "elementary",
]


class DomainError(ValueError):
    pass


class GammaPoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class PrecisionError(ArithmeticError):
    """The requested precision cannot be reached with the chosen method."""


def working_prec(prec: int) -> int:
    """Target precision plus guard bits: max(32, 10% of target)."""
    return prec + max(32, prec // 10)


def _to_mpf(x, prec):
    if isinstance(x, BigFloat):
        return x._mpf
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return libmp.from_int(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return libmp.from_int(x.numerator)
        return libmp.from_rational(x.numerator, x.denominator, prec, RND)
    if isinstance(x, float):
        return libmp.from_float(x)
    if isinstance(x, str):
        return libmp.from_str(x, prec, RND)
    raise TypeError(f"cannot convert {type(x).__name__} to BigFloat")


class BigFloat:
    """Binary floating-point number with ``prec`` bits of significand."""

    __slots__ = ("_mpf", "prec")

    def __init__(self, value, prec: int):
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        self.prec = int(prec)
        raw = _to_mpf(value, prec)
        self._mpf = libmp.normalize(*raw, prec, RND) if raw[1] else raw

    @classmethod
    def _wrap(cls, raw, prec):
        obj = cls.__new__(cls)
        obj._mpf = raw
        obj.prec = prec
        return obj

    def with_prec(self, prec: int) -> "BigFloat":
        """Same value rounded (or zero-extended) to ``prec`` bits."""
        return BigFloat(self, prec)

    # arithmetic --------------------------------------------------------
    def _binop(self, other, fn):
        if isinstance(other, BigFloat):
            prec = min(self.prec, other.prec)
            return BigFloat._wrap(fn(self._mpf, other._mpf, prec, RND), prec)
        try:
            raw = _to_mpf(other, self.prec + 20)
        except TypeError:
            return NotImplemented
        return BigFloat._wrap(fn(self._mpf, raw, self.prec, RND), self.prec)

    def _rbinop(self, other, fn):
        try:
            raw = _to_mpf(other, self.prec + 20)
        except TypeError:
            return NotImplemented
        return BigFloat._wrap(fn(raw, self._mpf, self.prec, RND), self.prec)

    def __add__(self, other):
        return self._binop(other, libmp.mpf_add)

    def __radd__(self, other):
        return self._rbinop(other, libmp.mpf_add)

    def __sub__(self, other):
        return self._binop(other, libmp.mpf_sub)

    def __rsub__(self, other):
        return self._rbinop(other, libmp.mpf_sub)

    def __mul__(self, other):
        return self._binop(other, libmp.mpf_mul)

    def __rmul__(self, other):
        return self._rbinop(other, libmp.mpf_mul)

    def __truediv__(self, other):
        if other == 0:
            raise ZeroDivisionError("BigFloat division by zero")
        return self._binop(other, libmp.mpf_div)

    def __rtruediv__(self, other):
        if self.is_zero():
            raise ZeroDivisionError("BigFloat division by zero")
        return self._rbinop(other, libmp.mpf_div)

    def __pow__(self, m):
        if isinstance(m, int):
            if m < 0 and self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return BigFloat._wrap(libmp.mpf_pow_int(self._mpf, m, self.prec, RND), self.prec)
        return power(self, m)

    def __neg__(self):
        return BigFloat._wrap(libmp.mpf_neg(self._mpf), self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        return BigFloat._wrap(libmp.mpf_abs(self._mpf), self.prec)

    def ldexp(self, e: int) -> "BigFloat":
        return BigFloat._wrap(libmp.mpf_shift(self._mpf, e), self.prec)

    # comparison --------------------------------------------------------
    def _cmp(self, other):
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        return libmp.mpf_cmp(self._mpf, _to_mpf(other, self.prec + 20))

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self._mpf, self.prec))

    def __bool__(self):
        return self._mpf != libmp.fzero

    def is_zero(self) -> bool:
        return self._mpf == libmp.fzero

    def sign(self) -> int:
        return libmp.mpf_sign(self._mpf)

    def exponent(self) -> int:
        """e such that 2**(e-1) <= |x| < 2**e; very negative for zero."""
        if self.is_zero():
            return -(1 << 62)
        _, man, exp, bc = self._mpf
        return exp + bc

    def ulp(self) -> "BigFloat":
        """Unit in the last place at this value's precision."""
        return BigFloat._wrap(libmp.from_man_exp(1, self.exponent() - self.prec), self.prec)

    # conversion --------------------------------------------------------
    def __float__(self):
        return libmp.to_float(self._mpf)

    def __int__(self):
        return libmp.to_int(self._mpf)

    def to_fraction(self) -> Fraction:
        sign, man, exp, _ = self._mpf
        if not man:
            return Fraction(0)
        v = Fraction(man) * (Fraction(2) ** exp)
        return -v if sign else v

    def to_decimal(self, digits: int | None = None) -> str:
        """Decimal string with ``digits`` significant digits (default: all meaningful ones)."""
        if digits is None:
            digits = max(1, int(self.prec * math.log10(2)))
        return libmp.to_str(self._mpf, digits)

    def __repr__(self):
        return f"BigFloat('{self.to_decimal(min(30, int(self.prec * 0.30103)))}', prec={self.prec})"

    def __str__(self):
        return self.to_decimal()


def _as_big(x, prec: int) -> BigFloat:
    return x if isinstance(x, BigFloat) else BigFloat(x, prec)


def _prec_of(x, prec):
    if prec is not None:
        return prec
    if isinstance(x, BigFloat):
        return x.prec
    raise ValueError("precision required for non-BigFloat input")


def sqrt(x, prec: int | None = None) -> BigFloat:
    prec = _prec_of(x, prec)
    if x < 0:
        raise DomainError("sqrt of a negative number")
    return BigFloat._wrap(libmp.mpf_sqrt(_to_mpf(x, prec + 20), prec, RND), prec)


def exp(x, prec: int | None = None) -> BigFloat:
    prec = _prec_of(x, prec)
    return BigFloat._wrap(libmp.mpf_exp(_to_mpf(x, prec + 20), prec, RND), prec)


def ln(x, prec: int | None = None) -> BigFloat:
    prec = _prec_of(x, prec)
    if x <= 0:
        raise DomainError("ln of a non-positive number")
    return BigFloat._wrap(libmp.mpf_log(_to_mpf(x, prec + 20), prec, RND), prec)


def cos_pi(x, prec: int | None = None) -> BigFloat:
    """cos(pi * x), argument-reduced exactly so half-integer neighbourhoods stay accurate."""
    prec = _prec_of(x, prec)
    return BigFloat._wrap(libmp.mpf_cos_pi(_to_mpf(x, prec + 64), prec, RND), prec)


def sin_pi(x, prec: int | None = None) -> BigFloat:
    prec = _prec_of(x, prec)
    return BigFloat._wrap(libmp.mpf_sin_pi(_to_mpf(x, prec + 64), prec, RND), prec)


def power(base, exponent, prec: int | None = None) -> BigFloat:
    """base ** exponent for base > 0 (real exponent) or any base (integer exponent)."""
    if prec is None:
        prec = min(v.prec for v in (base, exponent) if isinstance(v, BigFloat))
    if isinstance(exponent, int) or (isinstance(exponent, Fraction) and exponent.denominator == 1):
        return BigFloat(base, prec + 20) ** int(exponent)
    if base <= 0:
        if base == 0 and exponent > 0:
            return BigFloat(0, prec)
        raise DomainError("real power of a non-positive base")
    wp = working_prec(prec)
    b = _as_big(base, wp).with_prec(wp)
    return exp(ln(b) * _as_big(exponent, wp), wp).with_prec(prec)


def arith(x: BigFloat, y, op: str) -> BigFloat:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "sqrt":
        return sqrt(x)
    if op == "pow":
        return power(x, y)
    raise ValueError(f"unknown op {op!r}")


def elementary(x: BigFloat, fn: str) -> BigFloat:
    return {"exp": exp, "ln": ln, "cos_pi_times": cos_pi}[fn](x)


# ---------------------------------------------------------------------------
# Bernoulli numbers and log-gamma

@lru_cache(maxsize=None)
def _tangent_numbers(count: int) -> Tuple[int, ...]:
    """T_1..T_count (tangent numbers) by the in-place integer recurrence."""
    t = [0] * (count + 1)
    if count >= 1:
        t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(t[1:])


def bernoulli_2n(count: int) -> Tuple[Fraction, ...]:
    """B_2, B_4, ..., B_{2*count} as exact fractions."""
    size = 1
    while size < count:
        size *= 2
    tangents = _tangent_numbers(size)
    out = []
    for n in range(1, count + 1):
        four = 4 ** n
        b = Fraction(2 * n * tangents[n - 1], four * (four - 1))
        out.append(b if n % 2 == 1 else -b)
    return tuple(out)


def _stirling_shift_target(wp: int) -> int:
    # Stirling terms bottom out near exp(-2*pi*y); y = wp/4 leaves ample margin.
    return wp // 4 + 8


def lngamma(x, prec: int | None = None) -> BigFloat:
    """ln Gamma(x) for x > 0.

    Shifts the argument upward with Gamma(x) = Gamma(x+r) / (x (x+1) ... (x+r-1))
    until the Stirling series reaches the working precision, then sums that
    series, stopping at the first term below 2**-wp (for real positive
    arguments the remainder is bounded by the first omitted term).
    """
    prec = _prec_of(x, prec)
    if x <= 0:
        raise DomainError("lngamma requires x > 0; use lngamma_signed for negative x")
    wp = working_prec(prec)
    xb = BigFloat(x, wp)
    if isinstance(x, int) and 0 < x <= 2 ** 12:
        return BigFloat(ln(BigFloat(math.factorial(x - 1), wp)), prec)

    y0 = _stirling_shift_target(wp)
    shift = max(0, math.ceil(y0 - float(xb)))
    y = xb + shift
    correction = None
    if shift:
        prod = xb
        for i in range(1, shift):
            prod = prod * (xb + i)
        correction = ln(prod)

    lny = ln(y)
    pi = constant("pi", wp)
    acc = (y - Fraction(1, 2)) * lny - y + ln(pi * 2) / 2
    inv_y = 1 / y
    inv_y2 = inv_y * inv_y
    ypow = inv_y
    threshold = libmp.from_man_exp(1, -wp)
    j = 0
    chunk = 32
    bern: Tuple[Fraction, ...] = ()
    prev_mag = None
    while True:
        j += 1
        if j > len(bern):
            bern = bernoulli_2n(len(bern) + chunk)
        b = bern[j - 1]
        term = ypow * b / (2 * j * (2 * j - 1))
        mag = libmp.mpf_abs(term._mpf)
        acc = acc + term
        if libmp.mpf_cmp(mag, threshold) < 0:
            break
        if prev_mag is not None and libmp.mpf_cmp(mag, prev_mag) > 0:
            raise PrecisionError("Stirling series diverged before reaching working precision")
        prev_mag = mag
        ypow = ypow * inv_y2
    if correction is not None:
        acc = acc - correction
    return BigFloat(acc, prec)


def lngamma_signed(x, prec: int | None = None) -> Tuple[BigFloat, int]:
    """(ln|Gamma(x)|, sign Gamma(x)) for any real x that is not a pole."""
    prec = _prec_of(x, prec)
    wp = working_prec(prec)
    xq = x.to_fraction() if isinstance(x, BigFloat) else Fraction(x)
    if xq > 0:
        return lngamma(x, prec), 1
    if xq.denominator == 1:
        raise GammaPoleError(f"Gamma has a pole at {xq}")
    xb = BigFloat(x, wp + 64)
    s = sin_pi(xb, wp)
    lg = lngamma(1 - xb, wp)
    val = ln(constant("pi", wp)) - ln(abs(s)) - lg
    # sign of Gamma(x) for x < 0 equals sign(sin(pi x)) since Gamma(1-x) > 0
    return BigFloat(val, prec), s.sign()


def gamma(x, prec: int | None = None) -> BigFloat:
    """Gamma(x) for all real non-pole x; negative arguments go through reflection."""
    prec = _prec_of(x, prec)
    xq = x.to_fraction() if isinstance(x, BigFloat) else Fraction(x)
    if xq.denominator == 1 and xq <= 0:
        raise GammaPoleError(f"Gamma has a pole at {xq}")
    if xq.denominator == 1 and xq <= 2 ** 12:
        return BigFloat(math.factorial(int(xq) - 1), prec)
    wp = working_prec(prec)
    lg, sgn = lngamma_signed(x, wp)
    v = exp(lg, wp)
    return BigFloat(v if sgn > 0 else -v, prec)


# ---------------------------------------------------------------------------
# constants by binary splitting

def _bsplit(a, b, p, q, lo, hi):
    """Binary splitting for sum_{n=lo}^{hi-1} a(n)/b(n) * prod_{j=lo}^{n} p(j)/q(j).

    Returns (P, Q, B, T) with partial sum T / (B * Q).
    """
    if hi - lo == 1:
        pn, qn, bn = p(lo), q(lo), b(lo)
        return pn, qn, bn, a(lo) * pn
    mid = (lo + hi) // 2
    P1, Q1, B1, T1 = _bsplit(a, b, p, q, lo, mid)
    P2, Q2, B2, T2 = _bsplit(a, b, p, q, mid, hi)
    return P1 * P2, Q1 * Q2, B1 * B2, B2 * Q2 * T1 + B1 * P1 * T2


def _bs_value(a, b, p, q, terms, prec) -> BigFloat:
    _, Q, B, T = _bsplit(a, b, p, q, 0, terms)
    return BigFloat._wrap(libmp.from_rational(T, B * Q, prec, RND), prec)


def _terms_for(bits_per_term: float, prec: int) -> int:
    return int((prec + 64) / bits_per_term) + 4


def _pi_chudnovsky(prec: int) -> BigFloat:
    C3 = 640320 ** 3
    n = _terms_for(47.11, prec)
    s = _bs_value(
        a=lambda k: 13591409 + 545140134 * k,
        b=lambda k: 1,
        p=lambda k: 1 if k == 0 else -(6 * k - 5) * (2 * k - 1) * (6 * k - 1),
        q=lambda k: 1 if k == 0 else k ** 3 * C3 // 24,
        terms=n, prec=prec + 32,
    )
    root = sqrt(BigFloat(10005, prec + 32))
    return BigFloat(426880 * root / s, prec)


def _arctan_inv_fixed(x: int, one: int) -> int:
    """arctan(1/x) * one by the alternating Gregory series in fixed point."""
    total = term = one // x
    x2 = x * x
    k = 1
    sign = -1
    while term:
        term //= x2
        total += sign * (term // (2 * k + 1))
        sign = -sign
        k += 1
    return total


def _pi_machin(prec: int) -> BigFloat:
    guard = 64
    one = 1 << (prec + guard)
    v = 4 * (4 * _arctan_inv_fixed(5, one) - _arctan_inv_fixed(239, one))
    return BigFloat._wrap(libmp.from_man_exp(v, -(prec + guard), prec, RND), prec)


def _atanh_inv_bs(m: int, prec: int) -> BigFloat:
    """atanh(1/m) = sum 1/((2k+1) m^(2k+1)) via binary splitting."""
    n = _terms_for(2 * math.log2(m), prec)
    return _bs_value(
        a=lambda k: 1,
        b=lambda k: 2 * k + 1,
        p=lambda k: 1,
        q=lambda k: m if k == 0 else m * m,
        terms=n, prec=prec + 32,
    )


def _ln2_atanh(prec: int) -> BigFloat:
    wp = prec + 32
    v = 18 * _atanh_inv_bs(26, wp) - 2 * _atanh_inv_bs(4801, wp) + 8 * _atanh_inv_bs(8749, wp)
    return BigFloat(v, prec)


def _ln2_fixed(prec: int) -> BigFloat:
    # ln 2 = 2 atanh(1/3), summed in fixed point
    guard = 64
    one = 1 << (prec + guard)
    term = one // 3
    total = 0
    k = 0
    while term:
        total += term // (2 * k + 1)
        term //= 9
        k += 1
    return BigFloat._wrap(libmp.from_man_exp(2 * total, -(prec + guard), prec, RND), prec)


def _catalan_ramanujan(prec: int) -> BigFloat:
    """G = (pi/8) ln(2+sqrt 3) + (3/8) sum 1/((2n+1)^2 binom(2n,n))."""
    wp = prec + 32
    n = _terms_for(2.0, wp)
    s = _bs_value(
        a=lambda k: 1,
        b=lambda k: (2 * k + 1) ** 2,
        p=lambda k: 1 if k == 0 else k,
        q=lambda k: 1 if k == 0 else 2 * (2 * k - 1),
        terms=n, prec=wp,
    )
    lnterm = ln(2 + sqrt(BigFloat(3, wp)))
    return BigFloat(constant("pi", wp) * lnterm / 8 + 3 * s / 8, prec)


def _catalan_lupas(prec: int) -> BigFloat:
    """G = (1/64) sum_{n>=1} (-1)^(n-1) 256^n (40n^2-24n+3) (2n)!^3 n!^2 / (n^3 (2n-1) (4n)!^2)."""
    wp = prec + 32
    n = _terms_for(2.0, wp)
    # ratio of c_n = 256^n (2n)!^3 n!^2 / (4n)!^2 between consecutive n
    s = _bs_value(
        a=lambda k: 40 * (k + 1) ** 2 - 24 * (k + 1) + 3,
        b=lambda k: (k + 1) ** 3 * (2 * k + 1),
        p=lambda k: (256 * 8 if k == 0 else -256 * (2 * k + 1) ** 3 * (2 * k + 2) ** 3 * (k + 1) ** 2),
        q=lambda k: (24 ** 2 if k == 0 else ((4 * k + 1) * (4 * k + 2) * (4 * k + 3) * (4 * k + 4)) ** 2),
        terms=n, prec=wp,
    )
    return BigFloat(s / 64, prec)


def _zeta3_amdeberhan(prec: int) -> BigFloat:
    """zeta(3) = 1/64 sum (-1)^n (205n^2+250n+77) n!^10 / (2n+1)!^5."""
    wp = prec + 32
    n = _terms_for(10.0, wp)
    s = _bs_value(
        a=lambda k: 205 * k * k + 250 * k + 77,
        b=lambda k: 1,
        p=lambda k: 1 if k == 0 else -(k ** 10),
        q=lambda k: 1 if k == 0 else ((2 * k) * (2 * k + 1)) ** 5,
        terms=n, prec=wp,
    )
    return BigFloat(s / 64, prec)


def _zeta3_apery(prec: int) -> BigFloat:
    """zeta(3) = 5/2 sum_{n>=1} (-1)^(n-1) / (n^3 binom(2n,n))."""
    wp = prec + 32
    n = _terms_for(2.0, wp)
    s = _bs_value(
        a=lambda k: 1,
        b=lambda k: (k + 1) ** 3,
        p=lambda k: 1 if k == 0 else -(k + 1),
        q=lambda k: 2 if k == 0 else 2 * (2 * k + 1),
        terms=n, prec=wp,
    )
    return BigFloat(5 * s / 2, prec)


def _sqrt_isqrt(m: int, prec: int) -> BigFloat:
    guard = 8
    s = math.isqrt(m << (2 * (prec + guard)))
    return BigFloat._wrap(libmp.from_man_exp(s, -(prec + guard), prec, RND), prec)


def _sqrt_newton(m: int, prec: int) -> BigFloat:
    wp = prec + 32
    x = BigFloat(math.sqrt(m), wp)
    bits = 50
    while bits < 2 * wp:
        x = (x + m / x) / 2
        bits *= 2
    return BigFloat(x, prec)


_ROUTES = {
    "pi": (_pi_chudnovsky, _pi_machin),
    "ln2": (_ln2_atanh, _ln2_fixed),
    "catalan": (_catalan_ramanujan, _catalan_lupas),
    "zeta3": (_zeta3_amdeberhan, _zeta3_apery),
    "sqrt2": (lambda p: _sqrt_isqrt(2, p), lambda p: _sqrt_newton(2, p)),
    "sqrt3": (lambda p: _sqrt_isqrt(3, p), lambda p: _sqrt_newton(3, p)),
}

CONSTANT_NAMES = tuple(_ROUTES)


@lru_cache(maxsize=256)
def constant(name: str, prec: int, route: int = 0) -> BigFloat:
    """Named constant to ``prec`` bits.  ``route`` selects the primary (0) or the independent check formula (1)."""
    try:
        fn = _ROUTES[name][route]
    except KeyError:
        raise ValueError(f"unknown constant {name!r}; expected one of {CONSTANT_NAMES}") from None
    return fn(prec)
