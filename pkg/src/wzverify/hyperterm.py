"""Proper hypergeometric terms and WZ-pair certificates.

A term is ``const * base_n**n * base_k**k * prod Gamma(alpha*n + beta*k + gamma)**e``.
Its forward shift quotients are rational functions of (n, k), which is what
makes the WZ relation decidable by polynomial expansion.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .bigreal import BigFloat, GammaPoleError, exp, lngamma_signed, ln, working_prec
from .exact import K, N, BiPoly, RatFunc, ratfunc_is_zero


@dataclass(frozen=True)
class GammaFactor:
    alpha: int
    beta: int
    gamma: Fraction
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if (self.alpha, self.beta) == (0, 0):
            raise ValueError("constant gamma factor; fold it into const_factor")
        if self.gamma.denominator not in (1, 2):
            raise ValueError("gamma offset must be an integer or half-integer")
        if self.exponent == 0:
            raise ValueError("zero exponent")

    def argument(self) -> BiPoly:
        return self.alpha * N + self.beta * K + self.gamma

    def argument_at(self, n, k):
        return self.alpha * n + self.beta * k + self.gamma


def fact(alpha: int, beta: int = 0, offset=0, power: int = 1) -> GammaFactor:
    """(alpha*n + beta*k + offset)! ** power, i.e. Gamma(... + 1) ** power."""
    return GammaFactor(alpha, beta, Fraction(offset) + 1, power)


@dataclass(frozen=True)
class HyperTerm:
    const_factor: Fraction
    base_n: Fraction
    base_k: Fraction
    gammas: Tuple[GammaFactor, ...]

    def __post_init__(self):
        object.__setattr__(self, "const_factor", Fraction(self.const_factor))
        object.__setattr__(self, "base_n", Fraction(self.base_n))
        object.__setattr__(self, "base_k", Fraction(self.base_k))
        object.__setattr__(self, "gammas", tuple(self.gammas))
        if self.base_n == 0 or self.base_k == 0:
            raise ValueError("geometric bases must be nonzero")

    def scaled(self, c) -> "HyperTerm":
        return HyperTerm(self.const_factor * c, self.base_n, self.base_k, self.gammas)

    def to_json(self) -> dict:
        return {
            "const": str(self.const_factor),
            "base_n": str(self.base_n),
            "base_k": str(self.base_k),
            "gammas": [[g.alpha, g.beta, str(g.gamma), g.exponent] for g in self.gammas],
        }

    @classmethod
    def from_json(cls, d: dict) -> "HyperTerm":
        return cls(
            Fraction(d["const"]), Fraction(d["base_n"]), Fraction(d["base_k"]),
            tuple(GammaFactor(a, b, Fraction(g), e) for a, b, g, e in d["gammas"]),
        )


@dataclass(frozen=True)
class WZPair:
    """F = B * RF and G = B * RG, claimed to satisfy G(n,k+1)-G(n,k) = F(n+1,k)-F(n,k).

    ``proves`` names the right-hand-side variant of the identity that the
    telescoping argument with this pair establishes.
    """

    name: str
    proves: str
    B: HyperTerm
    RF: RatFunc = field(compare=False)
    RG: RatFunc = field(compare=False)
    identity: int = 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "identity": self.identity,
            "proves": self.proves,
            "B": self.B.to_json(),
            "RF": {"num": self.RF.num.to_table(), "den": self.RF.den.to_table()},
            "RG": {"num": self.RG.num.to_table(), "den": self.RG.den.to_table()},
        }

    @classmethod
    def from_json(cls, d: dict) -> "WZPair":
        def rf(x):
            return RatFunc(BiPoly.from_table(x["num"]), BiPoly.from_table(x["den"]))

        return cls(d["name"], d["proves"], HyperTerm.from_json(d["B"]), rf(d["RF"]), rf(d["RG"]), d["identity"])


# ---------------------------------------------------------------------------
# exact shift quotients and the WZ defect

def _rising_poly(x: BiPoly, m: int) -> BiPoly:
    out = BiPoly.const(1)
    for i in range(m):
        out = out * (x + i)
    return out


def _falling_poly(x: BiPoly, m: int) -> BiPoly:
    """(x-1)(x-2)...(x-m)."""
    out = BiPoly.const(1)
    for i in range(1, m + 1):
        out = out * (x - i)
    return out


def shift_ratio(term: HyperTerm, direction: str) -> RatFunc:
    """T(n+1,k)/T(n,k) or T(n,k+1)/T(n,k) as an exact rational function."""
    if direction not in ("n", "k"):
        raise ValueError("direction must be 'n' or 'k'")
    num = BiPoly.const(1)
    den = BiPoly.const(1)
    for g in term.gammas:
        step = g.alpha if direction == "n" else g.beta
        if step == 0:
            continue
        x = g.argument()
        # Gamma(x+step)/Gamma(x): rising product for step > 0, reciprocal falling product otherwise
        if step > 0:
            top, bot = _rising_poly(x, step), BiPoly.const(1)
        else:
            top, bot = BiPoly.const(1), _falling_poly(x, -step)
        if g.exponent < 0:
            top, bot = bot, top
        e = abs(g.exponent)
        num = num * top ** e
        den = den * bot ** e
    base = term.base_n if direction == "n" else term.base_k
    return RatFunc(num * base, den)


def wz_defect(pair: WZPair) -> RatFunc:
    """RG(n,k+1) rho_k - RG(n,k) - RF(n+1,k) rho_n + RF(n,k); identically zero for a valid pair."""
    rho_n = shift_ratio(pair.B, "n")
    rho_k = shift_ratio(pair.B, "k")
    g_up = pair.RG.shift(0, 1) * rho_k
    f_up = pair.RF.shift(1, 0) * rho_n
    return ((g_up - pair.RG) - f_up) + pair.RF


@dataclass
class WZVerdict:
    name: str
    valid: bool
    defect: Optional[RatFunc] = None
    seconds: float = 0.0

    def defect_text(self) -> str:
        return "" if self.defect is None else str(self.defect.num)


def check_wz(pair: WZPair) -> WZVerdict:
    t0 = time.perf_counter()
    d = wz_defect(pair)
    ok = ratfunc_is_zero(d)
    return WZVerdict(pair.name, ok, None if ok else d, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# exact lattice evaluation: Gamma at integers and half-integers

def exact_gamma(x: Fraction) -> Tuple[Fraction, int]:
    """Gamma(x) = value * sqrt(pi)**power for x an integer or half-integer."""
    x = Fraction(x)
    if x.denominator == 1:
        if x <= 0:
            raise GammaPoleError(f"Gamma pole at {x}")
        return Fraction(math.factorial(int(x) - 1)), 0
    if x.denominator != 2:
        raise ValueError("exact Gamma needs an integer or half-integer argument")
    m = int(x - Fraction(1, 2))
    if m >= 0:
        return Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m)), 1
    j = -m
    return Fraction((-4) ** j * math.factorial(j), math.factorial(2 * j)), 1


def eval_term_exact(term: HyperTerm, n: int, k: int) -> Tuple[Fraction, int]:
    """B(n, k) at lattice point, as (rational, power of sqrt(pi))."""
    val = term.const_factor * term.base_n ** n * term.base_k ** k
    pw = 0
    for g in term.gammas:
        v, p = exact_gamma(g.argument_at(n, k))
        val *= v ** g.exponent
        pw += p * g.exponent
    return val, pw


def raw_relation_residual(pair: WZPair, n: int, k: int) -> Optional[Fraction]:
    """G(n,k+1)-G(n,k)-F(n+1,k)+F(n,k) in units of sqrt(pi)**p, or None if undefined there."""
    try:
        parts = []
        for (dn, dk), R, sign in (((0, 1), pair.RG, 1), ((0, 0), pair.RG, -1),
                                  ((1, 0), pair.RF, -1), ((0, 0), pair.RF, 1)):
            b, p = eval_term_exact(pair.B, n + dn, k + dk)
            parts.append((sign * b * R.evaluate(n + dn, k + dk), p))
    except (GammaPoleError, ZeroDivisionError):
        return None
    powers = {p for v, p in parts if v != 0}
    if len(powers) > 1:
        raise ValueError("mixed sqrt(pi) powers; term is not balanced")
    return sum(v for v, _ in parts)


# ---------------------------------------------------------------------------
# real evaluation at shifted arguments

def _ln_abs_sign_power(base: Fraction, x: BigFloat, wp: int) -> Tuple[BigFloat, int]:
    """ln|base**x| and its sign; negative bases are only allowed for integer x."""
    if base > 0:
        return ln(BigFloat(base, wp)) * x, 1
    xi = x.to_fraction()
    if xi.denominator != 1:
        raise ValueError("negative geometric base at a non-integer exponent")
    return ln(BigFloat(-base, wp)) * x, -1 if xi.numerator % 2 else 1


def eval_term_real(term: HyperTerm, n, k: int, prec: int) -> BigFloat:
    """B(n, k) at real n (typically n = m + a) and integer k, via log-gamma.

    Negative gamma arguments go through reflection.  A negative ``base_n`` at
    non-integer n is read as ``sign(base_n)**floor(n) * |base_n|**n``, i.e. a
    (-1)^n factor acts on the integer part of the shifted index, which keeps
    F_a and G_a real.
    """
    guard = 64
    wp = working_prec(prec) + guard
    nb = n if isinstance(n, BigFloat) else BigFloat(n, wp)
    nb = nb.with_prec(wp + 32)
    nq = nb.to_fraction()
    # magnitude of ln-gamma sums: extra bits so the exponentiated value keeps prec bits
    scale = sum(abs(g.exponent) * (abs(g.alpha) * abs(float(nq)) + abs(g.beta) * k + 2) for g in term.gammas)
    wp += int(math.log2(scale * math.log(scale + 2) + 2)) + 4
    total = BigFloat(0, wp)
    sign = 1 if term.const_factor > 0 else -1
    if term.const_factor == 0:
        return BigFloat(0, prec)
    total = total + ln(BigFloat(abs(term.const_factor), wp))
    for base, x in ((term.base_n, nb), (term.base_k, BigFloat(k, wp))):
        if base == 1:
            continue
        if base < 0 and x.to_fraction().denominator != 1:
            floor_part = math.floor(x.to_fraction())
            if floor_part % 2:
                sign = -sign
            total = total + ln(BigFloat(-base, wp)) * x
            continue
        lv, s = _ln_abs_sign_power(base, x, wp)
        total = total + lv
        sign *= s
    for g in term.gammas:
        arg = g.alpha * nb + (g.beta * k + g.gamma)
        lg, s = lngamma_signed(arg.with_prec(wp + 32), wp)
        total = total + lg * g.exponent
        if s < 0 and g.exponent % 2:
            sign = -sign
    v = exp(total, wp)
    return BigFloat(-v if sign < 0 else v, prec)
