"""Numerical checks over the registry: identities, special values, derivatives, limits, WZ sums."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import closedform as cf
from .bigreal import BigFloat, GammaPoleError
from .certificates import BY_NAME
from .hyperterm import WZPair
from .registry import BOUNDARY_FORMS, IDENTITIES, IdentityDef, RhsVariant, default_grid, get, g_series
from .series import (DEFAULT_MAX_TERMS, AccelerationFailed, InadmissibleParameter, NonConvergentSeries,
                     SumResult, ToleranceUnachievable, sum_linear, sum_series)
from .wzsums import column_sum, extrapolate_columns, row_decay_exponent, row_partial, row_sum

DEFAULT_PREC = 256
DEFAULT_TOL = 1e-20
DERIVATIVE_TOL = 1e-8
DERIVATIVE_STEP = Fraction(1, 10 ** 10)
LIMIT_EXTRAPOLATION_TOL = 1e-6
LIMIT_INNER_TOL = 1e-20
TELESCOPE_TOL = 1e-25
AUX_TOL = 1e-25
BOUNDARY_KS = (64, 128, 256, 512, 1024)

# a sum requested at tol is asked for with this much headroom
SUM_HEADROOM = 100


class SingularParameter(ValueError):
    """A closed-form coefficient has a pole at this a."""


class StepTooLarge(ArithmeticError):
    pass


class ExtrapolationUnstable(ArithmeticError):
    pass


SKIPPABLE = (SingularParameter, InadmissibleParameter, NonConvergentSeries)


def digits_for(prec: int) -> int:
    return int(prec * math.log10(2))


@dataclass
class CheckReport:
    kind: str
    identity: Optional[int]
    variant: str
    a: str
    lhs: Optional[BigFloat]
    rhs: Optional[BigFloat]
    tol: float
    lhs_error: Optional[BigFloat] = None
    rhs_error: Optional[BigFloat] = None
    terms_used: int = 0
    verdict: str = "pass"
    note: str = ""
    seconds: float = 0.0
    prec: int = DEFAULT_PREC

    @property
    def difference(self) -> Optional[BigFloat]:
        if self.lhs is None or self.rhs is None:
            return None
        return abs(self.lhs - self.rhs)

    @property
    def relative_difference(self) -> Optional[BigFloat]:
        d = self.difference
        if d is None:
            return None
        scale = abs(self.lhs) if not self.lhs.is_zero() else abs(self.rhs)
        return d if scale.is_zero() else d / scale

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def decide(self) -> "CheckReport":
        rel = self.relative_difference
        self.verdict = "pass" if rel is not None and rel <= BigFloat(self.tol, 64) else "fail"
        return self

    def to_json(self, digits: Optional[int] = None) -> dict:
        digits = digits or digits_for(self.prec)

        def dec(x: Optional[BigFloat], d=digits):
            return None if x is None else x.to_decimal(d)

        return {
            "kind": self.kind,
            "identity": self.identity,
            "variant": self.variant,
            "a": self.a,
            "lhs": dec(self.lhs),
            "rhs": dec(self.rhs),
            "difference": dec(self.difference, 6),
            "relative_difference": dec(self.relative_difference, 6),
            "tol": repr(self.tol),
            "lhs_error": dec(self.lhs_error, 6),
            "rhs_error": dec(self.rhs_error, 6),
            "terms_used": self.terms_used,
            "verdict": self.verdict,
            "note": self.note,
            "precision_bits": self.prec,
            "digits": digits,
        }

    def line(self) -> str:
        rel = self.relative_difference
        rel_s = "-" if rel is None else f"{float(rel):.2e}"
        head = f"[{self.verdict.upper():7}] {self.kind:<11}"
        ident = f"id{self.identity}" if self.identity is not None else ""
        tail = f"  ({self.note})" if self.note else ""
        return f"{head} {ident:<5} {self.variant:<14} a={self.a:<8} rel.diff={rel_s:<9} tol={self.tol:.0e}{tail}"


def _a_text(a) -> str:
    return str(Fraction(a))


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        reps = rep if isinstance(rep, list) else [rep]
        for r in reps:
            r.seconds = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _ident(d) -> IdentityDef:
    return d if isinstance(d, IdentityDef) else get(int(d))


# ---------------------------------------------------------------------------
# evaluation

def eval_lhs(d, a, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL,
             max_terms: int = DEFAULT_MAX_TERMS) -> SumResult:
    """f(a) by direct summation."""
    d = _ident(d)
    return sum_linear(d.lhs, Fraction(a), prec, tol / SUM_HEADROOM, max_terms)


def eval_rhs(d, variant, a, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL,
             max_terms: int = DEFAULT_MAX_TERMS) -> SumResult:
    """Right-hand side ``variant`` (label or RhsVariant) at a.

    A term whose coefficient vanishes exactly at a contributes zero, provided
    its series still converges there.
    """
    d = _ident(d)
    v = variant if isinstance(variant, RhsVariant) else d.variant(variant)
    a = Fraction(a)
    wp = prec + 32
    for t in v.terms:
        reason = cf.singular_reason(t.coeff, a)
        if reason:
            raise SingularParameter(reason)
        if t.series is not None:
            t.series.check_admissible(a)
    total = SumResult(BigFloat(0, wp), BigFloat(0, 64), 0, "direct")
    for t in v.terms:
        if cf.exact_value(t.coeff, a) == 0:
            continue
        coeff = cf.evaluate(t.coeff, a, wp)
        if t.series is None:
            total = total + SumResult(coeff, BigFloat(0, 64), 0, "direct")
        else:
            s = sum_series(t.series, a, wp, tol / SUM_HEADROOM, max_terms)
            total = total + s.scaled(coeff)
    return SumResult(total.value.with_prec(prec), total.error_estimate, total.terms_used, total.method)


# ---------------------------------------------------------------------------
# identity checks

@_timed
def check_identity(d, variant, a, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL,
                   max_terms: int = DEFAULT_MAX_TERMS) -> CheckReport:
    """f(a) against one right-hand side; singular or inadmissible a gives a skipped report."""
    d = _ident(d)
    label = variant if isinstance(variant, str) else variant.label
    rep = CheckReport("identity", d.id, label, _a_text(a), None, None, tol, prec=prec)
    try:
        r = eval_rhs(d, variant, a, prec, tol, max_terms)
        l = eval_lhs(d, a, prec, tol, max_terms)
    except SKIPPABLE as exc:
        rep.verdict, rep.note = "skipped", str(exc)
        return rep
    except (AccelerationFailed, ToleranceUnachievable) as exc:
        rep.verdict, rep.note = "error", f"{type(exc).__name__}: {exc}"
        return rep
    rep.lhs, rep.rhs = l.value, r.value
    rep.lhs_error, rep.rhs_error = l.error_estimate, r.error_estimate
    rep.terms_used = l.terms_used + r.terms_used
    return rep.decide()


def check_grid(d, grid: Optional[Sequence] = None, variants: Optional[Sequence[str]] = None,
               prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS,
               stop_on_fail: bool = False) -> List[CheckReport]:
    d = _ident(d)
    grid = default_grid(d) if grid is None else [Fraction(x) for x in grid]
    labels = variants or d.variant_labels
    out = []
    for label in labels:
        for a in grid:
            rep = check_identity(d, label, a, prec, tol, max_terms)
            out.append(rep)
            if stop_on_fail and rep.verdict in ("fail", "error"):
                return out
    return out


@_timed
def check_composition(d, a, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL) -> CheckReport:
    """The ``expanded`` variant against ``via_g`` with g replaced by its closed form."""
    from .registry import compose

    d = _ident(d)
    composed = compose(d)
    rep = CheckReport("composition", d.id, composed.label, _a_text(a), None, None, tol, prec=prec)
    try:
        x = eval_rhs(d, composed, a, prec, tol)
        y = eval_rhs(d, "expanded", a, prec, tol)
    except SKIPPABLE as exc:
        rep.verdict, rep.note = "skipped", str(exc)
        return rep
    rep.lhs, rep.rhs = x.value, y.value
    return rep.decide()


@_timed
def check_special_values(d, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL) -> List[CheckReport]:
    d = _ident(d)
    out = []
    for x, expr in d.special_values:
        l = eval_lhs(d, x, prec, tol)
        ref = cf.evaluate(expr, x, prec)
        rep = CheckReport("special", d.id, cf.to_text(expr), _a_text(x), l.value, ref, tol,
                          lhs_error=l.error_estimate, terms_used=l.terms_used, prec=prec)
        out.append(rep.decide())
    return out


def _central(fvals, h: Fraction, order: int):
    """Central differences from fvals[j] = f(j*h), j in -2..2."""
    if order == 1:
        return (fvals[1] - fvals[-1]) / (2 * h)
    return (-fvals[2] + 16 * fvals[1] - 30 * fvals[0] + 16 * fvals[-1] - fvals[-2]) / (12 * h * h)


def derivative_prec(prec: int, h: Fraction) -> int:
    return max(400, prec + 4 * math.ceil(abs(math.log2(h))))


@_timed
def check_derivatives(d, order: int, h: Fraction = DERIVATIVE_STEP, prec: int = DEFAULT_PREC,
                      tol: Optional[float] = None) -> CheckReport:
    """f^(order)(0) against the tabulated closed form.

    Orders 1 and 2 use central differences (3- and 5-point).  The
    discretization error is estimated by repeating with step 2h; if that
    estimate exceeds tol the check raises StepTooLarge.
    """
    d = _ident(d)
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    tol = (DEFAULT_TOL if order == 0 else DERIVATIVE_TOL) if tol is None else tol
    ref = cf.evaluate(d.derivatives_at_0[order], 0, prec)
    label = ("f(0)", "f'(0)", "f''(0)")[order]
    if order == 0:
        l = eval_lhs(d, 0, prec, tol)
        return CheckReport("derivative", d.id, label, "0", l.value, ref, tol, lhs_error=l.error_estimate,
                           terms_used=l.terms_used, prec=prec).decide()
    h = Fraction(h)
    wp = derivative_prec(prec, h)
    inner_tol = 2.0 ** -(wp - 16)
    cache = {}

    def f(x):
        if x not in cache:
            cache[x] = sum_linear(d.lhs, x, wp, inner_tol).value
        return cache[x]

    def stencil(step):
        return _central({j: f(j * step) for j in (-2, -1, 0, 1, 2) if order == 2 or j in (-1, 1)}, step, order)

    val = stencil(h)
    coarse = stencil(2 * h)
    # Richardson error estimate: O(h^2) for order 1, O(h^4) for the 5-point stencil
    disc = abs(val - coarse) / (3 if order == 1 else 15)
    rep = CheckReport("derivative", d.id, label, "0", val.with_prec(prec), ref, tol, lhs_error=disc, prec=prec)
    rep.note = f"h={float(h):.0e}, {wp}-bit working precision"
    if disc > abs(ref) * BigFloat(tol, 64):
        raise StepTooLarge(f"discretization estimate {float(disc):.3g} exceeds tol for step {h}")
    return rep.decide()


def catalan_bracket(d, a: Fraction, prec: int) -> BigFloat:
    """[f(a) - c(a) g(a)] / a**3 with c the coefficient of g in the ``via_g`` variant."""
    d = _ident(d)
    g = g_series(d)
    v = d.variant("via_g")
    (g_term,) = [t for t in v.terms if t.series == g]
    wp = prec + 64
    f_val = sum_linear(d.lhs, a, wp, 2.0 ** -(wp - 8)).value
    g_val = sum_linear(g, a, wp, 2.0 ** -(wp - 8)).value
    c = cf.evaluate(g_term.coeff, a, wp)
    return ((f_val - c * g_val) / (BigFloat(a, wp) ** 3)).with_prec(prec)


def neville_at_zero(xs: Sequence[Fraction], ys: Sequence[BigFloat]) -> BigFloat:
    """Value at x = 0 of the interpolating polynomial through (xs, ys)."""
    p = list(ys)
    m = len(xs)
    for level in range(1, m):
        for i in range(m - level):
            xi, xj = xs[i], xs[i + level]
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj)
    return p[0]


@_timed
def check_catalan_limit(d, prec: int = DEFAULT_PREC, tol_extrapolation: float = LIMIT_EXTRAPOLATION_TOL,
                        tol_inner: float = LIMIT_INNER_TOL, js: Sequence[int] = tuple(range(4, 11))) -> List[CheckReport]:
    """Two routes to the a -> 0 limit: polynomial extrapolation from a = 2**-j, and the inner series at a = 0."""
    d = _ident(d)
    lim = d.catalan_limit
    if lim is None:
        raise ValueError(f"identity {d.id} has no registered limit")
    ref = cf.evaluate(lim.value, 0, prec)
    xs = [Fraction(1, 2 ** j) for j in js]
    ys = [catalan_bracket(d, x, prec) for x in xs]
    value = neville_at_zero(xs, ys)
    drop_one = neville_at_zero(xs[1:], ys[1:])
    spread = abs(value - drop_one)
    extra = CheckReport("limit", d.id, "extrapolation", "->0", value, ref, tol_extrapolation,
                        lhs_error=spread, terms_used=len(xs), prec=prec)
    extra.decide()
    if spread > abs(value) * BigFloat(tol_extrapolation, 64):
        extra.verdict = "error"
        extra.note = f"extrapolation unstable: spread {float(spread):.3g}"
    s = sum_series(lim.inner_series, 0, prec + 32, tol_inner / SUM_HEADROOM)
    inner = CheckReport("limit", d.id, "inner-series", "0", s.value * lim.inner_coeff, ref, tol_inner,
                        lhs_error=s.error_estimate * abs(lim.inner_coeff), terms_used=s.terms_used, prec=prec)
    return [extra, inner.decide()]


@_timed
def check_auxiliary(prec: int = DEFAULT_PREC, tol: float = AUX_TOL) -> CheckReport:
    """sum C(2n,n)^2 / (16^n (2n+1)) = 4G/pi, summed with the accelerator."""
    lim = IDENTITIES[8].catalan_limit
    s = sum_series(lim.inner_series, 0, prec + 32, tol / SUM_HEADROOM)
    ref = cf.evaluate(4 * cf.CATALAN / cf.PI, 0, prec)
    return CheckReport("auxiliary", None, "4G/pi", "-", s.value, ref, tol, lhs_error=s.error_estimate,
                       terms_used=s.terms_used, prec=prec).decide()


# ---------------------------------------------------------------------------
# WZ telescoping and boundary function

def _pair(p) -> WZPair:
    return p if isinstance(p, WZPair) else BY_NAME[p]


@_timed
def check_telescoping(pair, a, K: int, prec: int = DEFAULT_PREC, tol: float = TELESCOPE_TOL) -> CheckReport:
    """sum_n G_a(n,0) against sum_{k<K} F_a(0,k) + sum_n G_a(n,K)."""
    pair = _pair(pair)
    a = Fraction(a)
    if K < 0:
        raise ValueError("K must be non-negative")
    col_tol = tol / SUM_HEADROOM
    try:
        left = column_sum(pair, a, 0, prec, col_tol)
        right_col = column_sum(pair, a, K, prec, col_tol)
        right = row_partial(pair, a, K, prec) + right_col.value
    except GammaPoleError as exc:
        raise SingularParameter(f"{pair.name} is singular at a = {a}: {exc}") from None
    return CheckReport("telescoping", pair.identity, f"{pair.name} K={K}", _a_text(a), left.value, right, tol,
                       lhs_error=left.error_estimate, rhs_error=right_col.error_estimate,
                       terms_used=left.terms_used + right_col.terms_used, prec=prec).decide()


def boundary_columns(pair, a, prec: int, ks: Sequence[int] = BOUNDARY_KS) -> List[BigFloat]:
    return [column_sum(_pair(pair), Fraction(a), k, prec).value for k in ks]


@_timed
def check_boundary_limit(pair, a, prec: int = DEFAULT_PREC, tol_extrapolation: float = LIMIT_EXTRAPOLATION_TOL,
                         tol_finite: float = DEFAULT_TOL, ks: Sequence[int] = BOUNDARY_KS) -> List[CheckReport]:
    """S(a) = lim_k sum_n G_a(n,k) by k-extrapolation, and by sum_n G_a(n,0) - sum_k F_a(0,k).

    The column sums approach S like k**(c+1), c being the decay exponent of
    F_a(0,k); the fit uses exponents c+1, c, c-1, ...  When F_a(0, .) vanishes
    identically the columns are constant in k.
    """
    pair = _pair(pair)
    if pair.name not in BOUNDARY_FORMS:
        raise KeyError(f"no registered boundary function for {pair.name}")
    a = Fraction(a)
    reason = cf.singular_reason(BOUNDARY_FORMS[pair.name], a)
    if reason:
        raise SingularParameter(reason)
    ref = cf.evaluate(BOUNDARY_FORMS[pair.name], a, prec)
    try:
        row = row_sum(pair, a, prec + 32, tol_finite / SUM_HEADROOM)
        cols = boundary_columns(pair, a, prec + 32, ks)
    except GammaPoleError as exc:
        raise SingularParameter(f"{pair.name} is singular at a = {a}: {exc}") from None
    if row.value.is_zero() and row.method == "direct":
        value = cols[-1]
        spread = max(abs(x - value) for x in cols)
        note = "row vanishes; columns constant in k"
    else:
        exponent = Fraction(row_decay_exponent(pair, a)).limit_denominator(10 ** 6) + 1
        value, spread = extrapolate_columns(ks, cols, exponent, prec + 32)
        note = f"tail exponent {float(exponent):.4g}"
    extra = CheckReport("boundary", pair.identity, f"{pair.name} k-extrap", _a_text(a), value.with_prec(prec), ref,
                        tol_extrapolation, lhs_error=spread, note=note, prec=prec).decide()
    if spread > abs(value) * BigFloat(tol_extrapolation, 64):
        extra.verdict = "error"
        extra.note = f"extrapolation unstable: spread {float(spread):.3g}"
    g0 = column_sum(pair, a, 0, prec + 32, tol_finite / SUM_HEADROOM)
    finite = CheckReport("boundary", pair.identity, f"{pair.name} finite", _a_text(a),
                         (g0.value - row.value).with_prec(prec), ref, tol_finite,
                         lhs_error=g0.error_estimate + row.error_estimate,
                         terms_used=g0.terms_used + row.terms_used, prec=prec).decide()
    return [extra, finite]


# ---------------------------------------------------------------------------
# mutation smoke tests

def mutated_weights(d) -> List[Tuple[int, int, Tuple[int, ...]]]:
    """(index, delta, new coefficients) for every +-1 change of one weight coefficient."""
    d = _ident(d)
    out = []
    for i, c in enumerate(d.lhs_weight):
        for delta in (1, -1):
            w = list(d.lhs_weight)
            w[i] = c + delta
            out.append((i, delta, tuple(w)))
    return out


def mutation_detected(d, coeffs, prec: int = 128, tol: float = DEFAULT_TOL) -> bool:
    """True if some default-grid check fails once the left-side weight is replaced by ``coeffs``."""
    d = _ident(d).with_lhs_weight(coeffs)
    reports = check_grid(d, prec=prec, tol=tol, stop_on_fail=True)
    return any(r.verdict == "fail" for r in reports)
