from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from wzverify import closedform as cf
from wzverify.closedform import (CATALAN, LN2, PI, SQRT3, ZETA3, Add, CosPi, IPow, Lit, Ln, Mul, PochA, Pow,
                                 SingularPoint, a, affine)

P = 256


def mp(x):
    return mpmath.mpf(x.to_decimal(100))


def check(expr, a_val, ref, tol=1e-70):
    with mpmath.workprec(400):
        v = mp(cf.evaluate(expr, a_val, P))
        assert abs(v - ref) <= tol * abs(ref)


def test_constants_and_parameter():
    with mpmath.workprec(400):
        check(4 / PI, 0, 4 / mpmath.pi)
        check(7 * ZETA3, 0, 7 * mpmath.zeta(3))
        check(SQRT3 * PI, 0, mpmath.sqrt(3) * mpmath.pi)
        check(a * a - 3 * a + Fraction(1, 7), Fraction(2, 9), mpmath.mpf(4) / 81 - mpmath.mpf(2) / 3 + mpmath.mpf(1) / 7)


def test_cosine_prefactor():
    e = 4 * Pow(Fraction(4), affine()) / PI / CosPi(affine()) ** 2
    with mpmath.workprec(400):
        x = mpmath.mpf(3) / 10
        check(e, Fraction(3, 10), 4 * mpmath.power(4, x) / mpmath.pi / mpmath.cos(mpmath.pi * x) ** 2)


def test_pochhammer_of_a():
    e = PochA(Fraction(1)) ** 3 / PochA(Fraction(1, 2)) ** 3
    with mpmath.workprec(400):
        x = mpmath.mpf(3) / 10
        check(e, Fraction(3, 10), (mpmath.rf(1, x) / mpmath.rf(0.5, x)) ** 3)
    assert cf.exact_value(PochA(Fraction(1, 2)), 3) == Fraction(15, 8)


def test_logs():
    with mpmath.workprec(400):
        check(Ln(Fraction(3)) + 4 * LN2, 0, mpmath.log(3) + 4 * mpmath.log(2))


def test_singular_points():
    e = 8 * a ** 2 / (2 * a - 1)
    assert cf.is_singular(e, Fraction(1, 2))
    assert not cf.is_singular(e, Fraction(3, 10))
    assert "vanishes" in cf.singular_reason(4 / PI / CosPi(affine()) ** 2, Fraction(3, 2))
    assert cf.is_singular(1 / CosPi(affine(2)), Fraction(1, 4))
    assert cf.is_singular(PochA(Fraction(1, 2)), Fraction(-5, 2))
    assert not cf.is_singular(PochA(Fraction(1, 2)), Fraction(-2))
    with pytest.raises(SingularPoint):
        cf.evaluate(1 / (a - Fraction(1, 3)), Fraction(1, 3), 64)


def test_exact_values():
    assert cf.exact_value(CosPi(affine()), Fraction(1, 2)) == 0
    assert cf.exact_value(CosPi(affine()), 3) == -1
    assert cf.exact_value(Pow(Fraction(4), affine()), 2) == 16
    assert cf.exact_value(Pow(Fraction(4), affine()), Fraction(1, 2)) is None
    assert cf.exact_value(a * PI, 0) == 0
    assert cf.exact_value(PI * a + 1, 1) is None


def test_text_rendering():
    assert cf.to_text(4 / PI / CosPi(affine()) ** 2) == "4/π/(cos(π(a))^2)"
    assert cf.to_text(7 * ZETA3) == "7·ζ(3)"
    assert cf.to_text(4 * CATALAN) == "4·G"
    assert cf.to_text(2 * (a - 1)) == "2·(a - 1)"


def test_rejects_floats():
    with pytest.raises(TypeError):
        a * 0.5


def test_json_rejects_unknown_op():
    with pytest.raises(ValueError):
        cf.from_json({"op": "sinh"})


leaves = st.one_of(
    st.fractions(min_value=-20, max_value=20, max_denominator=50).map(Lit),
    st.sampled_from([a, PI, LN2, CATALAN, ZETA3, SQRT3]),
    st.fractions(min_value=1, max_value=8, max_denominator=4).map(lambda b: PochA(b)),
    st.fractions(min_value=1, max_value=64, max_denominator=1).map(lambda b: Pow(b, affine(1, 0))),
    st.integers(1, 3).map(lambda s: CosPi(affine(s, Fraction(1, 7)))),
    st.sampled_from([Ln(Fraction(2)), Ln(Fraction(3))]),
)
exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda t: Add(t)),
        st.tuples(kids, kids).map(lambda t: Mul(t)),
        st.tuples(kids, kids).map(lambda t: t[0] - t[1]),
        st.tuples(kids, kids).map(lambda t: t[0] / t[1]),
        st.tuples(kids, st.integers(-3, 3)).map(lambda t: IPow(t[0], t[1])),
    ),
    max_leaves=8,
)


@settings(max_examples=80, deadline=None)
@given(exprs)
def test_json_round_trip(e):
    assert cf.from_json(cf.to_json(e)) == e


@settings(max_examples=40, deadline=None)
@given(exprs)
def test_evaluation_is_deterministic(e):
    x = Fraction(3, 10)
    if cf.is_singular(e, x):
        return
    try:
        v1 = cf.evaluate(e, x, 128)
    except (SingularPoint, ZeroDivisionError):
        return
    assert cf.evaluate(e, x, 128) == v1
