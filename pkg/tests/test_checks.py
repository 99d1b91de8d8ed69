from fractions import Fraction

import pytest

from wzverify import checks as ck
from wzverify import closedform as cf
from wzverify.bigreal import BigFloat, constant
from wzverify.registry import IDENTITIES

h = Fraction(1, 2)
P = 256


def const(name):
    return constant(name, P)


def rel(x, y):
    return abs(float((x - y) / y))


@pytest.mark.parametrize("i, expected", [
    (1, lambda: const("pi") ** 2 / 2),
    (2, lambda: 8 * const("pi") ** 2 / 3),
    (6, lambda: const("sqrt3") * const("pi")),
])
def test_left_side_special_points(i, expected):
    assert rel(ck.eval_lhs(i, h).value, expected()) < 1e-22


def test_right_side_examples():
    assert rel(ck.eval_rhs(1, "series", h).value, const("pi") ** 2 / 2) < 1e-22
    r = ck.eval_rhs(1, "closed", 0)
    assert rel(r.value, 4 / const("pi")) < 1e-30
    assert r.terms_used == 0
    assert rel(ck.eval_rhs(8, "series", h).value, 7 * const("zeta3")) < 1e-22


def test_singular_variant_raises():
    with pytest.raises(ck.SingularParameter):
        ck.eval_rhs(1, "closed", h)


def test_identity_passes_at_interior_point():
    rep = ck.check_identity(1, "series", Fraction(3, 10))
    assert rep.verdict == "pass"
    assert float(rep.relative_difference) < 1e-20
    assert rep.seconds > 0


def test_ninth_identity_at_half():
    rep = ck.check_identity(9, "series", h)
    assert rep.passed
    assert rel(rep.lhs, 256 * const("zeta3")) < 1e-22


def test_perturbed_weight_fails():
    d = IDENTITIES[1].with_lhs_weight((2, 6))
    rep = ck.check_identity(d, "series", Fraction(3, 10))
    assert rep.verdict == "fail"


def test_singular_point_is_skipped_with_note():
    rep = ck.check_identity(1, "closed", h)
    assert rep.verdict == "skipped"
    assert "vanishes" in rep.note


def test_verdict_rule():
    rep = ck.CheckReport("identity", 1, "x", "0", BigFloat(1, 64), BigFloat(1 + 2 ** -40, 64), 1e-12)
    assert rep.decide().verdict == "pass"
    rep.tol = 1e-13
    assert rep.decide().verdict == "fail"
    blank = ck.CheckReport("identity", 1, "x", "0", None, None, 1.0)
    assert blank.decide().verdict == "fail"


def test_report_json_uses_decimal_strings():
    rep = ck.check_identity(2, "closed", Fraction(1, 5))
    doc = rep.to_json()
    assert isinstance(doc["lhs"], str) and len(doc["lhs"].replace("-", "").replace(".", "")) >= 70
    assert doc["precision_bits"] == 256 and doc["digits"] == 77
    assert doc["tol"] == "1e-20"
    assert rep.line().startswith("[PASS")


def test_verdict_stable_under_refinement():
    a = Fraction(2, 5)
    base = ck.check_identity(4, "closed", a)
    fine = ck.check_identity(4, "closed", a, prec=2 * P, tol=ck.DEFAULT_TOL / 2)
    assert base.verdict == fine.verdict == "pass"


def test_variants_agree_with_each_other():
    a = Fraction(3, 10)
    vals = [ck.eval_rhs(8, v, a) for v in IDENTITIES[8].variant_labels]
    for v in vals[1:]:
        assert abs(v.value - vals[0].value) <= abs(vals[0].value) * 1e-20 + v.error_estimate + vals[0].error_estimate


def test_grid_skips_only_singular_points():
    reps = ck.check_grid(1)
    assert {r.verdict for r in reps} == {"pass", "skipped"}
    assert [r.a for r in reps if r.verdict == "skipped"] == ["1/2"]


def test_composition():
    assert ck.check_composition(9, Fraction(1, 5)).passed


@pytest.mark.parametrize("i", [3, 4, 10])
def test_special_values(i):
    (rep,) = ck.check_special_values(i)
    assert rep.passed and rep.a == "1/2"


def test_derivatives_first_identity():
    r0 = ck.check_derivatives(1, 0)
    assert r0.passed and rel(r0.rhs, 4 / const("pi")) < 1e-60
    r1 = ck.check_derivatives(1, 1)
    assert r1.passed and rel(r1.rhs, 32 * const("ln2") / const("pi")) < 1e-60
    assert "400-bit" in r1.note


def test_second_derivative_eighth_identity():
    rep = ck.check_derivatives(8, 2)
    pi, l2 = const("pi"), const("ln2")
    assert rel(rep.rhs, 64 / (3 * pi ** 2) * (54 * l2 ** 2 - pi ** 2)) < 1e-60
    assert rep.passed


def test_large_step_is_refused():
    with pytest.raises(ck.StepTooLarge):
        ck.check_derivatives(1, 1, h=Fraction(1, 10))
    with pytest.raises(ValueError):
        ck.check_derivatives(1, 3)


def test_derivative_precision_floor():
    assert ck.derivative_prec(256, ck.DERIVATIVE_STEP) >= 400


def test_neville_reproduces_polynomials():
    xs = [Fraction(1, 2 ** j) for j in range(1, 6)]
    ys = [BigFloat(3 - 2 * x + 5 * x ** 3, 128) for x in xs]
    assert abs(ck.neville_at_zero(xs, ys) - 3) < BigFloat(2, 64) ** -100


def test_catalan_limit_eighth_identity():
    extra, inner = ck.check_catalan_limit(8)
    ref = -128 * const("catalan") / const("pi")
    assert extra.passed and inner.passed
    assert rel(inner.lhs, ref) < 1e-20
    assert extra.rhs.to_decimal(6) == "-37.3198"


def test_catalan_limit_needs_registration():
    with pytest.raises(ValueError):
        ck.check_catalan_limit(1)


def test_auxiliary_sum():
    rep = ck.check_auxiliary()
    assert rep.passed and float(rep.relative_difference) < 1e-25


@pytest.mark.parametrize("K", [0, 1, 5])
def test_telescoping_first_pair(K):
    rep = ck.check_telescoping("id1A", Fraction(3, 10), K)
    assert rep.passed


def test_telescoping_exposes_invalid_certificate():
    assert ck.check_telescoping("id4A", Fraction(3, 10), 3).verdict == "fail"


def test_telescoping_rejects_negative_depth():
    with pytest.raises(ValueError):
        ck.check_telescoping("id1A", Fraction(3, 10), -1)


def test_telescoping_at_gamma_pole_is_singular():
    with pytest.raises(ck.SingularParameter):
        ck.check_telescoping("id1B", h, 2)


def test_boundary_quarter():
    extra, finite = ck.check_boundary_limit("id1B", Fraction(1, 4))
    assert rel(extra.rhs, 8 / const("pi")) < 1e-60
    assert extra.passed and finite.passed


def test_boundary_requires_registered_form():
    with pytest.raises(KeyError):
        ck.check_boundary_limit("id2B", Fraction(1, 4))


def test_boundary_singular_point():
    with pytest.raises(ck.SingularParameter):
        ck.check_boundary_limit("id1B", h)


def test_mutations_enumerated():
    muts = ck.mutated_weights(8)
    assert len(muts) == 6
    assert (0, 1, (2, 8, 20)) in muts


def test_single_mutation_detected():
    assert ck.mutation_detected(6, (1, 9))
    assert not ck.mutation_detected(6, IDENTITIES[6].lhs_weight)


def test_closed_form_coefficients_evaluate():
    v = IDENTITIES[2].variant("closed")
    for t in v.terms:
        cf.evaluate(t.coeff, Fraction(1, 5), 128)
