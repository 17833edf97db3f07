from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from modpi.numkernel import IntPoly, alg_eval, poly_eval_alg
from modpi.qseries import nome
from modpi.singular import (CM_DATA, MINPOLYS, OutsideDomain, constant_recovery_check,
                            discriminant3, g2_chain, g2_check, g2_exact, hypergeometric_3f2,
                            numeric_check, numeric_residual, singular_context,
                            span_combination, v_c_residual, values_from_ratios,
                            verify_f_value, verify_table_consistency, verify_v_c_identity)



def test_g2_is_rational_integer():
    assert g2_exact() == -1448
    g2, notes = g2_chain()
    assert g2 == -1448 and notes
    assert g2_check().passed


def test_g2_coordinates():
    # the chain's result lives in Q(u) with power-basis coordinates (-1448, 0, 0)
    ctx = singular_context(163)
    assert ctx.element(-1448) .coords == (-1448, 0, 0)


def test_constant_recovery():
    r = constant_recovery_check()
    assert r.passed, r.detail
    assert 2 * 545140134 - 1448 * 640320 == 12 * 13591409


def test_v_c_identity_exact():
    good, literal = v_c_residual()
    assert good.is_zero()
    assert not literal.is_zero()
    assert verify_v_c_identity().passed


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=500))
@settings(max_examples=60, deadline=None)
def test_two_v_squared_is_one_minus_c(k):
    # 2v = (k'^2 - k^2)(1 + 8w)/(1 - 4w)^(3/2) squares to 1 - c
    k2 = k * k
    w = 4 * k2 * (1 - k2)
    if w == Fraction(1, 4):
        return
    two_v_sq = ((1 - 2 * k2) * (1 + 8 * w)) ** 2 / (1 - 4 * w) ** 3
    c = -27 * w / (1 - 4 * w) ** 3
    assert two_v_sq == 1 - c


def test_table_consistency_all_pass():
    reports = verify_table_consistency(128)
    assert len(reports) == 15
    bad = [r.line() for r in reports if not r.passed]
    assert not bad


@pytest.mark.parametrize("name", list(MINPOLYS))
def test_table3_values_are_roots(name):
    v = values_from_ratios()[name]
    assert poly_eval_alg(IntPoly(MINPOLYS[name]), v).is_zero()


def test_f_value():
    r = verify_f_value(128)
    assert r.passed, r.detail
    ctx = singular_context(163)
    f = ctx.element(11680, 1372, 64, 4389)
    assert float(alg_eval(f, 80)) == pytest.approx(2.66197984566450866315)


def test_span_combination_times_norm_factor():
    u = singular_context(163).generator
    A = span_combination()
    assert A * (1 + u ** 3) == (u * u * 40 + u * 748992 + 8003) / 209


def test_discriminant_of_cubic():
    assert discriminant3(IntPoly([-2, 0, 0, 1])) == -108  # x^3 - 2
    assert discriminant3(IntPoly(MINPOLYS["f"])) < 0


@pytest.mark.parametrize("n", sorted(CM_DATA))
def test_table1_real_root_matches_theta_value(n):
    q = mpmath.exp(-mpmath.pi * mpmath.sqrt(n))
    k = mpmath.jtheta(2, 0, q) ** 2 / mpmath.jtheta(3, 0, q) ** 2
    kp = mpmath.jtheta(4, 0, q) ** 2 / mpmath.jtheta(3, 0, q) ** 2
    s = mpmath.cbrt(2 * k * kp)
    u = float(alg_eval(singular_context(n).generator, 100))
    assert u == pytest.approx(float(s), rel=1e-14)


NUMERIC = [
    ("cvalue", None, 1e-30),
    ("minpoly_s", 19, 1e-30),
    ("minpoly_s", 43, 1e-30),
    ("minpoly_s", 67, 1e-30),
    ("minpoly_s", 163, 1e-30),
    ("lemma2", 163, 1e-20),
    ("lemma2", 19, 1e-20),
    ("etatranslog", 163, 1e-25),
    ("etatranslog", 43, 1e-25),
    ("kexp", "0.05", 1e-25),
    ("clausen", "0.0001", 1e-25),
    ("G0_const", None, 1e-30),
]


@pytest.mark.parametrize("name,arg,tol", NUMERIC, ids=[f"{n}-{a}" for n, a, _ in NUMERIC])
def test_numeric_identities(name, arg, tol):
    r = numeric_check(name, 128, arg, tol)
    assert r.passed, r.detail


@pytest.mark.parametrize("name,arg", [("cvalue", None), ("lemma2", 163), ("etatranslog", 163),
                                      ("kexp", "0.05"), ("clausen", "0.0001"),
                                      ("G0_const", None)])
def test_residual_shrinks_with_precision(name, arg):
    lo = numeric_residual(name, 128, arg).to_fraction()
    hi = numeric_residual(name, 256, arg).to_fraction()
    assert lo < Fraction(1, 2 ** 100)
    assert hi == 0 or lo == 0 or hi * 2 ** 64 <= lo or hi < Fraction(1, 2 ** 230)


def test_clausen_at_singular_nome():
    r = numeric_check("clausen", 128, nome(163, 192), 1e-25)
    assert r.passed, r.detail


def test_clausen_outside_domain_is_reported():
    r = numeric_check("clausen", 128, "0.05", 1e-25)
    assert not r.passed and "outside convergence domain" in r.detail


def test_hypergeometric_matches_mpmath():
    from modpi.numkernel import BigReal
    c = Fraction(-3, 10)
    got = hypergeometric_3f2(BigReal.of(c, 200), 180).to_fraction()
    ref = mpmath.hyp3f2(mpmath.mpf(1) / 6, mpmath.mpf(5) / 6, mpmath.mpf(1) / 2, 1, 1,
                        mpmath.mpf(-3) / 10)
    assert abs(mpmath.mpf(got.numerator) / got.denominator - ref) < mpmath.mpf(2) ** -170
    with pytest.raises(OutsideDomain):
        hypergeometric_3f2(BigReal.of(Fraction(3, 2), 64), 64)


def test_unknown_numeric_check():
    with pytest.raises(ValueError):
        numeric_check("nope")
