from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from modpi.numkernel import (BigReal, IntPoly, alg_eval, alg_inverse, bigreal_nth_root,
                             count_roots, iroot, isolate_real_roots, number_field,
                             poly_eval_alg, refine_interval, refine_root)
from modpi.singular import CM_DATA, MINPOLYS, singular_context

big = st.integers(min_value=-(10 ** 40), max_value=10 ** 40)
nonzero = big.filter(bool)


@given(big, nonzero, big, nonzero)
def test_rational_sum_is_exact(a, b, c, d):
    s = Fraction(a, b) + Fraction(c, d)
    assert s * b * d == a * d + c * b


# BigReal


def test_bigreal_pi_matches_mpmath():
    with mpmath.workprec(300):
        man, exp = (+mpmath.pi).man_exp
    ref = Fraction(man) * Fraction(2) ** exp
    assert abs(BigReal.pi(256).to_fraction() - ref) < Fraction(1, 2 ** 250)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000), st.integers(2, 7))
@settings(max_examples=40, deadline=None)
def test_nth_root_inverts_power(x, n):
    r = bigreal_nth_root(BigReal.of(x, 200), n, 200)
    assert abs((r ** n).to_fraction() - x) < Fraction(1, 2 ** 180) * max(1, x)


@given(st.integers(0, 10 ** 60), st.integers(2, 6))
def test_iroot_is_floor(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


@given(st.fractions(min_value=Fraction(1, 100), max_value=4))
@settings(max_examples=40, deadline=None)
def test_precision_doubling_agrees(x):
    # double-precision re-run validation
    P = 100
    lo = (BigReal.of(x, P).sqrt().log() + BigReal.of(x, P).exp()).to_fraction()
    hi = (BigReal.of(x, 2 * P).sqrt().log() + BigReal.of(x, 2 * P).exp()).to_fraction()
    assert abs(lo - hi) <= Fraction(2 ** 4, 2 ** P) * max(1, abs(hi))


def test_bigreal_comparisons_and_arithmetic():
    a, b = BigReal.of(Fraction(1, 3), 64), BigReal.of(2, 64)
    assert a < b and b > a and -a < 0
    assert abs(a * 3 - 1) < Fraction(1, 2 ** 60)
    assert float(b / a) == pytest.approx(6.0)


# polynomials


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6, unique=True))
@settings(max_examples=50, deadline=None)
def test_isolation_finds_planted_integer_roots(roots):
    p = IntPoly([1])
    for r in roots:
        p = p * IntPoly([-r, 1])
    found = isolate_real_roots(p)
    assert len(found) == len(roots)
    for (lo, hi), r in zip(found, sorted(roots)):
        assert lo < r < hi
        assert p.sign_at(lo) * p.sign_at(hi) < 0
        assert count_roots(p, lo, hi) == 1


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
@settings(max_examples=60, deadline=None)
def test_isolation_matches_mpmath_root_count(coeffs):
    p = IntPoly(coeffs)
    try:
        found = isolate_real_roots(p, Fraction(1, 2 ** 20))
    except ValueError:
        return  # repeated root, rejected by design
    roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    real = sorted(float(mpmath.re(z)) for z in roots if abs(mpmath.im(z)) < 1e-12)
    assert len(found) == len(real)
    for (lo, hi), r in zip(found, real):
        assert float(lo) - 1e-9 <= r <= float(hi) + 1e-9


def test_repeated_root_rejected():
    with pytest.raises(ValueError, match="squarefree"):
        isolate_real_roots(IntPoly([1, -2, 1]))


def test_refine_root_sqrt2():
    p = IntPoly([-2, 0, 1])
    (lo, hi), = [iv for iv in isolate_real_roots(p) if iv[1] > 0]
    lo, hi = refine_interval(p, (lo, hi), Fraction(1, 2 ** 200))
    assert hi - lo <= Fraction(1, 2 ** 200)
    r = refine_root(p, (lo, hi), 300)
    assert abs(r * r - 2) < Fraction(1, 2 ** 290)


# number fields


@st.composite
def field_elements(draw, n=163):
    ctx = singular_context(n)
    c = [draw(st.fractions(max_denominator=1000, min_value=-50, max_value=50)) for _ in range(3)]
    return ctx.element(*c)


@given(field_elements(), field_elements(), field_elements())
@settings(max_examples=40, deadline=None)
def test_field_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(field_elements())
@settings(max_examples=100, deadline=None)
def test_field_inverse(a):
    if a.is_zero():
        return
    assert alg_inverse(a) * a == 1


@given(field_elements())
@settings(max_examples=20, deadline=None)
def test_alg_eval_matches_float_evaluation(a):
    u = float(alg_eval(singular_context(163).generator, 64))
    expected = sum(float(c) * u ** i for i, c in enumerate(a.coords))
    assert float(alg_eval(a, 80)) == pytest.approx(expected, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("modulus", [CM_DATA[n][0] for n in CM_DATA] + list(MINPOLYS.values()),
                         ids=[f"s{n}" for n in CM_DATA] + list(MINPOLYS))
def test_generator_is_root_of_every_modulus(modulus):
    m = IntPoly(modulus)
    roots = isolate_real_roots(m)
    for iv in roots:
        u = number_field(m, iv)
        assert poly_eval_alg(m, u).is_zero()


def test_field_mismatch_rejected():
    a = singular_context(19).generator
    b = singular_context(43).generator
    with pytest.raises(ValueError):
        a + b


def test_designated_root_must_be_isolated():
    with pytest.raises(ValueError):
        number_field(IntPoly([-2, 0, 1]))
