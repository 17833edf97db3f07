from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from modpi.numkernel import BigReal
from modpi.pi_engine import (LEAF, SplitNode, _chud_pqa, _int_to_decimal, agree_digits,
                             binary_split, chudnovsky_partial, chudnovsky_pi,
                             decimal_digits, format_digits, general_163_exact_partial,
                             general_series_pi, machin_pi, merge, naive_split, pi_check,
                             ramanujan_pi, ramanujan_series_check, series_equivalence_check,
                             series_spec)

PI_50 = "3.14159265358979323846264338327950288419716939937510"


def chud_term(m):
    return Fraction((545140134 * m + 13591409) * (-1) ** m * factorial(6 * m),
                    factorial(3 * m) * factorial(m) ** 3 * 640320 ** (3 * m))


def test_binary_split_equals_naive_50_terms():
    for b in range(1, 51):
        assert binary_split(0, b) == naive_split(0, b)


def test_split_above_leaf_threshold():
    n = 4 * LEAF + 7
    assert binary_split(0, n) == naive_split(0, n)


@given(st.integers(0, 60), st.integers(0, 60), st.integers(0, 60))
@settings(max_examples=50, deadline=None)
def test_merge_law(a, b, c):
    a, b, c = sorted((a, b, c))
    left, right = naive_split(a, b), naive_split(b, c)
    assert merge(left, right) == naive_split(a, c)


def test_leaf_matches_direct_terms():
    for m in range(12):
        node = naive_split(0, m + 1)
        assert Fraction(node.T, node.Q) == sum(chud_term(i) for i in range(m + 1))


def test_partial_sums():
    assert chudnovsky_partial(1) == 13591409
    assert chudnovsky_partial(5) == sum(chud_term(m) for m in range(5))
    p, q, a = _chud_pqa(1)
    assert Fraction(p * a, q) == chud_term(1)


def test_single_term_thirteen_digits():
    assert decimal_digits(chudnovsky_pi(13, terms=1), 13) == PI_50[:14]


@pytest.mark.parametrize("digits", [10, 100, 1000, 10000])
def test_chudnovsky_agrees_with_machin(digits):
    assert agree_digits(chudnovsky_pi(digits), machin_pi(digits), digits)


def test_digits_per_term():
    # the first term gives 13.2 digits; every further term adds at least 14
    errors = []
    with mpmath.workdps(320):
        for m in range(1, 21):
            S = chudnovsky_partial(m)
            approx = mpmath.mpf(640320) ** 1.5 / (12 * mpmath.mpf(S.numerator) / S.denominator)
            errors.append(abs(approx - mpmath.pi))
    for m, e in enumerate(errors, 1):
        assert e < mpmath.mpf(10) ** (1 - 14 * m)
    for a, b in zip(errors, errors[1:]):
        assert b < a * mpmath.mpf(10) ** -14


def test_machin_classical_value():
    assert decimal_digits(machin_pi(10), 10) == "3.141592653"
    assert decimal_digits(machin_pi(51), 51) == PI_50
    assert decimal_digits(chudnovsky_pi(50), 50) == decimal_digits(machin_pi(50), 50)


def test_machin_matches_mpmath():
    with mpmath.workdps(2010):
        ref = mpmath.nstr(mpmath.pi, 2005, strip_zeros=False)
    assert decimal_digits(machin_pi(2000), 2000) == ref[:2001]


def test_bad_digit_counts():
    with pytest.raises(ValueError):
        chudnovsky_pi(0)
    with pytest.raises(ValueError):
        machin_pi(0)
    with pytest.raises(ValueError):
        ramanujan_series_check("rampi1", 201)
    with pytest.raises(ValueError):
        general_series_pi(23, 10)


@given(st.integers(0, 10 ** 4000))
@settings(max_examples=25, deadline=None)
def test_int_to_decimal(n):
    assert _int_to_decimal(n).lstrip("0") == str(n).lstrip("0") or n == 0


def test_format_digits():
    text = format_digits(PI_50)
    lines = text.split("\n")
    assert lines[0] == "3." and lines[1] == PI_50[2:] and len(lines[1]) == 50
    long = format_digits("3." + "1" * 120).split("\n")
    assert [len(x) for x in long[1:]] == [50, 50, 20]


def test_ramanujan_single_term():
    value = 9801 / (2 * BigReal.of(2, 64).sqrt() * 1103)
    assert decimal_digits(value, 7)[:7] == "3.14159"
    assert decimal_digits(ramanujan_pi("rampi1", 6), 6) == "3.14159"


@pytest.mark.parametrize("which", ["rampi1", "rampi2"])
@pytest.mark.parametrize("digits", [20, 100, 200])
def test_ramanujan_series(which, digits):
    r = ramanujan_series_check(which, digits)
    assert r.passed, r.detail


@pytest.mark.parametrize("n,digits", [(19, 30), (43, 30), (67, 30), (163, 60), (19, 60)])
def test_general_series(n, digits):
    r = general_series_pi(n, digits)
    assert r.passed, r.detail


def test_general_series_wrong_g2_fails(monkeypatch):
    import modpi.pi_engine as pe
    table = dict(pe.CM_DATA)
    table[67] = (table[67][0], -75)
    monkeypatch.setattr(pe, "CM_DATA", table)
    assert not general_series_pi(67, 30).passed


def test_series_spec_163_constants():
    spec = series_spec(163, 60)
    assert abs(spec.c_value - Fraction(-1, 53360 ** 3)) < Fraction(1, 10 ** 70)
    root = BigReal.of(640320, 400).sqrt() * 640320
    assert abs(spec.linear_a - 12 * 545140134 / root) < Fraction(1, 10 ** 60)
    assert abs(spec.linear_b - 12 * 13591409 / root) < Fraction(1, 10 ** 60)


def test_general_163_is_chudnovsky_term_for_term():
    for k in range(1, 51):
        assert general_163_exact_partial(k) == chudnovsky_partial(k)
    assert series_equivalence_check(50).passed


def test_pi_check_reports():
    r, value = pi_check(500)
    assert r.passed and r.name == "pi_500"
    r, _ = pi_check(300, "machin")
    assert r.passed


@pytest.mark.slow
def test_hundred_thousand_digits():
    assert agree_digits(chudnovsky_pi(100000), machin_pi(100000), 100000)
