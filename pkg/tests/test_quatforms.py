from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given, settings, strategies as st

from modpi.quatforms import (SPAN_WEIGHTS, GramMatrix, arith_invariants, class_number,
                             fricke_numeric_check, genus_x0, gram_matrices,
                             independence_check, independence_rank, load_gram_matrices,
                             span_identity_check, span_sides, theta_series_all, type_number)


def reduced_form_count(D):
    """Primitive reduced forms (a, b, c), b^2 - 4ac = D < 0, by direct search."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def primes(limit):
    return [p for p in range(2, limit) if all(p % d for d in range(2, isqrt(p) + 1))]


def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@pytest.mark.parametrize("p", [p for p in primes(500) if p % 4 == 3])
def test_class_number_matches_reduced_forms(p):
    assert class_number(-p) == reduced_form_count(-p)


def test_class_numbers_known():
    assert [class_number(-n) for n in (3, 4, 7, 8, 11, 19, 43, 67, 163)] == [1] * 9
    assert class_number(-23) == 3 and class_number(-47) == 5


@pytest.mark.parametrize("p", [p for p in primes(600) if p > 3])
def test_genus_matches_hurwitz_formula(p):
    nu2 = 1 + legendre(-1, p)
    nu3 = 1 + legendre(-3, p)
    g = 1 + Fraction(p + 1, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - 1
    assert genus_x0(p) == g


def test_arith_invariants_163():
    inv = arith_invariants(163)
    assert (inv.genus_g, inv.class_number_h, inv.type_number_T) == (13, 1, 8)
    assert type_number(163) == 8 == len(gram_matrices())


def test_type_numbers_small_primes():
    assert type_number(11) == 2 and type_number(37) == 2


def test_gram_data():
    p, mats = load_gram_matrices()
    assert p == 163 and len(mats) == 8
    assert all(M.determinant == 163 ** 2 for M in mats)
    minimal = [next(e for e, c in M.theta(20).items() if e > 0 and c) for M in mats]
    assert minimal == [2, 4, 6, 8, 10, 12, 12, 14]


def test_gram_validation():
    with pytest.raises(ValueError, match="symmetric"):
        GramMatrix(((2, 1, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)))
    with pytest.raises(ValueError, match="odd"):
        GramMatrix(((3, 1, 0, 0), (1, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)))
    with pytest.raises(ValueError, match="positive definite"):
        GramMatrix(((2, 3, 0, 0), (3, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)))


def test_bad_determinant_rejected(tmp_path):
    text = "p 163 count 1\nI1\n2 1 0 0\n1 2 0 0\n0 0 2 1\n0 0 1 2\n"
    (tmp_path / "gram_p163.txt").write_text(text)
    with pytest.raises(ValueError):
        load_gram_matrices(tmp_path)


def test_span_identity_400():
    r = span_identity_check(400)
    assert r.passed, r.detail


def test_span_first_coefficients():
    lhs, rhs = span_sides(12)
    assert lhs.coeff(0) == 162 and lhs.coeff(2) == 24
    assert lhs.first_difference(rhs, 12) is None


@pytest.mark.parametrize("index", range(8))
@pytest.mark.parametrize("delta", [-1, 1])
def test_span_perturbation_fails_early(index, delta):
    weights = list(SPAN_WEIGHTS)
    weights[index] += delta
    r = span_identity_check(10, tuple(weights))
    assert not r.passed
    assert int(r.detail.split("q^")[1].split(":")[0]) <= 10


def test_independence():
    assert independence_check(100).passed


def test_independence_rank_monotone():
    thetas = theta_series_all(40)
    ranks = [independence_rank(thetas, n) for n in range(0, 41, 2)]
    assert ranks == sorted(ranks) and ranks[-1] == 8


@pytest.mark.parametrize("t", [Fraction(1, 2), 2, Fraction(3, 2)])
def test_fricke_relation(t):
    r = fricke_numeric_check(gram_matrices()[0], t, 128, tol=1e-20)
    assert r.passed, r.detail


def test_fricke_fails_for_wrong_level():
    from modpi.quatforms import fricke_residual
    assert abs(fricke_residual(gram_matrices()[0], 2, 128, level=167)) > Fraction(1, 10 ** 6)
