"""Exact q-expansions of the classical building blocks.

The formal variable is q = exp(pi*i*tau) throughout: theta_3 = sum q^(n^2),
P(q) = 1 - 24 sum sigma_1(m) q^(2m), and eta(tau) = q^(1/12) prod (1 - q^(2n)).
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import FracPrefixSeries, LaurentSeries, series_inverse, series_pow


def divisor_sums(n: int, k: int = 1) -> list[int]:
    """sigma_k(m) for 0 <= m <= n (sigma_k(0) = 0), by sieving."""
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        dk = d ** k
        for m in range(d, n + 1, d):
            out[m] += dk
    return out


def theta_series(kind: int, order: int):
    """theta_2, theta_3 or theta_4 through q^order.

    theta_2 has exponents (n + 1/2)^2 and comes back as a FracPrefixSeries
    q^(1/4) * 2 * sum_{n>=0} q^(n(n+1)).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if kind == 2:
        terms = [0] * (order + 1)
        n = 0
        while n * (n + 1) <= order:
            terms[n * (n + 1)] = 2
            n += 1
        return FracPrefixSeries(Fraction(1, 4), LaurentSeries(0, terms, order + 1))
    if kind not in (3, 4):
        raise ValueError(f"unknown theta kind {kind}")
    terms = [0] * (order + 1)
    terms[0] = 1
    n = 1
    while n * n <= order:
        terms[n * n] = 2 if kind == 3 or n % 2 == 0 else -2
        n += 1
    return LaurentSeries(0, terms, order + 1)


def eisenstein_P(order: int) -> LaurentSeries:
    """P(q) = 1 - 24 sum_m sigma_1(m) q^(2m) through q^order."""
    if order < 2:
        raise ValueError("order must be >= 2")
    sig = divisor_sums(order // 2)
    terms = [0] * (order + 1)
    terms[0] = 1
    for m in range(1, order // 2 + 1):
        terms[2 * m] = -24 * sig[m]
    return LaurentSeries(0, terms, order + 1)


def euler_product(order: int, step: int = 1) -> LaurentSeries:
    """prod_{n>=1} (1 - q^(step*n)) through q^order, via the pentagonal number theorem."""
    terms = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            e = step * kk * (3 * kk - 1) // 2
            if e <= order:
                terms[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return LaurentSeries(0, terms, order + 1)


def dedekind_eta(order: int, argument_power: int = 1) -> FracPrefixSeries:
    """eta(q^a) = q^(a/24) prod (1 - q^(a n)), the body known through q^order."""
    return FracPrefixSeries(Fraction(argument_power, 24), euler_product(order, argument_power))


def eta4_quotient(p: int, order: int) -> LaurentSeries:
    """varphi = p^2 eta^4(p tau)/eta^4(tau) + eta^4(tau)/eta^4(p tau) through q^order.

    With q = exp(pi i tau) the quotient eta^4(tau)/eta^4(p tau) has valuation
    (1 - p)/3, an even integer exactly when p = 7 (mod 12).
    """
    if p % 12 != 7:
        raise ValueError(f"p = {p} is not 7 mod 12; the eta quotient is not Fricke invariant")
    pole = (p - 1) // 3
    rel = order + 1 + pole
    small = dedekind_eta(rel, 2) ** 4          # eta^4(tau)
    large = dedekind_eta(rel, 2 * p) ** 4      # eta^4(p tau)
    down = (small / large).to_laurent()
    up = (large / small).to_laurent()
    return (down + up * (p * p)).truncate(order + 1)


def theta_power(kind: int, power: int, order: int) -> LaurentSeries:
    """theta_kind^power as a Laurent series; for kind 2 the power must be divisible by 4."""
    if kind == 2:
        if power % 4:
            raise ValueError("theta_2 powers need a multiple of 4 for integral exponents")
        return (theta_series(2, order) ** power).to_laurent()
    return series_pow(theta_series(kind, order), power)


def modulus_square_w(order: int) -> LaurentSeries:
    """w = (2 k k')^2 = 4 theta_2^4 theta_4^4 / theta_3^8 as a series in q."""
    t2 = theta_power(2, 4, order)
    t4 = theta_power(4, 4, order)
    t3 = theta_power(3, 8, order)
    return (t2 * t4 * series_inverse(t3)).scale(4)
