"""Direct numeric evaluation of theta, eta and Eisenstein series at a real nome.

Every routine sums the defining series itself and stops once a proven tail
bound drops below 2^-(precision_bits + 8).  Results are BigReal values carrying
16 guard bits beyond the requested precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..numkernel import BigReal, bigreal_nth_root
from .lattice import as_rows, inverse_diagonal, is_positive_definite, theta_from_gram

_GUARD = 16


def _check_nome(q0: BigReal) -> None:
    if q0.sign() < 0:
        raise ValueError("nome must be non-negative")
    if q0 >= 1:
        raise ValueError("nome must satisfy 0 <= q0 < 1")


def _log2(q0: BigReal) -> float:
    """log2(q0), nudged towards zero so tail estimates stay conservative."""
    return q0.log().__float__() / math.log(2) * (1 - 1e-12)


def nome(n, precision_bits: int, inverse: bool = False) -> BigReal:
    """exp(-pi sqrt(n)), or exp(-pi / sqrt(n)) when ``inverse``."""
    prec = precision_bits + _GUARD
    root = BigReal.of(n, prec + 8).sqrt()
    pi = BigReal.pi(prec + 8)
    arg = pi / root if inverse else pi * root
    return (-arg).exp().with_precision(prec)


def theta_numeric(kind: int, q0: BigReal, precision_bits: int) -> BigReal:
    """theta_2, theta_3 or theta_4 at the real nome q0."""
    _check_nome(q0)
    prec = precision_bits + _GUARD
    q = q0.with_precision(prec)
    if q.sign() == 0:
        return BigReal.of(0 if kind == 2 else 1, prec)
    target = -(precision_bits + 8)
    lq = _log2(q)
    # tail after index K: sum_{n>K} q^(e(n)) <= q^(e(K+1)) / (1 - q)
    slack = -math.log2(1 - float(q)) + 2
    if kind == 2:
        total = BigReal.of(1, prec)
        n = 1
        while n * (n + 1) * lq + slack >= target:
            total = total + q ** (n * (n + 1))
            n += 1
        return total * 2 * bigreal_nth_root(q, 4, prec)
    if kind not in (3, 4):
        raise ValueError(f"unknown theta kind {kind}")
    total = BigReal.of(1, prec)
    n = 1
    while True:
        term = q ** (n * n) * 2
        total = total + term if kind == 3 or n % 2 == 0 else total - term
        if (n + 1) ** 2 * lq + slack + 1 < target:
            break
        n += 1
    return total


def euler_numeric(x: BigReal, precision_bits: int) -> BigReal:
    """prod_{n>=1} (1 - x^n).

    Truncating after K factors leaves a factor in [1 - x^(K+1)/(1-x), 1].
    """
    _check_nome(x)
    prec = precision_bits + _GUARD
    x = x.with_precision(prec)
    if x.sign() == 0:
        return BigReal.of(1, prec)
    lx = _log2(x)
    slack = -math.log2(1 - float(x)) + 2
    prod = BigReal.of(1, prec)
    power = BigReal.of(1, prec)
    n = 1
    while True:
        power = power * x
        prod = prod * (1 - power)
        if (n + 1) * lx + slack < -(precision_bits + 8):
            break
        n += 1
    return prod


def eta_numeric(q0: BigReal, precision_bits: int) -> BigReal:
    """eta(q0) = q0^(1/24) prod (1 - q0^n), the variable here being the argument itself."""
    prec = precision_bits + _GUARD
    return bigreal_nth_root(q0.with_precision(prec), 24, prec) * euler_numeric(q0, precision_bits)


def eisenstein_P_numeric(q0: BigReal, precision_bits: int) -> BigReal:
    """P(q0) = 1 - 24 sum n x^n / (1 - x^n) with x = q0^2.

    sum_{n>=M} n x^n/(1-x^n) <= M x^M / (1-x)^3.
    """
    _check_nome(q0)
    prec = precision_bits + _GUARD
    x = (q0 * q0).with_precision(prec)
    if x.sign() == 0:
        return BigReal.of(1, prec)
    lx = _log2(x)
    slack = -3 * math.log2(1 - float(x)) + 5 + 2
    total = BigReal.of(0, prec)
    power = BigReal.of(1, prec)
    n = 1
    while True:
        power = power * x
        total = total + power * n / (1 - power)
        m = n + 1
        if m * lx + math.log2(m) + slack < -(precision_bits + 8):
            break
        n += 1
    return 1 - total * 24


def _eigen_lower_bound(rows) -> Fraction:
    """A rigorous lower bound for the least eigenvalue: 1 / trace(M^-1)."""
    return 1 / sum(inverse_diagonal(rows))


def gram_theta_numeric(M, q0: BigReal, precision_bits: int) -> BigReal:
    """sum_{x in Z^n} q0^(x^T M x) for a positive definite integral Gram matrix.

    The representation count of m is at most (2 sqrt(m/lam) + 1)^n where lam
    bounds the least eigenvalue from below, which gives a geometric tail bound.
    """
    _check_nome(q0)
    rows = as_rows(M)
    if not is_positive_definite(rows):
        raise ValueError("Gram matrix is not positive definite")
    prec = precision_bits + _GUARD
    q = q0.with_precision(prec)
    if q.sign() == 0:
        return BigReal.of(1, prec)
    dim = len(rows)
    lam = float(_eigen_lower_bound(rows)) * (1 - 1e-9)
    lq = _log2(q)
    qf = float(q)

    def tail_log2(N: int) -> float:
        rho = ((N + 2) / (N + 1)) ** (dim / 2) * qf
        if rho >= 1:
            return math.inf
        c = dim * math.log2(2 * math.sqrt(N / lam) + 1)
        return (c + (dim / 2) * math.log2((N + 1) / N) + (N + 1) * lq
                - math.log2(1 - rho) + 1)

    N = max(4, int((precision_bits + 8) / -lq) + 1)
    while tail_log2(N) >= -(precision_bits + 8):
        N = int(N * 1.1) + 2
    counts = theta_from_gram(rows, N)
    acc = BigReal.of(0, prec)
    for m in range(N, -1, -1):
        acc = acc * q + int(counts.coeff(m))
    return acc


def numeric_eval(source, q0: BigReal, precision_bits: int) -> BigReal:
    """Evaluate a named generator at q0.

    ``source`` is one of "theta2", "theta3", "theta4", "P", "eta", or a Gram
    matrix (anything with rows of integers).
    """
    if isinstance(source, str):
        if source in ("theta2", "theta3", "theta4"):
            return theta_numeric(int(source[-1]), q0, precision_bits)
        if source == "P":
            return eisenstein_P_numeric(q0, precision_bits)
        if source == "eta":
            return eta_numeric(q0, precision_bits)
        raise ValueError(f"unknown generator {source!r}")
    return gram_theta_numeric(source, q0, precision_bits)
