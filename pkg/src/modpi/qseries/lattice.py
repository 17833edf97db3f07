"""Theta series of positive definite integral quadratic forms by exact enumeration."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .laurent import LaurentSeries

Matrix = Sequence[Sequence[int]]

_cache: dict[tuple, list[int]] = {}
_cache_lock = threading.Lock()


def as_rows(M) -> tuple[tuple[int, ...], ...]:
    rows = getattr(M, "entries", M)
    return tuple(tuple(int(x) for x in row) for row in rows)


def leading_minors(M: Matrix) -> list[Fraction]:
    """Leading principal minors, by exact elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    minors = []
    det = Fraction(1)
    for k in range(n):
        if A[k][k] == 0:
            # a zero pivot means this minor vanishes; positive definiteness already fails
            minors.append(Fraction(0))
            minors.extend([Fraction(0)] * (n - k - 1))
            return minors
        det *= A[k][k]
        minors.append(det)
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return minors


def is_positive_definite(M: Matrix) -> bool:
    return all(m > 0 for m in leading_minors(M))


def inverse_diagonal(M: Matrix) -> list[Fraction]:
    """Diagonal of M^-1, by Gauss-Jordan over the rationals."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for k in range(n):
        piv = next(i for i in range(k, n) if A[i][k] != 0)
        A[k], A[piv] = A[piv], A[k]
        inv = 1 / A[k][k]
        A[k] = [x * inv for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return [A[i][n + i] for i in range(n)]


def _enumerate_counts(M: tuple[tuple[int, ...], ...], bound: int) -> list[int]:
    """counts[v] = #{x in Z^n : x^T M x = v} for 0 <= v <= bound."""
    n = len(M)
    diag = inverse_diagonal(M)
    # Solve for the coordinate with the widest range; loop over the others.
    last = max(range(n), key=lambda i: diag[i])
    perm = [i for i in range(n) if i != last] + [last]
    P = [[M[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    dg = [diag[perm[i]] for i in range(n)]
    radius = [isqrt(int(bound * d)) + 1 for d in dg]
    counts = [0] * (bound + 1)
    a = P[n - 1][n - 1]
    two_a = 2 * a
    outer = n - 1

    def rec(depth, xs):
        if depth == outer:
            # value = a t^2 + b t + c in the solved coordinate t
            b = 2 * sum(P[i][outer] * xs[i] for i in range(outer))
            c = sum(P[i][j] * xs[i] * xs[j] for i in range(outer) for j in range(outer))
            disc = b * b - 4 * a * (c - bound)
            if disc < 0:
                return
            s = isqrt(disc)
            lo = -((b + s) // two_a)
            hi = (s - b) // two_a
            for t in range(lo, hi + 1):
                counts[a * t * t + b * t + c] += 1
            return
        r = radius[depth]
        for x in range(-r, r + 1):
            xs.append(x)
            rec(depth + 1, xs)
            xs.pop()

    rec(0, [])
    return counts


def theta_from_gram(M, order: int) -> LaurentSeries:
    """sum_{x in Z^n} q^(x^T M x) through q^order, by exact lattice-point counting.

    M must be symmetric, integral and positive definite.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    rows = as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows) or any(rows[i][j] != rows[j][i]
                                              for i in range(n) for j in range(n)):
        raise ValueError("Gram matrix must be square and symmetric")
    if not is_positive_definite(rows):
        raise ValueError("Gram matrix is not positive definite")
    with _cache_lock:
        cached = _cache.get(rows)
    if cached is None or len(cached) <= order:
        cached = _enumerate_counts(rows, order)
        with _cache_lock:
            prev = _cache.get(rows)
            if prev is None or len(prev) < len(cached):
                _cache[rows] = cached
    return LaurentSeries(0, cached[:order + 1], order + 1)
