"""Quaternary Gram matrices for level 163: invariants, thetas, span and Fricke checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .linalg import bareiss_rank
from .numkernel import BigReal
from .paths import data_file
from .qseries import (LaurentSeries, eisenstein_P, gram_theta_numeric, is_positive_definite,
                      leading_minors, theta_from_gram)
from .report import CheckReport, make_report, stopwatch

GRAM_FILE = "gram_p163.txt"
SPAN_WEIGHTS = (6, 12, 24, 24, 24, 24, 24, 24)


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple
    label: str = ""

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError(f"{self.label or 'Gram matrix'} must be 4x4")
        if any(rows[i][j] != rows[j][i] for i in range(4) for j in range(4)):
            raise ValueError(f"{self.label or 'Gram matrix'} is not symmetric")
        if any(rows[i][i] % 2 for i in range(4)):
            raise ValueError(f"{self.label or 'Gram matrix'} has an odd diagonal entry")
        if not is_positive_definite(rows):
            raise ValueError(f"{self.label or 'Gram matrix'} is not positive definite")

    @property
    def determinant(self) -> int:
        return int(leading_minors(self.entries)[-1])

    def theta(self, order: int) -> LaurentSeries:
        return theta_from_gram(self.entries, order)


@dataclass(frozen=True)
class ArithInvariants:
    p: int
    genus_g: int
    t_p: int
    class_number_h: int
    type_number_T: int


def load_gram_matrices(data=None) -> tuple[int, list[GramMatrix]]:
    """Parse the Gram data file: ``p <p> count <k>`` then ``I <i>`` plus four rows per matrix."""
    lines = [ln.split() for ln in data_file(GRAM_FILE, data).read_text().splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    head = lines[0]
    if len(head) != 4 or head[0] != "p" or head[2] != "count":
        raise ValueError(f"bad Gram header: {' '.join(head)}")
    p, count = int(head[1]), int(head[3])
    mats = []
    pos = 1
    for k in range(count):
        tag = lines[pos]
        if tag[0] != "I" or int(tag[1]) != k + 1:
            raise ValueError(f"expected 'I {k + 1}', found {' '.join(tag)}")
        rows = [[int(x) for x in lines[pos + 1 + r]] for r in range(4)]
        g = GramMatrix(rows, f"I{k + 1}")
        if g.determinant != p * p:
            raise ValueError(f"I{k + 1}: determinant {g.determinant} != {p}^2")
        mats.append(g)
        pos += 5
    if pos != len(lines):
        raise ValueError("trailing content after the last Gram matrix")
    return p, mats


@lru_cache(maxsize=4)
def _default_grams(data=None) -> tuple[GramMatrix, ...]:
    return tuple(load_gram_matrices(data)[1])


def gram_matrices(data=None) -> tuple[GramMatrix, ...]:
    return _default_grams(None if data is None else str(data))


def class_number(D: int) -> int:
    """Number of reduced primitive forms ax^2 + bxy + cy^2 of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                h += 1
        a += 1
    return h


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, isqrt(p) + 1))


def genus_x0(p: int) -> int:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    g = (p + 1) // 12
    return g - 1 if p % 12 == 1 else g


def t_p(p: int) -> int:
    if p % 4 == 1:
        return 1
    if p % 8 == 3:
        return -1
    if p % 8 == 7:
        return 0
    raise ValueError(f"no type-number case for p = {p}")


def field_class_number(p: int) -> int:
    """Class number of Q(sqrt(-p)) for an odd prime p."""
    return class_number(-p if p % 4 == 3 else -4 * p)


def arith_invariants(p: int) -> ArithInvariants:
    g = genus_x0(p)
    t = t_p(p)
    h = field_class_number(p)
    T = Fraction(1 + g, 2) + Fraction(h, 2) * Fraction(2) ** (-t)
    if T.denominator != 1:
        raise ArithmeticError(f"type number formula gives non-integral {T} for p = {p}")
    return ArithInvariants(p, g, t, h, int(T))


def type_number(p: int) -> int:
    return arith_invariants(p).type_number_T


def coefficient_rows(series, order: int) -> list[list[int]]:
    rows = []
    for s in series:
        if s.trunc <= order:
            raise ValueError(f"series known only below q^{s.trunc}, need q^{order}")
        den = s.denominator
        rows.append([int(s.coeff(e) * den) for e in range(0, order + 1)])
    return rows


def independence_rank(series, order: int) -> int:
    """Rank over Q of the coefficient matrix through q^order (Bareiss)."""
    return bareiss_rank(coefficient_rows(series, order))


def theta_series_all(order: int, data=None) -> list[LaurentSeries]:
    return [g.theta(order) for g in gram_matrices(data)]


def independence_check(order: int = 100, data=None) -> CheckReport:
    with stopwatch() as ms:
        thetas = theta_series_all(order, data)
        r = independence_rank(thetas, order)
        full = r == len(thetas)
        detail = f"rank {r} of {len(thetas)} through q^{order}"
        if not full:
            detail += " (lower bound; raise the order to certify)"
        return make_report("theta_independence", full, detail, ms())


def span_sides(order: int, weights=SPAN_WEIGHTS, n: int = 163, data=None):
    """(n P(q^n) - P(q), sum of weighted Gram thetas), both through q^order."""
    thetas = theta_series_all(order, data)
    if len(weights) != len(thetas):
        raise ValueError("one weight per theta series expected")
    P_small = eisenstein_P(max(order // n + 2, 2)).subs_power(n).truncate(order + 1)
    lhs = P_small.scale(n) - eisenstein_P(max(order, 2)).truncate(order + 1)
    rhs = LaurentSeries.zero(order + 1)
    for w, t in zip(weights, thetas):
        rhs = rhs + t.scale(w)
    return lhs, rhs


def span_identity_check(order: int = 400, weights=SPAN_WEIGHTS, data=None) -> CheckReport:
    if order < 10:
        raise ValueError("order must be >= 10")
    with stopwatch() as ms:
        lhs, rhs = span_sides(order, weights, data=data)
        bad = lhs.first_difference(rhs, order)
        if bad is not None:
            return make_report("span_p163", False,
                               f"first difference at q^{bad}: {lhs.coeff(bad)} vs {rhs.coeff(bad)}",
                               ms())
        return make_report("span_p163", True, f"coefficients agree through q^{order}", ms())


def fricke_residual(M, t, precision_bits: int, level: int = 163) -> BigReal:
    """theta_M(exp(-pi/(t sqrt l))) - t^2 theta_M(exp(-pi t/sqrt l))."""
    rows = getattr(M, "entries", M)
    prec = precision_bits + 32
    t = BigReal.of(t, prec)
    if t.sign() <= 0:
        raise ValueError("t must be positive")
    root = BigReal.of(level, prec).sqrt()
    pi = BigReal.pi(prec)
    q_left = (-(pi / (t * root))).exp()
    q_right = (-(pi * t / root)).exp()
    left = gram_theta_numeric(rows, q_left, prec)
    right = gram_theta_numeric(rows, q_right, prec)
    return left - t * t * right


def fricke_numeric_check(M, t, precision_bits: int = 128, tol=None) -> CheckReport:
    """Pass when the Fricke residual is below ``tol`` (default 2^-(precision_bits/2))."""
    with stopwatch() as ms:
        res = abs(fricke_residual(M, t, precision_bits))
        bound = Fraction(1, 1 << (precision_bits // 2)) if tol is None else Fraction(tol)
        label = getattr(M, "label", "") or "M"
        ok = res < bound
        return make_report(f"fricke_{label}_t{t}", ok,
                           f"residual {float(res):.3e} (tolerance {float(bound):.1e})", ms())
