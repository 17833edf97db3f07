"""Series for 1/pi: Chudnovsky by binary splitting, Ramanujan's two series, the
general singular-modulus series, and an arctan oracle independent of all of them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import libmp

from .numkernel import BigReal, bigreal_nth_root, refine_root
from .report import CheckReport, make_report, stopwatch
from .singular import CHUD_A, CHUD_B, CHUD_C, CM_DATA, singular_context

LEAF = 32
_C3_24 = CHUD_C ** 3 // 24
BITS_PER_DIGIT = math.log2(10)


def _bits(digits: int) -> int:
    return int(digits * BITS_PER_DIGIT) + 64


# binary splitting

@dataclass(frozen=True)
class SplitNode:
    P: int
    Q: int
    T: int


def _chud_pqa(m: int) -> tuple[int, int, int]:
    if m == 0:
        return 1, 1, CHUD_A
    p = -(6 * m - 5) * (2 * m - 1) * (6 * m - 1)
    return p, m * m * m * _C3_24, CHUD_A + CHUD_B * m


def _leaf(a: int, b: int) -> SplitNode:
    P, Q, T = 1, 1, 0
    for m in range(a, b):
        p, q, c = _chud_pqa(m)
        # append one term: T/Q + (P p c)/(Q q)
        T = T * q + P * p * c
        P *= p
        Q *= q
    return SplitNode(P, Q, T)


def merge(left: SplitNode, right: SplitNode) -> SplitNode:
    return SplitNode(left.P * right.P, left.Q * right.Q, left.T * right.Q + left.P * right.T)


def binary_split(a: int, b: int) -> SplitNode:
    """Terms a <= m < b; sum_{m} a_m prod_{i<=m} p_i/q_i = T/Q over the range."""
    if b - a < LEAF:
        return _leaf(a, b)
    mid = (a + b) // 2
    return merge(binary_split(a, mid), binary_split(mid, b))


def naive_split(a: int, b: int) -> SplitNode:
    """Term-by-term accumulation, for checking the splitting."""
    return _leaf(a, b)


def chudnovsky_terms(digits: int) -> int:
    return -(-digits // 14) + 2


def chudnovsky_partial(terms: int) -> Fraction:
    """sum_{m<terms} (13591409 + 545140134 m)(-1)^m (6m)! / ((3m)!(m!)^3 640320^(3m))."""
    node = binary_split(0, terms)
    return Fraction(node.T, node.Q)


def chudnovsky_pi(digits: int, terms: int | None = None) -> BigReal:
    """pi = 640320^(3/2) / (12 S)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    n = chudnovsky_terms(digits) if terms is None else terms
    node = binary_split(0, n)
    prec = _bits(digits) + 32
    root = bigreal_nth_root(BigReal.of(CHUD_C, prec), 2, prec)
    num = BigReal.of(node.Q * CHUD_C, prec) * root
    return num / BigReal.of(12 * node.T, prec)


# oracle

def _arctan_inv(x: int, unity: int) -> tuple[int, int]:
    """unity * arctan(1/x) in fixed point, and the number of terms used.

    After N terms the alternating tail is below 1/((2N+1) x^(2N+1)); each floor
    division adds at most one unit of error.
    """
    total = 0
    power = unity // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= x2
        k += 1
    return total, k


def machin_pi(digits: int) -> BigReal:
    """16 arctan(1/5) - 4 arctan(1/239) in integer fixed point with guard digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    guard = 12
    unity = 10 ** (digits + guard)
    a, n5 = _arctan_inv(5, unity)
    b, n239 = _arctan_inv(239, unity)
    # the loop stops once unity // x^(2N+1) == 0, so the tail is below one unit
    assert 5 ** (2 * n5 + 1) > unity and 239 ** (2 * n239 + 1) > unity
    value = 16 * a - 4 * b
    err_units = 16 * (n5 + 2) + 4 * (n239 + 2)
    if err_units * 1000 > 10 ** guard:
        raise ArithmeticError("guard digits do not cover the accumulated rounding")
    return BigReal.of(Fraction(value, unity), _bits(digits) + 32)


# digit strings

def _int_to_decimal(n: int, width: int | None = None) -> str:
    """Decimal digits of a non-negative integer, divide and conquer (no str() size limit)."""
    if width is None:
        width = max(1, int(n.bit_length() * 0.30103) + 1)
    if width <= 2000:
        s = str(n)
        return s.zfill(width) if width >= len(s) else s
    half = width // 2
    hi, lo = divmod(n, 10 ** half)
    return _int_to_decimal(hi, width - half) + _int_to_decimal(lo, half)


def decimal_digits(x: BigReal, digits: int) -> str:
    """x truncated to ``digits`` significant digits, as 'd.ddd...' (x >= 1 assumed)."""
    man, exp = libmp.to_man_exp(x.value)
    if man <= 0:
        raise ValueError("decimal_digits expects a positive value")
    scaled = man * 10 ** (digits - 1)
    scaled = scaled << exp if exp >= 0 else scaled >> -exp
    s = _int_to_decimal(scaled, digits).lstrip("0")
    if len(s) != digits:
        raise ValueError("value is not in [1, 10)")
    return s[0] + "." + s[1:]


def format_digits(s: str, width: int = 50) -> str:
    """'3.' on the first line, then the fractional digits in lines of ``width``."""
    head, _, frac = s.partition(".")
    lines = [head + "."]
    lines += [frac[i:i + width] for i in range(0, len(frac), width)]
    return "\n".join(lines)


def agree_digits(x: BigReal, y: BigReal, digits: int) -> bool:
    return decimal_digits(x, digits) == decimal_digits(y, digits)


def pi_check(digits: int, method: str = "chudnovsky") -> tuple[CheckReport, BigReal]:
    with stopwatch() as ms:
        value = chudnovsky_pi(digits) if method == "chudnovsky" else machin_pi(digits)
        oracle = machin_pi(digits) if method == "chudnovsky" else chudnovsky_pi(digits)
        a, b = decimal_digits(value, digits), decimal_digits(oracle, digits)
        if a == b:
            return make_report(f"pi_{digits}", True, f"{digits} digits agree", ms()), value
        k = next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)
        return make_report(f"pi_{digits}", False, f"first mismatch at character {k}", ms()), value


# Ramanujan's series

def _ramanujan_sum(which: str, digits: int) -> tuple[Fraction, int]:
    """Exact partial sum S with the tail below 10^-(digits+10); returns (S, terms)."""
    if which == "rampi1":
        A, B, base, sign = 26390, 1103, Fraction(1, 396 ** 4), 1
    elif which == "rampi2":
        A, B, base, sign = 21460, 1123, Fraction(1, 84 ** 4 * 4), -1
    else:
        raise ValueError(f"unknown series {which!r}")
    bound = Fraction(1, 10 ** (digits + 10))
    total = Fraction(0)
    coef = Fraction(1)  # (4m)!/(m!)^4 * base^m * sign^m
    m = 0
    while True:
        term = coef * (A * m + B)
        total += term
        coef *= Fraction((4 * m + 1) * (4 * m + 2) * (4 * m + 3) * (4 * m + 4), (m + 1) ** 4)
        coef *= base * sign
        m += 1
        # consecutive terms shrink by at least 1/2 from here, so the tail is below 2|t_m|
        if 2 * abs(coef * (A * m + B)) < bound:
            return total, m


def ramanujan_pi(which: str, digits: int) -> BigReal:
    prec = _bits(digits) + 32
    S, _ = _ramanujan_sum(which, digits)
    root2 = bigreal_nth_root(BigReal.of(2, prec), 2, prec)
    if which == "rampi1":
        inv = root2 * 2 / 9801 * BigReal.of(S, prec)
    else:
        inv = BigReal.of(S * Fraction(2, 84 ** 2), prec)
    return 1 / inv


def ramanujan_series_check(which: str, digits: int = 100) -> CheckReport:
    if digits > 200:
        raise ValueError("digits must be <= 200")
    with stopwatch() as ms:
        value = ramanujan_pi(which, digits)
        oracle = machin_pi(digits + 5)
        diff = abs(value - oracle)
        ok = diff < Fraction(1, 10 ** (digits - 1))
        return make_report(f"{which}_{digits}", ok, f"|pi - oracle| = {float(diff):.2e}", ms())


# general singular-modulus series

@dataclass(frozen=True)
class SeriesSpec:
    n: int
    c_value: BigReal
    linear_a: BigReal   # 2 sqrt(n) v
    linear_b: BigReal   # G0
    precision_bits: int


def series_spec(n: int, digits: int) -> SeriesSpec:
    """Constants of 1/pi = sum (2 sqrt(n) v m + G0) b_m c^m from Table 1 data."""
    prec = 4 * digits + 64 + 32
    ctx = singular_context(n)
    s = refine_root(ctx.minpoly_s, ctx.generator.root_interval, prec).with_precision(prec)
    w = s ** 6
    c = w * -27 / (1 - w * 4) ** 3
    if abs(c) >= 1:
        raise ArithmeticError(f"|c| >= 1 for n = {n}")
    v = (1 - c).sqrt() / 2
    rootn = BigReal.of(n, prec).sqrt()
    sixth = bigreal_nth_root(-c / 1728, 6, prec)
    g0 = rootn * v / 3 + sixth * CM_DATA[n][1]
    return SeriesSpec(n, c, rootn * v * 2, g0, prec)


def b_coefficient_ratio(m: int) -> Fraction:
    """b_(m+1)/b_m for b_m = (6m)!/(12^(3m) (3m)! (m!)^3)."""
    return Fraction((6 * m + 1) * (6 * m + 3) * (6 * m + 5), 216 * (m + 1) ** 3)


def general_series_sum(spec: SeriesSpec, digits: int) -> tuple[BigReal, int]:
    """Partial sum with tail below 10^-(digits+10).

    |b_(m+1)/b_m| < 1 and, once G0 > 0 and m >= 1, the linear factor at most
    doubles, so the tail after term t_M is below |t_M| 2|c| / (1 - 2|c|).
    """
    if spec.linear_b.sign() <= 0:
        raise ArithmeticError("G0 must be positive for the tail bound")
    ac = abs(spec.c_value)
    r = ac * 2
    if r >= 1:
        raise ArithmeticError("series converges too slowly for the tail bound")
    bound = Fraction(1, 10 ** (digits + 10))
    prec = spec.precision_bits
    total = BigReal.of(0, prec)
    bc = BigReal.of(1, prec)  # b_m c^m
    m = 0
    while True:
        term = (spec.linear_a * m + spec.linear_b) * bc
        total = total + term
        bc = bc * spec.c_value * b_coefficient_ratio(m)
        m += 1
        nxt = abs((spec.linear_a * m + spec.linear_b) * bc)
        if m >= 2 and nxt * (1 + r / (1 - r)) < bound:
            return total, m


def general_series_pi(n: int, digits: int) -> CheckReport:
    if n not in CM_DATA:
        raise ValueError(f"n must be one of {sorted(CM_DATA)}")
    with stopwatch() as ms:
        spec = series_spec(n, digits)
        total, terms = general_series_sum(spec, digits)
        value = 1 / total
        diff = abs(value - machin_pi(digits + 5))
        ok = diff < Fraction(1, 10 ** (digits - 1))
        return make_report(f"series_{n}_{digits}", ok,
                           f"G2 = {CM_DATA[n][1]}, {terms} terms, |pi - oracle| = {float(diff):.2e}",
                           ms())


def general_163_exact_partial(terms: int) -> Fraction:
    """640320^(3/2)/12 times the general-form partial sum for n = 163, exactly.

    With c = -1/53360^3, 2 sqrt(n) v = 12*545140134/640320^(3/2) and
    G0 = 12*13591409/640320^(3/2), every term is rational after removing the
    common radical.
    """
    c = Fraction(-1, 53360 ** 3)
    total = Fraction(0)
    bc = Fraction(1)
    for m in range(terms):
        total += (CHUD_B * m + CHUD_A) * bc
        bc *= c * b_coefficient_ratio(m)
    return total


def series_equivalence_check(terms: int = 50) -> CheckReport:
    with stopwatch() as ms:
        ok = all(general_163_exact_partial(k) == chudnovsky_partial(k)
                 for k in range(1, terms + 1))
        return make_report("series_163_equals_chud", ok,
                           f"partial sums identical for 1..{terms} terms" if ok else
                           "partial sums differ", ms())
