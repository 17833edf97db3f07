"""Dense univariate integer polynomials and exact real-root isolation."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .bigreal import BigReal

Interval = tuple[Fraction, Fraction]


class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[i]`` multiplying x**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if isinstance(other, IntPoly):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for anything closed under + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide out the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def sign_at(self, x: Fraction | int) -> int:
        """Exact sign of p(x) for rational x, evaluated over the integers."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        d = self.degree
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc += c * num ** i * den ** (d - i)
        return (acc > 0) - (acc < 0)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            term = body + mono
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)


def _as_poly(x) -> IntPoly | None:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    return None


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a.coeffs or not b.coeffs:
        return IntPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return IntPoly(out)


# Rational-coefficient helpers (ascending lists of Fractions) for Sturm chains.

def _qtrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qrem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1] / lb
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] -= c * bi
        r.pop()
        _qtrim(r)
    return r


def _qgcd_degree(a: Sequence[Fraction], b: Sequence[Fraction]) -> int:
    a, b = list(a), list(b)
    while b:
        a, b = b, _qrem(a, b)
    return len(a) - 1


def sturm_sequence(p: IntPoly) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1]:
        r = _qrem(seq[-2], seq[-1])
        seq.append([-c for c in r])
    seq.pop()
    return seq


def _qsign(a: Sequence[Fraction], x: Fraction) -> int:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def sign_variations(seq: list[list[Fraction]], x: Fraction) -> int:
    return _variations(_qsign(a, x) for a in seq)


def check_squarefree(p: IntPoly) -> None:
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    dp = p.derivative()
    if dp.is_zero():
        return
    if _qgcd_degree([Fraction(c) for c in p.coeffs], [Fraction(c) for c in dp.coeffs]) > 0:
        raise ValueError(f"polynomial {p} is not squarefree: gcd(p, p') is non-constant "
                         "(repeated root)")


def root_bound(p: IntPoly) -> int:
    """A power of two strictly exceeding every root's modulus (Cauchy)."""
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    bound = Fraction(m, lc) + 1
    k = 1
    while (1 << k) <= bound:
        k += 1
    return 1 << k


def isolate_real_roots(p: IntPoly, max_width: Fraction | None = None) -> list[Interval]:
    """Disjoint rational intervals (lo, hi), one per distinct real root.

    p changes sign strictly between the endpoints, which are never roots.
    Endpoints are dyadic. With ``max_width`` every interval is refined below it.
    """
    check_squarefree(p)
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    B = Fraction(root_bound(p))
    out: list[Interval] = []
    stack = [(-B, B, sign_variations(seq, -B), sign_variations(seq, B))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count == 0:
            continue
        if count == 1 and (max_width is None or b - a <= max_width):
            out.append((a, b))
            continue
        m = (a + b) / 2
        k = 3
        while p.sign_at(m) == 0:
            m = (a + b) / 2 + (b - a) / (1 << k)
            k += 1
        vm = sign_variations(seq, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def count_roots(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi] for squarefree p."""
    seq = sturm_sequence(p)
    return sign_variations(seq, Fraction(lo)) - sign_variations(seq, Fraction(hi))


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def refine_interval(p: IntPoly, interval: Interval, width: Fraction) -> Interval:
    """Shrink an isolating interval below ``width``.

    Safeguarded Newton on a dyadic grid; plain bisection whenever the Newton
    iterate leaves the bracket.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    slo, shi = p.sign_at(lo), p.sign_at(hi)
    if slo * shi >= 0:
        raise ValueError(f"no sign change of {p} on [{lo}, {hi}]")
    dp = p.derivative()
    bits = 8
    while Fraction(1, 1 << bits) > width / 16:
        bits += 1
    x = (lo + hi) / 2
    while hi - lo > width:
        cand = None
        d = dp(x)
        if d != 0:
            cand = _round_dyadic(x - p(x) / d, bits)
        if cand is None or not lo < cand < hi:
            cand = (lo + hi) / 2
        s = p.sign_at(cand)
        if s == 0:
            return cand, cand
        if s == slo:
            lo = cand
        else:
            hi = cand
        # probe just past the predicted root to collapse the far side of the bracket
        d = dp(cand)
        if d != 0:
            step = p(cand) / d
            probe = _round_dyadic(cand - 2 * step, bits)
            if lo < probe < hi:
                sp = p.sign_at(probe)
                if sp == 0:
                    return probe, probe
                if sp == slo:
                    lo = probe
                else:
                    hi = probe
        x = cand
    return lo, hi


def refine_root(p: IntPoly, interval: Interval, precision_bits: int) -> BigReal:
    """Approximate the root isolated by ``interval`` to within 2**-precision_bits."""
    lo, hi = refine_interval(p, interval, Fraction(1, 1 << (precision_bits + 1)))
    mid = (lo + hi) / 2
    mag = max(abs(lo), abs(hi), Fraction(1))
    extra = int(mag).bit_length() + 8
    return BigReal.of(mid, precision_bits + extra)
