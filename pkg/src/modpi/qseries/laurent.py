"""Truncated Laurent series in the nome q with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable

# Below this many nonzero terms schoolbook convolution beats packing.
_KRONECKER_MIN = 32


def _pack(vals: list[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in vals), "little")


def _unpack(x: int, width: int, n: int) -> list[int]:
    raw = (x & ((1 << (8 * width * n)) - 1)).to_bytes(width * n, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(n)]


def convolve(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of the product of two integer coefficient lists."""
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    nz_a = sum(1 for x in a if x)
    nz_b = sum(1 for x in b if x)
    if min(nz_a, nz_b) < _KRONECKER_MIN:
        if nz_a > nz_b:
            a, b = b, a
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                lim = min(len(b), n - i)
                for j in range(lim):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return out
    # Kronecker substitution with the sign split into two non-negative halves.
    bits = (max(map(abs, a)).bit_length() + max(map(abs, b)).bit_length()
            + min(len(a), len(b)).bit_length() + 1)
    width = bits // 8 + 1
    pa = _pack([x if x > 0 else 0 for x in a], width)
    na = _pack([-x if x < 0 else 0 for x in a], width)
    pb = _pack([x if x > 0 else 0 for x in b], width)
    nb = _pack([-x if x < 0 else 0 for x in b], width)
    m = min(n, len(a) + len(b) - 1)
    pos = _unpack(pa * pb + na * nb, width, m)
    neg = _unpack(pa * nb + na * pb, width, m)
    return [x - y for x, y in zip(pos, neg)] + [0] * (n - m)


class LaurentSeries:
    """sum_{valuation <= e < trunc} c_e q^e + O(q^trunc).

    Coefficients are stored as integer numerators over one positive common
    denominator.  A series known to vanish through trunc has
    ``valuation == trunc`` and no stored coefficients.
    """

    __slots__ = ("valuation", "trunc", "_num", "_den")

    def __init__(self, valuation: int, coeffs: Iterable, trunc: int):
        cs = [Fraction(c) for c in coeffs]
        den = 1
        for c in cs:
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in cs]
        self._set(valuation, nums, den, trunc)

    @classmethod
    def _raw(cls, valuation: int, nums: list[int], den: int, trunc: int) -> LaurentSeries:
        obj = cls.__new__(cls)
        obj._set(valuation, nums, den, trunc)
        return obj

    def _set(self, valuation, nums, den, trunc):
        nums = list(nums[:max(trunc - valuation, 0)])
        start = 0
        while start < len(nums) and nums[start] == 0:
            start += 1
        nums = nums[start:]
        valuation += start
        while nums and nums[-1] == 0:
            nums.pop()
        if not nums:
            valuation, den = trunc, 1
        if den < 0:
            den, nums = -den, [-x for x in nums]
        g = den
        for x in nums:
            if g == 1:
                break
            g = gcd(g, x)
        if g > 1:
            den //= g
            nums = [x // g for x in nums]
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "_num", tuple(nums))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # constructors

    @classmethod
    def zero(cls, trunc: int) -> LaurentSeries:
        return cls._raw(trunc, [], 1, trunc)

    @classmethod
    def one(cls, trunc: int) -> LaurentSeries:
        return cls._raw(0, [1], 1, trunc)

    @classmethod
    def monomial(cls, exponent: int, coeff, trunc: int) -> LaurentSeries:
        return cls(exponent, [coeff], trunc)

    @classmethod
    def from_dict(cls, terms: dict, trunc: int) -> LaurentSeries:
        if not terms:
            return cls.zero(trunc)
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)], trunc)

    # access

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    def coeff(self, e: int) -> Fraction:
        if e >= self.trunc:
            raise IndexError(f"coefficient of q^{e} is beyond the truncation O(q^{self.trunc})")
        i = e - self.valuation
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def __getitem__(self, e: int) -> Fraction:
        return self.coeff(e)

    def is_integral(self) -> bool:
        return self._den == 1

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self._num

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._num:
            raise ValueError("series vanishes to its truncation")
        return Fraction(self._num[0], self._den)

    def items(self):
        """(exponent, coefficient) for the nonzero stored terms."""
        for i, x in enumerate(self._num):
            if x:
                yield self.valuation + i, Fraction(x, self._den)

    def first_nonzero(self, through: int | None = None) -> int | None:
        """Exponent of the first nonzero coefficient at or below ``through``."""
        for i, x in enumerate(self._num):
            if x:
                e = self.valuation + i
                return e if through is None or e <= through else None
        return None

    # arithmetic

    def _dense(self, start: int, stop: int, den: int) -> list[int]:
        """Numerators over ``den`` (a multiple of ours) for exponents [start, stop)."""
        scale = den // self._den
        out = [0] * (stop - start)
        for i, x in enumerate(self._num):
            e = self.valuation + i
            if e >= stop:
                break
            if e >= start:
                out[e - start] = x * scale
        return out

    @staticmethod
    def _scalar(x) -> Fraction | None:
        if isinstance(x, (int, _RationalABC)):
            return Fraction(x)
        return None

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            s = self._scalar(other)
            if s is None:
                return NotImplemented
            other = LaurentSeries(0, [s], self.trunc if self.trunc > 0 else 1)
        trunc = min(self.trunc, other.trunc)
        start = min(self.valuation, other.valuation, trunc)
        den = lcm(self._den, other._den)
        a = self._dense(start, trunc, den)
        b = other._dense(start, trunc, den)
        return LaurentSeries._raw(start, [x + y for x, y in zip(a, b)], den, trunc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._raw(self.valuation, [-x for x in self._num], self._den, self.trunc)

    def __sub__(self, other):
        if isinstance(other, LaurentSeries):
            return self + (-other)
        s = self._scalar(other)
        return NotImplemented if s is None else self + (-s)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        c = Fraction(c)
        return LaurentSeries._raw(self.valuation, [x * c.numerator for x in self._num],
                                  self._den * c.denominator, self.trunc)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            s = self._scalar(other)
            return NotImplemented if s is None else self.scale(s)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return series_mul(self, series_inverse(other))
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        if s == 0:
            raise ZeroDivisionError("division of a series by zero")
        return self.scale(1 / s)

    def __rtruediv__(self, other):
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return series_inverse(self).scale(s)

    def __pow__(self, n: int):
        return series_pow(self, n)

    # substitutions and truncation

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by q^k."""
        return LaurentSeries._raw(self.valuation + k, list(self._num), self._den, self.trunc + k)

    def truncate(self, trunc: int) -> LaurentSeries:
        return LaurentSeries._raw(self.valuation, list(self._num), self._den,
                                  min(trunc, self.trunc))

    def subs_power(self, k: int) -> LaurentSeries:
        """f(q^k) for a positive integer k."""
        if k < 1:
            raise ValueError("power substitution needs k >= 1")
        if k == 1:
            return self
        nums = [0] * ((len(self._num) - 1) * k + 1) if self._num else []
        for i, x in enumerate(self._num):
            nums[i * k] = x
        return LaurentSeries._raw(self.valuation * k, nums, self._den, self.trunc * k)

    def subs_neg(self) -> LaurentSeries:
        """f(-q)."""
        nums = [x if (self.valuation + i) % 2 == 0 else -x for i, x in enumerate(self._num)]
        return LaurentSeries._raw(self.valuation, nums, self._den, self.trunc)

    def contract(self, k: int) -> LaurentSeries:
        """Write f(q) = g(q^k) and return g; every nonzero exponent must be divisible by k."""
        for e, _ in self.items():
            if e % k:
                raise ValueError(f"exponent {e} is not divisible by {k}")
        if not self._num:
            return LaurentSeries.zero(-(-self.trunc // k))
        v = self.valuation
        nums = [x for i, x in enumerate(self._num) if (v + i) % k == 0]
        start = v // k
        return LaurentSeries._raw(start, nums, self._den, -(-self.trunc // k))

    # comparison

    def first_difference(self, other: LaurentSeries, through: int | None = None):
        """First exponent (<= through) where the two series differ, or None."""
        limit = min(self.trunc, other.trunc) - 1
        if through is not None:
            if through > limit:
                raise ValueError(f"cannot compare through q^{through}: series only known "
                                 f"through q^{limit}")
            limit = through
        diff = (self - other).truncate(limit + 1)
        return diff.first_nonzero()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self._num, self._den, self.trunc) == \
            (other.valuation, other._num, other._den, other.trunc)

    def __hash__(self):
        return hash((self.valuation, self._num, self._den, self.trunc))

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:8]:
            terms.append(f"{c}*q^{e}")
        more = " + ..." if len([x for x in self._num if x]) > 8 else ""
        return f"LaurentSeries({' + '.join(terms) or '0'}{more} + O(q^{self.trunc}))"


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    trunc = min(a.valuation + b.trunc, b.valuation + a.trunc)
    v = a.valuation + b.valuation
    n = trunc - v
    if n <= 0 or not a._num or not b._num:
        return LaurentSeries.zero(trunc)
    prod = convolve(list(a._num), list(b._num), n)
    return LaurentSeries._raw(v, prod, a._den * b._den, trunc)


def series_inverse(a: LaurentSeries) -> LaurentSeries:
    """1/a; the leading stored coefficient must be nonzero."""
    if not a._num or a._num[0] == 0:
        raise ZeroDivisionError("cannot invert a series whose leading coefficient is zero")
    v = a.valuation
    n = a.trunc - v
    g = 0
    for x in a._num:
        g = gcd(g, x)
    if a._num[0] < 0:
        g = -g
    c = [x // g for x in a._num[:n]]
    c0 = c[0]
    out = [0] * n
    if c0 == 1:
        out[0] = 1
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(c) - 1) + 1):
                ci = c[i]
                if ci:
                    s += ci * out[k - i]
            out[k] = -s
        den = 1
    else:
        # b_k = B_k / c0^(k+1) with B integral; rescale to the common c0^n.
        B = [0] * n
        B[0] = 1
        pw = [1] * (n + 1)
        for k in range(1, n + 1):
            pw[k] = pw[k - 1] * c0
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(c) - 1) + 1):
                ci = c[i]
                if ci:
                    s += ci * B[k - i] * pw[i - 1]
            B[k] = -s
        out = [B[k] * pw[n - 1 - k] for k in range(n)]
        den = pw[n]
    # a = (g / a.den) q^v sum c_i q^i  =>  1/a = (a.den / g) q^-v (sum c_i q^i)^-1
    return LaurentSeries._raw(-v, [x * a._den for x in out], den * g, -v + n)


def series_pow(a: LaurentSeries, n: int) -> LaurentSeries:
    if n < 0:
        return series_pow(series_inverse(a), -n)
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    if result is None:
        return LaurentSeries.one(a.trunc - a.valuation)
    return result


@dataclass(frozen=True)
class FracPrefixSeries:
    """q^shift * body, for objects such as theta_2 and eta with fractional exponents."""

    shift: Fraction
    body: LaurentSeries

    def __post_init__(self):
        object.__setattr__(self, "shift", Fraction(self.shift))

    def __mul__(self, other):
        if isinstance(other, FracPrefixSeries):
            return FracPrefixSeries(self.shift + other.shift, self.body * other.body)
        if isinstance(other, LaurentSeries) or isinstance(other, (int, _RationalABC)):
            return FracPrefixSeries(self.shift, self.body * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FracPrefixSeries):
            return FracPrefixSeries(self.shift - other.shift, self.body / other.body)
        if isinstance(other, LaurentSeries) or isinstance(other, (int, _RationalABC)):
            return FracPrefixSeries(self.shift, self.body / other)
        return NotImplemented

    def __pow__(self, n: int):
        return FracPrefixSeries(self.shift * n, series_pow(self.body, n))

    def inverse(self) -> FracPrefixSeries:
        return FracPrefixSeries(-self.shift, series_inverse(self.body))

    def __add__(self, other):
        if not isinstance(other, FracPrefixSeries):
            return NotImplemented
        d = self.shift - other.shift
        if d.denominator != 1:
            raise ValueError(f"cannot add q^{self.shift}- and q^{other.shift}-prefixed series")
        return FracPrefixSeries(other.shift, self.body.shift(int(d)) + other.body)

    def __neg__(self):
        return FracPrefixSeries(self.shift, -self.body)

    def __sub__(self, other):
        return self + (-other)

    def is_integral_shift(self) -> bool:
        return self.shift.denominator == 1

    def to_laurent(self) -> LaurentSeries:
        if not self.is_integral_shift():
            raise ValueError(f"total q-shift {self.shift} is not an integer")
        return self.body.shift(int(self.shift))
