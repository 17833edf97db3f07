"""Arbitrary-precision binary floating point values with explicit precision.

Values are raw ``mpmath.libmp`` tuples; every operation goes through the pure
``mpf_*`` functions with an explicit precision and round-to-nearest, so there
is no shared context and no global state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from mpmath import libmp

RND = libmp.round_nearest


def _exact(x, prec):
    """Convert an int or Fraction to a raw mpf at ``prec`` bits."""
    if isinstance(x, int):
        return libmp.from_int(x, prec, RND)
    if isinstance(x, _RationalABC):
        return libmp.from_rational(x.numerator, x.denominator, prec, RND)
    raise TypeError(f"cannot convert {type(x).__name__} to BigReal")


@dataclass(frozen=True)
class BigReal:
    value: tuple
    precision_bits: int

    def __post_init__(self):
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be positive")

    # construction

    @classmethod
    def of(cls, x, precision_bits: int) -> BigReal:
        if isinstance(x, BigReal):
            return x.with_precision(precision_bits)
        if isinstance(x, float):
            return cls(libmp.from_float(x, precision_bits, RND), precision_bits)
        if isinstance(x, str):
            return cls(libmp.from_str(x, precision_bits, RND), precision_bits)
        return cls(_exact(x, precision_bits), precision_bits)

    @classmethod
    def pi(cls, precision_bits: int) -> BigReal:
        return cls(libmp.mpf_pi(precision_bits, RND), precision_bits)

    def with_precision(self, precision_bits: int) -> BigReal:
        return BigReal(libmp.mpf_pos(self.value, precision_bits, RND), precision_bits)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, BigReal):
            return other.value, min(self.precision_bits, other.precision_bits)
        if isinstance(other, (int, _RationalABC)):
            return _exact(other, self.precision_bits + 8), self.precision_bits
        return NotImplemented, None

    def _binop(self, other, fn, swap=False):
        v, prec = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        a, b = (v, self.value) if swap else (self.value, v)
        return BigReal(fn(a, b, prec, RND), prec)

    def __add__(self, other):
        return self._binop(other, libmp.mpf_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, libmp.mpf_sub)

    def __rsub__(self, other):
        return self._binop(other, libmp.mpf_sub, swap=True)

    def __mul__(self, other):
        return self._binop(other, libmp.mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if other.sign() == 0 if isinstance(other, BigReal) else other == 0:
            raise ZeroDivisionError("BigReal division by zero")
        return self._binop(other, libmp.mpf_div)

    def __rtruediv__(self, other):
        if self.value == libmp.fzero:
            raise ZeroDivisionError("BigReal division by zero")
        return self._binop(other, libmp.mpf_div, swap=True)

    def __neg__(self):
        return BigReal(libmp.mpf_neg(self.value), self.precision_bits)

    def __pos__(self):
        return self

    def __abs__(self):
        return BigReal(libmp.mpf_abs(self.value), self.precision_bits)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("BigReal only supports integer powers; use nth_root")
        if n < 0:
            return 1 / (self ** -n)
        return BigReal(libmp.mpf_pow_int(self.value, n, self.precision_bits, RND),
                       self.precision_bits)

    def sqrt(self) -> BigReal:
        if self.sign() < 0:
            raise ValueError("square root of a negative BigReal")
        return BigReal(libmp.mpf_sqrt(self.value, self.precision_bits, RND),
                       self.precision_bits)

    def exp(self) -> BigReal:
        return BigReal(libmp.mpf_exp(self.value, self.precision_bits, RND),
                       self.precision_bits)

    def log(self) -> BigReal:
        if self.sign() <= 0:
            raise ValueError("log of a non-positive BigReal")
        return BigReal(libmp.mpf_log(self.value, self.precision_bits, RND),
                       self.precision_bits)

    # comparison and conversion

    def sign(self) -> int:
        return libmp.mpf_sign(self.value)

    def _cmp(self, other):
        if isinstance(other, BigReal):
            return libmp.mpf_cmp(self.value, other.value)
        if isinstance(other, (int, _RationalABC)):
            # exact comparison through the dyadic value
            return (self.to_fraction() > other) - (self.to_fraction() < other)
        if isinstance(other, float):
            return libmp.mpf_cmp(self.value, libmp.from_float(other))
        return NotImplemented

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        return hash((self.value, self.precision_bits))

    def __float__(self):
        return libmp.to_float(self.value)

    def to_fraction(self) -> Fraction:
        p, q = libmp.to_rational(self.value)
        return Fraction(p, q)

    def to_str(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(1, int(self.precision_bits * 0.30103))
        return libmp.to_str(self.value, digits)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BigReal({self.to_str(20)}, precision_bits={self.precision_bits})"


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer, by integer Newton."""
    if n < 0:
        raise ValueError("iroot of a negative integer")
    if n < 2:
        return n
    y = 1 << -(-n.bit_length() // k)
    while True:
        z = ((k - 1) * y + n // y ** (k - 1)) // k
        if z >= y:
            return y
        y = z


def bigreal_nth_root(x, n: int, precision_bits: int | None = None) -> BigReal:
    """Real n-th root, correct to the working precision.

    Even roots of non-positive numbers raise; odd roots of negatives are the
    negative real root.
    """
    if n < 1:
        raise ValueError("root index must be a positive integer")
    if not isinstance(x, BigReal):
        if precision_bits is None:
            raise ValueError("precision_bits required for exact inputs")
        x = BigReal.of(x, precision_bits + 16)
    prec = precision_bits or x.precision_bits
    s = x.sign()
    if s == 0:
        if n % 2 == 0:
            raise ValueError("even root of zero is outside the supported domain")
        return BigReal(libmp.fzero, prec)
    if s < 0:
        if n % 2 == 0:
            raise ValueError("even root of a negative number")
        return -bigreal_nth_root(-x, n, prec)
    if n == 1:
        return x.with_precision(prec)
    man, exp = libmp.to_man_exp(x.value)
    # Scale so the integer root carries prec + 8 significant bits.
    want = n * (prec + 8)
    shift = max(0, want - man.bit_length())
    shift += (exp - shift) % n
    root = iroot(man << shift, n)
    return BigReal(libmp.from_man_exp(root, (exp - shift) // n, prec, RND), prec)
