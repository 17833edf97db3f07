"""Exact arithmetic in Q(u) = Q[x]/(m(x)) with a designated real root u."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .bigreal import BigReal
from .poly import IntPoly, _qrem, _qtrim, count_roots, isolate_real_roots, refine_root


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _qtrim([x - y for x, y in zip(a, b)])


def _qdivmod(a, b):
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        c = r[-1] / lb
        shift = len(r) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] -= c * bi
        r.pop()
        _qtrim(r)
    return _qtrim(q), r


@dataclass(frozen=True)
class AlgebraicNumber:
    modulus: IntPoly
    coords: tuple
    root_interval: tuple

    def __post_init__(self):
        if len(self.coords) != self.modulus.degree:
            raise ValueError(f"expected {self.modulus.degree} coordinates, got {len(self.coords)}")

    # construction

    def _new(self, coeffs) -> AlgebraicNumber:
        r = _qrem([Fraction(c) for c in coeffs], self._mq)
        r = r + [Fraction(0)] * (self.modulus.degree - len(r))
        return AlgebraicNumber(self.modulus, tuple(r), self.root_interval)

    @property
    def _mq(self):
        return [Fraction(c) for c in self.modulus.coeffs]

    def lift(self, x) -> AlgebraicNumber:
        """Coerce an int/Fraction (or same-field element) into this field."""
        if isinstance(x, AlgebraicNumber):
            self._check_field(x)
            return x
        if isinstance(x, (int, _RationalABC)):
            return self._new([Fraction(x)])
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(u)")

    def _check_field(self, other: AlgebraicNumber):
        if other.modulus != self.modulus or other.root_interval != self.root_interval:
            raise ValueError("AlgebraicNumber operands live in different fields "
                             f"({self.modulus} vs {other.modulus})")

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            self._check_field(other)
            return other
        if isinstance(other, (int, _RationalABC)):
            return self.lift(other)
        return None

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.modulus, tuple(a + b for a, b in zip(self.coords, o.coords)),
                               self.root_interval)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.modulus, tuple(-a for a in self.coords), self.root_interval)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return alg_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return alg_mul(self, alg_inverse(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return alg_mul(o, alg_inverse(self))

    def __pow__(self, n: int):
        if n < 0:
            return alg_inverse(self) ** -n
        result, base = self.lift(1), self
        while n:
            if n & 1:
                result = alg_mul(result, base)
            base = alg_mul(base, base)
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return (self.modulus == other.modulus and self.root_interval == other.root_interval
                    and self.coords == other.coords)
        if isinstance(other, (int, _RationalABC)):
            return self.coords == self.lift(other).coords
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.coords, self.root_interval))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self.coords[0]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"({c})" + ("" if i == 0 else "*u" if i == 1 else f"*u^{i}"))
        return " + ".join(terms) or "0"


def alg_mul(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    a._check_field(b)
    return a._new(_qmul(_qtrim(list(a.coords)), _qtrim(list(b.coords))))


def alg_inverse(a: AlgebraicNumber) -> AlgebraicNumber:
    """Inverse via the extended Euclidean algorithm against the modulus."""
    f = _qtrim(list(a.coords))
    if not f:
        raise ZeroDivisionError("inverse of zero in Q(u)")
    # invariant: s_i * f = r_i (mod m)
    r0, r1 = a._mq, f
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        if not r1:
            raise ZeroDivisionError(f"{a} is a zero divisor modulo {a.modulus}")
    inv = [c / r1[0] for c in s1]
    return a._new(inv)


def number_field(modulus: IntPoly, root_interval=None) -> AlgebraicNumber:
    """Return the generator u of Q[x]/(modulus) pinned to one real root.

    Without an interval the polynomial must have exactly one real root.
    """
    if root_interval is None:
        roots = isolate_real_roots(modulus)
        if len(roots) != 1:
            raise ValueError(f"{modulus} has {len(roots)} real roots; pass root_interval")
        root_interval = roots[0]
    lo, hi = Fraction(root_interval[0]), Fraction(root_interval[1])
    if modulus.sign_at(lo) * modulus.sign_at(hi) >= 0:
        raise ValueError("modulus has no sign change across root_interval")
    if count_roots(modulus, lo, hi) != 1:
        raise ValueError("root_interval does not isolate a single root")
    coords = [Fraction(0)] * modulus.degree
    if modulus.degree > 1:
        coords[1] = Fraction(1)
    else:
        coords[0] = Fraction(-modulus.coeffs[0], modulus.coeffs[1])
    return AlgebraicNumber(modulus, tuple(coords), (lo, hi))


def poly_eval_alg(p: IntPoly, a: AlgebraicNumber) -> AlgebraicNumber:
    acc = a.lift(0)
    for c in reversed(p.coeffs):
        acc = acc * a + c
    return acc


def alg_eval(a: AlgebraicNumber, precision_bits: int) -> BigReal:
    """Numeric value at the designated root, error below 2**-precision_bits."""
    if a.is_rational():
        return BigReal.of(a.coords[0], precision_bits + 8)
    lo, hi = a.root_interval
    bound = max(abs(lo), abs(hi), Fraction(1))
    # guard bits cover the derivative of the coordinate polynomial on the interval
    slope = sum(abs(c) * i * bound ** max(i - 1, 0) for i, c in enumerate(a.coords))
    scale = sum(abs(c) * bound ** i for i, c in enumerate(a.coords))
    guard = int(slope).bit_length() + int(scale).bit_length() + 16
    r = refine_root(a.modulus, a.root_interval, precision_bits + guard)
    acc = BigReal.of(0, r.precision_bits)
    for c in reversed(a.coords):
        acc = acc * r + c
    return acc
