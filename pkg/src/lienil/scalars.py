"""Exact coefficient fields: the rationals and prime fields F_p with p >= 5.

Polynomials in this package store raw coefficient values (``int`` residues for
F_p, ``int``/``Fraction`` for Q) and use a :class:`FieldSpec` to normalise
them.  :class:`Scalar` is the boxed, self-describing form used at API edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational


class FieldError(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``characteristic == 0``, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p in (2, 3):
            raise FieldError(f"characteristic {p} is not supported (need 0 or a prime >= 5)")
        if p != 0 and not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    # raw-value helpers; hot paths in freealg call these directly
    def coerce(self, value) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(value, int):
                return value % p
            value = Fraction(value)
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, int):
            return value
        if isinstance(value, Rational):
            value = Fraction(value)
            return value.numerator if value.denominator == 1 else value
        raise TypeError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        s = a + b
        if self.characteristic:
            return s % self.characteristic
        return _normq(s)

    def mul(self, a, b):
        s = a * b
        if self.characteristic:
            return s % self.characteristic
        return _normq(s)

    def neg(self, a):
        if self.characteristic:
            return -a % self.characteristic
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return _normq(Fraction(1) / a)

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def _normq(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: int | Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other
        return Scalar(self.field, other)

    def __add__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one()
        for _ in range(k):
            r = r * self
        return r

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value} in {self.field}"


def p_adic_valuation(n: int, p: int) -> int:
    if n < 1:
        raise ValueError("valuation needs n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def base_p_digits(n: int, p: int) -> list[int]:
    """Digits of n in base p, least significant first."""
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return digits or [0]


def lucas_binomial(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as the product of digit-wise binomials (Lucas)."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * comb(ni, ki) % p
    return result


def binomial(n: int, k: int, field: FieldSpec = QQ) -> Scalar:
    if n < 0 or k < 0:
        raise ValueError("binomial needs nonnegative arguments")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k > n")
    return Scalar(field, comb(n, k))


def is_power_of(n: int, p: int) -> bool:
    """True when n = p^s with s >= 1."""
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1
