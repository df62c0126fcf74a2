"""Exact arithmetic in real quadratic fields Q(sqrt(m))."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from ..errors import DomainError, FieldMismatchError


def is_squarefree(m: int) -> bool:
    if m < 1:
        return False
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write a positive integer as ``s**2 * m`` with ``m`` square-free; returns ``(s, m)``."""
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    s, m = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            m *= d
        d += 1
    return s, m * n


@total_ordering
class QuadExt:
    """The number ``a + b*sqrt(m)`` with rational ``a``, ``b`` and square-free ``m >= 2``.

    Instances are immutable and hashable. Mixing two different ``m`` raises
    :class:`FieldMismatchError`; ints and Fractions are promoted with ``b = 0``.
    """

    __slots__ = ("_m", "_a", "_b")

    def __init__(self, m: int, a=0, b=0) -> None:
        if m < 2 or not is_squarefree(m):
            raise DomainError(f"m must be square-free and >= 2, got {m}")
        self._m = int(m)
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def m(self) -> int:
        return self._m

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def sqrt(cls, m: int) -> QuadExt:
        return cls(m, 0, 1)

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other._m != self._m:
                raise FieldMismatchError(f"cannot mix Q(sqrt({self._m})) and Q(sqrt({other._m}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(self._m, other, 0)
        return None

    def is_rational(self) -> bool:
        return self._b == 0

    def to_fraction(self) -> Fraction:
        if self._b != 0:
            raise DomainError(f"{self} is irrational")
        return self._a

    def conj(self) -> QuadExt:
        return QuadExt(self._m, self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - self._m * self._b * self._b

    def sign(self) -> int:
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with m b^2
        d = a * a - self._m * b * b
        return sa if d > 0 else sb

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * math.sqrt(self._m)

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __neg__(self) -> QuadExt:
        return QuadExt(self._m, -self._a, -self._b)

    def __pos__(self) -> QuadExt:
        return self

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self._m, self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self._m, self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        return QuadExt(self._m, a * c + self._m * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadExt(self._m, self._a / n, -self._b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> QuadExt:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExt(self._m, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            if other._m != self._m:
                # distinct fields intersect only in Q
                return self._b == 0 and other._b == 0 and self._a == other._a
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._m, self._a, self._b))

    def __repr__(self) -> str:
        return f"QuadExt({self._m}, {self._a!s}, {self._b!s})"

    def __str__(self) -> str:
        op = "+" if self._b >= 0 else "-"
        return f"{self._a}{op}{abs(self._b)}*sqrt({self._m})"
