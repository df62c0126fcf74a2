"""Univariate integer polynomials.

An :class:`IntPoly` is a tuple of Python ints, lowest degree first. Arithmetic
stays in Z[x]; gcd, remainders and resultants are computed over Q and the
results are brought back to primitive integer form.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from ..errors import DomainError


def _trim(coeffs: Sequence) -> list:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


class IntPoly:
    """Dense integer polynomial, immutable.

    >>> IntPoly([-1, 1, 1])
    IntPoly([-1, 1, 1])
    >>> IntPoly([-1, 1, 1]).degree
    2
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()) -> None:
        c = _trim(coeffs)
        for v in c:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise DomainError(f"non-integer coefficient {v}")
            elif not isinstance(v, int) or isinstance(v, bool):
                raise DomainError(f"non-integer coefficient {v!r}")
        self.coeffs: tuple[int, ...] = tuple(int(v) for v in c)

    @classmethod
    def x(cls) -> IntPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def from_rational(cls, coeffs: Sequence) -> IntPoly:
        """Clear denominators of a rational coefficient list and make it primitive."""
        c = [Fraction(v) for v in _trim(coeffs)]
        if not c:
            return cls()
        den = 1
        for v in c:
            den = den * v.denominator // math.gcd(den, v.denominator)
        return cls([int(v * den) for v in c]).primitive()

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for v in self.coeffs:
            g = math.gcd(g, v)
        return g

    def primitive(self) -> IntPoly:
        """Content 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPoly([v // g for v in self.coeffs])

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly([a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)])

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise DomainError("negative power of a polynomial")
        result, base = IntPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def compose(self, inner: IntPoly) -> IntPoly:
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divmod_exact(self, d: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division in Z[x]; requires every quotient coefficient to be integral."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [0] * max(0, len(r) - len(d.coeffs) + 1)
        lc = d.leading
        for shift in range(len(r) - len(d.coeffs), -1, -1):
            t, rem = divmod(r[shift + d.degree], lc)
            if rem:
                raise DomainError("quotient is not integral")
            q[shift] = t
            if t:
                for j, b in enumerate(d.coeffs):
                    r[shift + j] -= t * b
        return IntPoly(q), IntPoly(r)

    def __floordiv__(self, d: IntPoly) -> IntPoly:
        q, r = self.divmod_exact(d)
        if not r.is_zero():
            raise DomainError(f"{d} does not divide {self}")
        return q

    def divides(self, other: IntPoly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return rat_divmod(_fr(other), _fr(self))[1] == []

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            coef = str(mag) if (mag != 1 or i == 0) else ""
            parts.append((sign, coef + mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, t in parts[1:]:
            out += f" {s} {t}"
        return out

    def to_list(self) -> list[int]:
        return list(self.coeffs)


# Q[x] helpers on plain Fraction lists (lowest degree first, trimmed).

def _fr(p: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def rat_divmod(n: list, d: list) -> tuple[list, list]:
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(n)
    if len(r) < len(d):
        return [], _trim(r)
    q = [Fraction(0)] * (len(r) - len(d) + 1)
    lc = d[-1]
    for shift in range(len(r) - len(d), -1, -1):
        t = r[shift + len(d) - 1] / lc
        q[shift] = t
        if t:
            for j, b in enumerate(d):
                r[shift + j] -= t * b
    return _trim(q), _trim(r[: len(d) - 1])


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd in Z[x] (equivalently, monic gcd in Q[x] with denominators cleared)."""
    a, b = _fr(p), _fr(q)
    while b:
        _, r = rat_divmod(a, b)
        a, b = b, r
    return IntPoly.from_rational(a)


def squarefree_part(p: IntPoly) -> IntPoly:
    """``p / gcd(p, p')`` made primitive: the product of the distinct irreducible factors."""
    if p.is_zero():
        raise DomainError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return IntPoly([1])
    g = gcd(p, p.derivative())
    q, r = rat_divmod(_fr(p), _fr(g))
    assert not r
    return IntPoly.from_rational(q)


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant Res(p, q) over Q, by the Euclidean recurrence.

    Uses ``Res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B, R)`` where
    ``R = A mod B``, and ``Res(A, c) = c^deg A`` for a constant ``c``.
    """
    if p.is_zero() or q.is_zero():
        return 0
    a, b = _fr(p), _fr(q)
    acc = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            acc *= b[0] ** da
            break
        if da == 0:
            acc *= a[0] ** db
            break
        _, r = rat_divmod(a, b)
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2:
            acc = -acc
        acc *= b[-1] ** (da - dr)
        a, b = b, r
    assert acc.denominator == 1
    return int(acc)


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Newton interpolation through ``(xs[i], ys[i])``; exact rational coefficients, lowest first."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for d in range(deg + 1):
            new[d + 1] += poly[d]
            new[d] -= poly[d] * xs[i]
        new[0] += coef[i]
        poly = new
        deg += 1
    return _trim(poly)
