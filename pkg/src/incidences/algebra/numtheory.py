"""Cyclotomic and trigonometric algebraic numbers.

The central object is ``y_k = (1 + 2 cos(2 pi / k))^2``. Its rationality for
``k = 3, 4, 6`` (and only those) decides whether an extended regular k-gon can
be moved into the integer lattice by a projective map; its degree over Q for
larger k controls the same question for points of bounded algebraic degree.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DomainError
from .poly import IntPoly, interpolate, resultant, squarefree_part
from .quadratic import QuadExt, squarefree_decompose

ROOT_MATCH_TOL = 1e-9
"""Tolerance used to pick the root of an annihilator matching a float evaluation."""

_CYCLOTOMIC_CACHE_MAX = 256
_cyclotomic_cache: dict[int, IntPoly] = {}


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def totient(n: int) -> int:
    if n < 1:
        raise DomainError(f"totient needs n >= 1, got {n}")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise DomainError("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def cyclotomic(n: int) -> IntPoly:
    """n-th cyclotomic polynomial, by exact division of ``z^n - 1`` by the Phi_d, d | n, d < n."""
    if n < 1:
        raise DomainError(f"cyclotomic polynomial needs n >= 1, got {n}")
    hit = _cyclotomic_cache.get(n)
    if hit is not None:
        return hit
    poly = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            poly = poly // cyclotomic(d)
    if n <= _CYCLOTOMIC_CACHE_MAX:
        _cyclotomic_cache[n] = poly
    return poly


def _z_plus_inverse_powers(D: int) -> list[IntPoly]:
    """P_j(x) with ``z^j + z^-j = P_j(z + 1/z)`` for j = 0..D (P_0 = 2)."""
    x = IntPoly.x()
    out = [IntPoly([2]), x]
    for _ in range(2, D + 1):
        out.append(x * out[-1] - out[-2])
    return out[: D + 1]


def minpoly_two_cos(n: int) -> IntPoly:
    """Minimal polynomial over Q of ``2 cos(2 pi / n)``; monic of degree phi(n)/2.

    >>> minpoly_two_cos(5)
    IntPoly([-1, 1, 1])
    """
    if n < 3:
        raise DomainError(f"minpoly_two_cos needs n >= 3, got {n}")
    phi = cyclotomic(n)
    c = phi.coeffs
    D = phi.degree // 2
    assert all(c[i] == c[2 * D - i] for i in range(2 * D + 1)), "cyclotomic polynomial not palindromic"
    P = _z_plus_inverse_powers(D)
    out = IntPoly([c[D]])
    for j in range(1, D + 1):
        out = out + P[j] * c[D + j]
    return out


def annihilator_shifted_square(n: int) -> IntPoly:
    """Integer polynomial vanishing at ``(1 + 2 cos(2 pi / n))^2``.

    Computed as ``Res_x(M(x), y - (1 + x)^2)`` with ``M = minpoly_two_cos(n)``:
    the resultant is evaluated at ``phi(n)/2 + 1`` integer values of ``y`` and
    interpolated. The result is monic of degree phi(n)/2 (it is the
    characteristic polynomial of ``(1 + x)^2`` on Q[x]/M, hence a power of
    the minimal polynomial of ``y``).
    """
    M = minpoly_two_cos(n)
    D = M.degree
    square = IntPoly([1, 2, 1])  # (1 + x)^2
    ys = list(range(D + 1))
    vals = [resultant(M, IntPoly([y]) - square) for y in ys]
    coeffs = interpolate(ys, vals)
    assert all(c.denominator == 1 for c in coeffs)
    return IntPoly([int(c) for c in coeffs])


def _root_bound(p: IntPoly) -> float:
    """Fujiwara bound on the modulus of the roots."""
    n = p.degree
    log_lc = math.log(abs(p.leading))
    best = 0.0
    for i in range(1, n + 1):
        a = abs(p.coeffs[n - i])
        if a == 0:
            continue
        # (a / lc)^(1/i), with a halved for the constant term; logs keep big ints finite
        log_ratio = math.log(a) - log_lc - (math.log(2) if i == n else 0.0)
        best = max(best, math.exp(log_ratio / i))
    return 2.0 * best


def _homogeneous_eval(coeffs, num: int, den: int) -> int:
    """``den^n * p(num/den)`` as an integer."""
    acc = 0
    for i, c in enumerate(reversed(coeffs)):
        acc = acc * num + c * den**i
    return acc


def _candidate_numerators(a0: int, limit: int) -> list[int]:
    a0 = abs(a0)
    if limit < 1:
        return []
    if limit <= 2_000_000:
        return [r for r in range(1, min(limit, a0) + 1) if a0 % r == 0]
    if a0 <= 10**14:
        return [r for r in divisors(a0) if r <= limit]
    raise DomainError("rational root search space too large")


def rational_roots(p: IntPoly) -> set[Fraction]:
    """All rational roots of a nonzero integer polynomial (rational root theorem).

    >>> sorted(rational_roots(IntPoly([-1, -1, 2])))
    [Fraction(-1, 2), Fraction(1, 1)]
    """
    if p.is_zero():
        raise DomainError("rational roots of the zero polynomial")
    coeffs = list(p.coeffs)
    roots: set[Fraction] = set()
    if coeffs[0] == 0:
        roots.add(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    q = IntPoly(coeffs)
    if q.degree <= 0:
        return roots
    a0, lc = q.coeffs[0], q.leading
    bound = _root_bound(q) * 1.0001 + 1.0
    n = q.degree
    for s in divisors(lc):
        limit = int(math.floor(bound * s))
        for r in _candidate_numerators(a0, limit):
            if math.gcd(r, s) != 1:
                continue
            for num in (r, -r):
                if _homogeneous_eval(q.coeffs, num, s) == 0:
                    roots.add(Fraction(num, s))
    return roots


def shifted_square_float(k: int) -> float:
    return (1.0 + 2.0 * math.cos(2.0 * math.pi / k)) ** 2


def shifted_square_is_rational(k: int) -> Fraction | None:
    """The rational value of ``(1 + 2 cos(2 pi / k))^2``, or None when it is irrational."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    target = shifted_square_float(k)
    for r in rational_roots(annihilator_shifted_square(k)):
        if abs(float(r) - target) <= ROOT_MATCH_TOL:
            return r
    return None


def shifted_square_minpoly(k: int) -> IntPoly:
    """Minimal polynomial of ``y_k``: the square-free part of the annihilator.

    The annihilator is a characteristic polynomial, so it is a power of the
    minimal polynomial and its square-free part is already irreducible.
    """
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    return squarefree_part(annihilator_shifted_square(k))


def degree_of_shifted_square(k: int) -> int:
    """Exact degree of ``(1 + 2 cos(2 pi / k))^2`` over Q."""
    return shifted_square_minpoly(k).degree


def shifted_square_exact(k: int) -> Fraction | QuadExt | None:
    """Exact value of ``y_k`` when its degree is at most 2, otherwise None."""
    mp = shifted_square_minpoly(k)
    target = shifted_square_float(k)
    if mp.degree == 1:
        return Fraction(-mp.coeffs[0], mp.coeffs[1])
    if mp.degree != 2:
        return None
    root = quadratic_root_near(mp, target)
    assert abs(float(root) - target) <= ROOT_MATCH_TOL
    return root


def quadratic_root_near(p: IntPoly, approx: float) -> Fraction | QuadExt:
    """The exact root of an integer quadratic closest to ``approx``."""
    if p.degree != 2:
        raise DomainError(f"expected a quadratic, got degree {p.degree}")
    c0, c1, c2 = p.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        raise DomainError("quadratic has no real roots")
    if disc == 0:
        return Fraction(-c1, 2 * c2)
    s, m = squarefree_decompose(disc)
    if m == 1:
        cands = [Fraction(-c1 + sg * s, 2 * c2) for sg in (1, -1)]
    else:
        cands = [QuadExt(m, Fraction(-c1, 2 * c2), Fraction(sg * s, 2 * c2)) for sg in (1, -1)]
    return min(cands, key=lambda r: abs(float(r) - approx))


def k_of_d(d: int, c: Fraction | int = 1) -> int:
    """Smallest prime ``p >= 3`` with ``(p + 1)/4 > d^c``.

    ``c`` may be any positive rational; the comparison is done exactly as
    ``(p + 1)^den > 4^den * d^num`` for ``c = num/den``.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    c = Fraction(c)
    if c <= 0:
        raise DomainError(f"exponent c must be positive, got {c}")
    num, den = c.numerator, c.denominator
    rhs = 4**den * d**num
    p = 3
    while True:
        if is_prime(p) and (p + 1) ** den > rhs:
            return p
        p += 2


def cos_degree(n: int) -> int:
    """Degree of cos(2 pi m / n) for gcd(m, n) = 1, read off the constructed minimal polynomial."""
    if n in (1, 2):
        return 1
    return minpoly_two_cos(n).degree


def rational_cosines(nmax: int) -> dict[int, Fraction]:
    """Denominators ``n <= nmax`` for which cos(2 pi / n) is rational, with the value."""
    out = {}
    for n in range(1, nmax + 1):
        if cos_degree(n) == 1:
            if n <= 2:
                out[n] = Fraction(1 if n == 1 else -1)
            else:
                mp = minpoly_two_cos(n)
                out[n] = Fraction(-mp.coeffs[0], 2 * mp.coeffs[1])
    return out


def quadratic_cosines(nmax: int) -> dict[int, QuadExt]:
    """Denominators ``n <= nmax`` for which cos(2 pi / n) is a quadratic irrational, with the value."""
    out = {}
    for n in range(3, nmax + 1):
        mp = minpoly_two_cos(n)
        if mp.degree == 2:
            two_cos = quadratic_root_near(mp, 2 * math.cos(2 * math.pi / n))
            out[n] = two_cos / 2
    return out
