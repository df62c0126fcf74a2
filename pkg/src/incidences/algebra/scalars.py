"""The coordinate algebra: Fraction | QuadExt | float.

Exact kinds (``Fraction`` and :class:`QuadExt`) obey the field axioms exactly.
Floats never compare for equality directly; callers pass a tolerance.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

from ..errors import DomainError, FieldMismatchError
from .quadratic import QuadExt

Scalar = Union[Fraction, QuadExt, float]

RATIONAL = "rational"
QUADRATIC = "quadratic"
FLOAT = "float"

_QUAD_RE = re.compile(
    r"^\s*(?P<a>[-+]?\d+(?:/\d+)?)\s*(?P<op>[-+])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<m>\d+)\s*\)\s*$"
)
_RAT_RE = re.compile(r"^\s*[-+]?\d+(?:/\d+)?\s*$")


def normalize(x) -> Scalar:
    """Ints become Fractions and rational QuadExts are demoted to Fractions."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    if isinstance(x, (Fraction, QuadExt, float)):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def kind_of(x) -> str:
    if isinstance(x, float):
        return FLOAT
    if isinstance(x, QuadExt) and x.b != 0:
        return QUADRATIC
    return RATIONAL


def common_kind(values: Iterable) -> tuple[str, int | None]:
    """Kind and (for quadratic data) the field parameter ``m`` of a collection."""
    kind, m = RATIONAL, None
    for v in values:
        k = kind_of(v)
        if k == FLOAT:
            return FLOAT, None
        if k == QUADRATIC:
            if m is not None and v.m != m:
                raise FieldMismatchError(f"mixed fields sqrt({m}) and sqrt({v.m})")
            m = v.m
            kind = QUADRATIC
    return kind, m


def is_exact(x) -> bool:
    return not isinstance(x, float)


def to_float(x) -> float:
    return float(x)


def sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, float):
        return abs(x) <= tol
    return not x


def promote(x, m: int) -> QuadExt:
    if isinstance(x, QuadExt):
        if x.m != m:
            raise FieldMismatchError(f"cannot promote element of Q(sqrt({x.m})) to Q(sqrt({m}))")
        return x
    if isinstance(x, float):
        raise DomainError("floats cannot be promoted to an exact field")
    return QuadExt(m, x, 0)


def format_scalar(x) -> str:
    """Render ``p/q`` (or ``p``), ``a+b*sqrt(m)``, or a float literal."""
    x = normalize(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def parse_scalar(s) -> Scalar:
    if isinstance(s, (int, float, Fraction, QuadExt)) and not isinstance(s, bool):
        return normalize(s)
    if not isinstance(s, str):
        raise DomainError(f"cannot parse scalar from {s!r}")
    if _RAT_RE.match(s):
        return Fraction(s.strip())
    mt = _QUAD_RE.match(s)
    if mt:
        b = Fraction(mt["b"])
        if mt["op"] == "-":
            b = -b
        return normalize(QuadExt(int(mt["m"]), Fraction(mt["a"]), b))
    try:
        v = float(s)
    except ValueError:
        raise DomainError(f"cannot parse scalar from {s!r}") from None
    if not math.isfinite(v):
        raise DomainError(f"non-finite scalar {s!r}")
    return v
