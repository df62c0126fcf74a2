"""Projective plane over exact or float scalars.

Points and lines are homogeneous triples kept in canonical form, so exact
equality is plain tuple equality. Points at infinity (z = 0) are ordinary
points here; nothing runs in an affine chart unless asked to.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.numtheory import is_prime
from .algebra.quadratic import QuadExt
from .algebra.scalars import FLOAT, QUADRATIC, RATIONAL, common_kind, format_scalar, normalize, parse_scalar
from .errors import DegenerateInputError, DomainError, UnsupportedFieldError

FLOAT_TOL = 1e-9
"""Relative incidence tolerance for float geometry: |<L, p>| <= tol * |L| * |p|."""


def _rational_parts(v) -> list[Fraction]:
    if isinstance(v, QuadExt):
        return [v.a, v.b]
    return [v]


def _canonical(coords: Sequence) -> tuple:
    vals = [normalize(c) for c in coords]
    if len(vals) != 3:
        raise DomainError(f"expected 3 homogeneous coordinates, got {len(vals)}")
    kind, _ = common_kind(vals)
    if kind == FLOAT:
        f = [float(v) for v in vals]
        nrm = math.sqrt(sum(v * v for v in f))
        if nrm == 0.0 or not math.isfinite(nrm):
            raise DegenerateInputError("all homogeneous coordinates are zero")
        if abs(nrm - 1.0) > 1e-15:  # keeps re-canonicalization (e.g. after JSON) bit-stable
            f = [v / nrm for v in f]
        for v in reversed(f):
            if abs(v) > 1e-12:
                if v < 0:
                    f = [-w for w in f]
                break
        return tuple(f)
    last = next((v for v in reversed(vals) if v), None)
    if last is None:
        raise DegenerateInputError("all homogeneous coordinates are zero")
    vals = [normalize(v / last) for v in vals]
    parts = [p for v in vals for p in _rational_parts(v)]
    den = 1
    for p in parts:
        den = den * p.denominator // math.gcd(den, p.denominator)
    g = 0
    for p in parts:
        g = math.gcd(g, int(p * den))
    scale = Fraction(den, g)
    return tuple(normalize(v * scale) for v in vals)


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _norm(u) -> float:
    return math.sqrt(sum(float(c) ** 2 for c in u))


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


class _Homogeneous:
    __slots__ = ("coords", "kind")

    def __init__(self, x, y, z) -> None:
        self.coords = _canonical((x, y, z))
        self.kind = common_kind(self.coords)[0]

    @classmethod
    def from_coords(cls, coords: Iterable):
        x, y, z = coords
        return cls(x, y, z)

    @classmethod
    def parse(cls, items: Sequence[str]):
        return cls(*(parse_scalar(s) for s in items))

    @property
    def is_exact(self) -> bool:
        return self.kind != FLOAT

    def to_float(self):
        return type(self)(*(float(c) for c in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self.coords == other.coords
        u = [float(c) for c in self.coords]
        v = [float(c) for c in other.coords]
        return _norm(_cross(u, v)) <= FLOAT_TOL * _norm(u) * _norm(v)

    def __hash__(self) -> int:
        if self.is_exact:
            return hash(self.coords)
        return hash(tuple(round(c, 6) + 0.0 for c in self.coords))

    def to_strings(self) -> list[str]:
        return [format_scalar(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + ":".join(self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self}"


class ProjPoint(_Homogeneous):
    """Point ``[x:y:z]`` of the projective plane."""

    __slots__ = ()

    @classmethod
    def affine(cls, x, y) -> ProjPoint:
        return cls(x, y, 1)

    @property
    def at_infinity(self) -> bool:
        z = self.coords[2]
        if self.kind == FLOAT:
            return abs(z) <= 1e-12
        return not z

    def xy(self):
        """Affine coordinates ``(x/z, y/z)``; raises for points at infinity."""
        if self.at_infinity:
            raise DomainError(f"{self} lies at infinity")
        x, y, z = self.coords
        return normalize(x / z), normalize(y / z)


class ProjLine(_Homogeneous):
    """Line ``a x + b y + c z = 0``."""

    __slots__ = ()

    @classmethod
    def at_infinity(cls) -> ProjLine:
        return cls(0, 0, 1)

    @classmethod
    def slope_intercept(cls, slope, intercept) -> ProjLine:
        """The line ``y = slope * x + intercept``."""
        return cls(slope, -1, intercept)

    @property
    def is_vertical(self) -> bool:
        a, b, _ = self.coords
        if self.kind == FLOAT:
            return abs(b) <= 1e-12 and abs(a) > 1e-12
        return not b and bool(a)


def incident(p: ProjPoint, L: ProjLine, tol: float = FLOAT_TOL) -> bool:
    if p.is_exact and L.is_exact:
        return not _dot(p.coords, L.coords)
    u = [float(c) for c in p.coords]
    v = [float(c) for c in L.coords]
    return abs(_dot(u, v)) <= tol * _norm(u) * _norm(v)


def _join(u, v, tol: float, what: str):
    if any(isinstance(t, float) for t in u + v):
        fu = [float(t) for t in u]
        fv = [float(t) for t in v]
        c = _cross(fu, fv)
        if _norm(c) <= tol * _norm(fu) * _norm(fv):
            raise DegenerateInputError(f"{what} coincide")
        return c
    c = _cross(u, v)
    if not any(c):
        raise DegenerateInputError(f"{what} coincide")
    return c


def line_through(p: ProjPoint, q: ProjPoint, tol: float = FLOAT_TOL) -> ProjLine:
    return ProjLine.from_coords(_join(p.coords, q.coords, tol, "points"))


def meet(L1: ProjLine, L2: ProjLine, tol: float = FLOAT_TOL) -> ProjPoint:
    return ProjPoint.from_coords(_join(L1.coords, L2.coords, tol, "lines"))


def collinear(a: ProjPoint, b: ProjPoint, c: ProjPoint, tol: float = FLOAT_TOL) -> bool:
    if a.is_exact and b.is_exact and c.is_exact:
        return not _det3(a.coords, b.coords, c.coords)
    u, v, w = ([float(t) for t in p.coords] for p in (a, b, c))
    return abs(_det3(u, v, w)) <= tol * _norm(u) * _norm(v) * _norm(w)


class ProjMap:
    """Invertible 3x3 matrix acting on points by ``p -> M p``."""

    __slots__ = ("rows", "kind")

    def __init__(self, rows: Sequence[Sequence], tol: float = FLOAT_TOL) -> None:
        rows = tuple(tuple(normalize(v) for v in r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise DomainError("a projective map needs a 3x3 matrix")
        self.kind = common_kind(v for r in rows for v in r)[0]
        if self.kind == FLOAT:
            rows = tuple(tuple(float(v) for v in r) for r in rows)
        self.rows = rows
        det = self.det()
        if self.kind == FLOAT:
            scale = max(abs(v) for r in rows for v in r) ** 3
            if abs(det) <= tol * scale:
                raise DegenerateInputError("singular projective map")
        elif not det:
            raise DegenerateInputError("singular projective map")

    @classmethod
    def identity(cls) -> ProjMap:
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def det(self):
        return _det3(*self.rows)

    def cofactor(self):
        """Cofactor matrix; maps lines covariantly (``L -> cof(M) L``)."""
        r0, r1, r2 = self.rows
        return (_cross(r1, r2), _cross(r2, r0), _cross(r0, r1))

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return apply(self, p)

    def compose(self, other: ProjMap) -> ProjMap:
        """``self o other``."""
        cols = list(zip(*other.rows))
        return ProjMap([[_dot(r, c) for c in cols] for r in self.rows])

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(v) for v in r] for r in self.rows]


def apply(f: ProjMap, p: ProjPoint) -> ProjPoint:
    return ProjPoint.from_coords(tuple(_dot(r, p.coords) for r in f.rows))


def apply_line(f: ProjMap, L: ProjLine) -> ProjLine:
    # M^{-T} = cof(M) / det(M)
    return ProjLine.from_coords(tuple(_dot(row, L.coords) for row in f.cofactor()))


def cross_ratio(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint, tol: float = FLOAT_TOL):
    """Cross-ratio ``(a, b; c, d) = [ac][bd] / ([ad][bc])`` of four distinct collinear points.

    Brackets are 2x2 determinants in a coordinate pair that parametrizes the
    common line, so points at infinity need no special case. Exact inputs give
    an exact result; the value equals ``(c-a)(d-b) / ((c-b)(d-a))`` in any affine
    parameter along the line.
    """
    pts = (a, b, c, d)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise DomainError("cross-ratio needs four distinct points")
    if not (collinear(a, b, c, tol) and collinear(a, b, d, tol)):
        raise DomainError("cross-ratio needs four collinear points")
    exact = all(p.is_exact for p in pts)
    vecs = [p.coords if exact else tuple(float(t) for t in p.coords) for p in pts]
    ell = _cross(vecs[0], vecs[1])
    if exact:
        drop = next(i for i in (2, 1, 0) if ell[i])
    else:
        drop = max(range(3), key=lambda i: abs(ell[i]))
    i, j = [t for t in range(3) if t != drop]

    def br(u, v):
        return u[i] * v[j] - u[j] * v[i]

    A, B, C, D = vecs
    num = br(A, C) * br(B, D)
    den = br(A, D) * br(B, C)
    return normalize(num / den)


# Exact trigonometry at multiples of pi/6 (values in Q(sqrt 3)) and pi/4 directions.

_HALF_SQRT3 = QuadExt(3, 0, Fraction(1, 2))
_COS_PI6 = [
    Fraction(1), _HALF_SQRT3, Fraction(1, 2), Fraction(0), Fraction(-1, 2), -_HALF_SQRT3,
    Fraction(-1), -_HALF_SQRT3, Fraction(-1, 2), Fraction(0), Fraction(1, 2), _HALF_SQRT3,
]


def _cos_pi6(n: int):
    return normalize(_COS_PI6[n % 12])


def _sin_pi6(n: int):
    return _cos_pi6(3 - n)


def _direction_exact(num: int, den: int) -> ProjPoint:
    """Point at infinity in direction angle ``num * pi / den`` for den in {4, 6, 12}."""
    if (12 * num) % den:
        raise UnsupportedFieldError(f"direction {num}pi/{den} is not a multiple of pi/12")
    n12 = 12 * num // den
    if n12 % 2 == 0:
        n = n12 // 2
        return ProjPoint(_cos_pi6(n), _sin_pi6(n), 0)
    if n12 % 3 == 0:
        # odd multiple of pi/4: direction (+-1, +-1) up to the common sqrt(2)/2
        q = (n12 // 3) % 8
        sx = 1 if q in (1, 7) else -1
        sy = 1 if q in (1, 3) else -1
        return ProjPoint(sx, sy, 0)
    raise UnsupportedFieldError(f"direction {num}pi/{den} needs sqrt(2 +- sqrt 3)")


EXACT_GON_SIZES = (3, 4, 6)


def _check_mode(k: int, mode: str) -> None:
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    if mode not in ("exact", "float"):
        raise DomainError(f"mode must be 'exact' or 'float', got {mode!r}")
    if mode == "exact" and k not in EXACT_GON_SIZES:
        raise UnsupportedFieldError(f"no exact rational/Q(sqrt 3) regular {k}-gon; use mode='float'")


def regular_gon(k: int, mode: str = "float") -> list[ProjPoint]:
    """Vertices ``v_j`` (j = 1..k) at angle ``2 pi j / k`` on the unit circle."""
    _check_mode(k, mode)
    if mode == "float":
        return [ProjPoint(math.cos(2 * math.pi * j / k), math.sin(2 * math.pi * j / k), 1.0) for j in range(1, k + 1)]
    step = 12 // k  # angle 2 pi j / k = (step * j) * pi / 6
    return [ProjPoint(_cos_pi6(step * j), _sin_pi6(step * j), 1) for j in range(1, k + 1)]


def slope_points(k: int, mode: str = "float") -> list[ProjPoint]:
    """Points ``t_j`` at infinity; ``t_j`` is the direction of the chords ``v_a v_b`` with ``a + b = j + 2 (mod k)``.

    For vertices at angle ``2 pi j / k`` that chord direction is ``pi/2 + pi (j + 2) / k``.
    """
    _check_mode(k, mode)
    out = []
    for j in range(1, k + 1):
        if mode == "float":
            phi = math.pi / 2 + math.pi * (j + 2) / k
            out.append(ProjPoint(math.cos(phi), math.sin(phi), 0.0))
        else:
            # pi/2 + pi (j+2)/k = (k + 2 (j + 2)) pi / (2k)
            out.append(_direction_exact(k + 2 * (j + 2), 2 * k))
    return out


def chord_pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]


def extended_gon(k: int, mode: str = "float") -> tuple[list[ProjPoint], list[ProjLine]]:
    """Extended regular k-gon: points ``v_1..v_k, t_1..t_k`` and lines ``L_{i,j}`` (i < j) then ``L_inf``."""
    vs = regular_gon(k, mode)
    ts = slope_points(k, mode)
    lines = [line_through(vs[i - 1], vs[j - 1]) for i, j in chord_pairs(k)]
    lines.append(ProjLine.at_infinity() if mode == "exact" else ProjLine(0.0, 0.0, 1.0))
    return vs + ts, lines


def extended_gon_labels(k: int) -> tuple[list[str], list[str]]:
    points = [f"v{i}" for i in range(1, k + 1)] + [f"t{i}" for i in range(1, k + 1)]
    lines = [f"L{i},{j}" for i, j in chord_pairs(k)] + ["Linf"]
    return points, lines


# The published hexagon and map used to put an extended regular 6-gon into Z^2.

def _sqrt3(b=1) -> QuadExt:
    return QuadExt(3, 0, b)


def paper_hexagon() -> tuple[list[ProjPoint], list[str]]:
    """The hexagon in its published labeling (clockwise from ``v_1 = [-1/2 : sqrt3/2 : 1]``)."""
    h = Fraction(1, 2)
    s = _sqrt3(h)
    vs = [
        ProjPoint(-h, s, 1), ProjPoint(h, s, 1), ProjPoint(1, 0, 1),
        ProjPoint(h, -s, 1), ProjPoint(-h, -s, 1), ProjPoint(-1, 0, 1),
    ]
    inv = _sqrt3(Fraction(1, 3))  # 1/sqrt(3)
    ts = [
        ProjPoint(1, 0, 0), ProjPoint(-_sqrt3(), 1, 0), ProjPoint(-inv, 1, 0),
        ProjPoint(0, 1, 0), ProjPoint(inv, 1, 0), ProjPoint(_sqrt3(), 1, 0),
    ]
    labels = [f"v{i}" for i in range(1, 7)] + [f"t{i}" for i in range(1, 7)]
    return vs + ts, labels


def paper_k6_map() -> ProjMap:
    r = _sqrt3
    return ProjMap([[10, r(20), 40], [10, r(20), 20], [2, r(1), 0]])


PUBLISHED_K6_IMAGES = {
    "v1": "[130:90:1]", "v2": "[30:22:1]", "v3": "[25:15:1]", "v4": "[-30:10:1]",
    "v5": "[-2:3:1]", "v6": "[-15:-5:1]",
    "t1": "[5:5:1]", "t2": "[-10:-10:1]", "t3": "[50:50:0]", "t4": "[20:20:1]",
    "t5": "[14:14:1]", "t6": "[10:10:1]",
}


def _is_integer_affine(p: ProjPoint) -> bool:
    if p.at_infinity:
        return False
    x, y = p.xy()
    return all(isinstance(c, Fraction) and c.denominator == 1 for c in (x, y))


def _parse_bracket(s: str) -> ProjPoint:
    return ProjPoint.parse(s.strip("[]").split(":"))


def verify_integer_embedding_k6() -> dict:
    """Apply the published map to the exact extended hexagon and check every claim about the images.

    The mathematical checks (finite, integral, incidence-preserving, collinear
    t-images) decide ``passed``. Published images are compared verbatim; a
    mismatch is listed under ``discrepancies`` together with whether the
    printed point would even satisfy the incidences of the computed one.
    """
    pts, labels = paper_hexagon()
    f = paper_k6_map()
    vs = pts[:6]
    pairs = chord_pairs(6)
    lines = [line_through(vs[i - 1], vs[j - 1]) for i, j in pairs] + [ProjLine.at_infinity()]
    images = [apply(f, p) for p in pts]
    image_lines = [apply_line(f, L) for L in lines]

    before = {(i, j) for i, p in enumerate(pts) for j, L in enumerate(lines) if incident(p, L)}
    after = {(i, j) for i, p in enumerate(images) for j, L in enumerate(image_lines) if incident(p, L)}
    t_images = images[6:]
    t_line = line_through(t_images[0], t_images[1])

    rendered = {lab: str(img) for lab, img in zip(labels, images)}
    comparison = {}
    discrepancies = []
    for idx, lab in enumerate(labels):
        published = PUBLISHED_K6_IMAGES[lab]
        entry = {"published": published, "computed": rendered[lab], "match": published == rendered[lab]}
        if not entry["match"]:
            printed = _parse_bracket(published)
            needed = [j for (i, j) in after if i == idx]
            entry["published_satisfies_incidences"] = all(incident(printed, image_lines[j]) for j in needed)
            discrepancies.append(
                f"published f({lab})={published} differs from exact {rendered[lab]}; the printed point "
                + ("lies on all" if entry["published_satisfies_incidences"] else "misses some")
                + f" of the {len(needed)} image lines through f({lab})"
            )
        comparison[lab] = entry
    checks = {
        "finite_images": all(not p.at_infinity for p in images),
        "integer_affine": all(_is_integer_affine(p) for p in images),
        "incidences_preserved": before == after,
        "t_images_collinear": all(incident(t, t_line) for t in t_images),
        "t3_integer_and_collinear": _is_integer_affine(images[8]) and incident(images[8], t_line),
    }
    return {
        "map": f.to_strings(),
        "images": rendered,
        "incidences": len(before),
        "checks": checks,
        "comparison": comparison,
        "discrepancies": discrepancies,
        "passed": all(checks.values()),
    }


# Duality chart (a, b) <-> y = a x - b.

def _first_shear_prime(lines: Sequence[ProjLine], max_tries: int = 1000):
    """Smallest prime Q >= 7 such that the shear ``x -> x + y/Q`` leaves no vertical line, or None if none needed."""
    if not any(L.is_vertical for L in lines):
        return None
    q, tries = 7, 0
    while tries < max_tries:
        if is_prime(q):
            tries += 1
            ok = True
            for L in lines:
                a, b, _ = L.coords
                # after the shear the y-coefficient is b - a/Q
                bb = b - a / q if L.is_exact else float(b) - float(a) / q
                if (abs(bb) <= 1e-12) if not L.is_exact else not bb:
                    ok = False
                    break
            if ok:
                return q
        q += 1
    raise DegenerateInputError("could not find a shear removing vertical lines")


def shear_map(q) -> ProjMap:
    return ProjMap([[1, Fraction(1, q), 0], [0, 1, 0], [0, 0, 1]])


def dual_of_point(p: ProjPoint) -> ProjLine:
    x, y = p.xy()
    return ProjLine(x, -1, -y)


def dual_of_line(L: ProjLine) -> ProjPoint:
    a, b, c = L.coords
    if (abs(b) <= 1e-12) if not L.is_exact else not b:
        raise DegenerateInputError(f"vertical line {L} has no dual point in this chart")
    return ProjPoint(-a, c, b)


def dualize(points: Sequence[ProjPoint], lines: Sequence[ProjLine], return_shear: bool = False):
    """Dual configuration in the chart ``(a, b) <-> y = a x - b``.

    Dual point ``i`` comes from line ``i`` and dual line ``j`` from point ``j``,
    so ``(j, i)`` is an incidence of the input iff ``(i, j)`` is one of the output.
    Vertical lines are first removed by the shear ``x -> x + y/Q`` with the
    smallest admissible prime ``Q >= 7``.
    """
    if any(p.at_infinity for p in points):
        raise DegenerateInputError("points at infinity have no dual line in this chart")
    if any(L == ProjLine.at_infinity() for L in lines if L.is_exact):
        raise DegenerateInputError("the line at infinity has no dual point")
    q = _first_shear_prime(lines)
    if q is not None:
        s = shear_map(q)
        if any(not p.is_exact for p in points) or any(not L.is_exact for L in lines):
            s = ProjMap([[float(v) for v in r] for r in s.rows])
        points = [apply(s, p) for p in points]
        lines = [apply_line(s, L) for L in lines]
    dual_points = [dual_of_line(L) for L in lines]
    dual_lines = [dual_of_point(p) for p in points]
    if return_shear:
        return dual_points, dual_lines, q
    return dual_points, dual_lines


def gon_ratio_identities(k: int, mode: str = "float") -> dict:
    """Side/radius ratio and the cross-ratio ``(t_1, w; v_1, v_2)`` of the extended k-gon.

    ``w`` is the meet of the lines ``v_1 v_2`` and ``v_{k-1} v_k``; ``r = |w v_1|``
    and ``s`` is the side length. Expected values are ``2 cos(2 pi / k)`` and
    ``1 + 2 cos(2 pi / k)``. Exact mode returns the cross-ratio as an exact
    scalar; lengths are always reported as floats.
    """
    if k < 5:
        raise DomainError(f"w is finite and distinct from the vertices only for k >= 5, got {k}")
    vs = regular_gon(k, mode)
    t1 = slope_points(k, mode)[0]
    w = meet(line_through(vs[0], vs[1]), line_through(vs[k - 2], vs[k - 1]))
    if w.at_infinity:
        raise DegenerateInputError("w lies at infinity")
    (wx, wy), (ax, ay), (bx, by) = ([float(c) for c in p.xy()] for p in (w, vs[0], vs[1]))
    s = math.hypot(bx - ax, by - ay)
    r = math.hypot(ax - wx, ay - wy)
    cr = cross_ratio(t1, w, vs[0], vs[1])
    c = 2 * math.cos(2 * math.pi / k)
    return {
        "k": k, "mode": mode, "s": s, "r": r,
        "s_over_r": s / r, "expected_s_over_r": c,
        "cross_ratio": cr, "expected_cross_ratio": 1 + c,
    }
