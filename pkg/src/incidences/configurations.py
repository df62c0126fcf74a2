"""Point-line configurations and their incidence bookkeeping."""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .algebra.scalars import FLOAT, QUADRATIC, RATIONAL, common_kind
from .errors import DegenerateInputError, DomainError
from .projective import (
    FLOAT_TOL,
    ProjLine,
    ProjPoint,
    extended_gon,
    extended_gon_labels,
    incident,
)

log = logging.getLogger(__name__)

Incidence = tuple[int, int]

_CHUNK = 1 << 22  # matrix entries per numpy block


def _integer_matrix(objs: Sequence) -> np.ndarray | None:
    """Rows of integer coordinates if every triple is integral and small enough for int64 products."""
    rows = []
    for o in objs:
        row = []
        for c in o.coords:
            if not isinstance(c, Fraction) or c.denominator != 1:
                return None
            row.append(int(c))
        rows.append(row)
    if not rows:
        return np.zeros((0, 3), dtype=np.int64)
    arr = np.array(rows, dtype=object)
    if np.abs(arr).max() >= 1 << 30:
        return None
    return arr.astype(np.int64)


def compute_incidences(
    points: Sequence[ProjPoint], lines: Sequence[ProjLine], tol: float = FLOAT_TOL
) -> tuple[set[Incidence], int]:
    """Geometric incidence set and the number of float pairs within 1000x tolerance that were rejected."""
    if not points or not lines:
        return set(), 0
    kind, _ = common_kind(c for o in list(points) + list(lines) for c in o.coords)
    out: set[Incidence] = set()
    if kind == FLOAT:
        P = np.array([[float(c) for c in p.coords] for p in points])
        L = np.array([[float(c) for c in ln.coords] for ln in lines])
        pn = np.linalg.norm(P, axis=1)
        ln_ = np.linalg.norm(L, axis=1)
        ambiguous = 0
        step = max(1, _CHUNK // len(lines))
        for s in range(0, len(points), step):
            dots = np.abs(P[s : s + step] @ L.T)
            scale = np.outer(pn[s : s + step], ln_)
            hit = dots <= tol * scale
            ambiguous += int(np.count_nonzero(~hit & (dots <= 1000 * tol * scale)))
            for i, j in zip(*np.nonzero(hit)):
                out.add((s + int(i), int(j)))
        if ambiguous:
            log.warning("%d point-line pairs lie within 1000x of the incidence tolerance", ambiguous)
        return out, ambiguous
    if kind == RATIONAL:
        P = _integer_matrix(points)
        L = _integer_matrix(lines)
        if P is not None and L is not None:
            step = max(1, _CHUNK // len(lines))
            for s in range(0, len(points), step):
                dots = P[s : s + step] @ L.T
                for i, j in zip(*np.nonzero(dots == 0)):
                    out.add((s + int(i), int(j)))
            return out, 0
    for i, p in enumerate(points):
        for j, ln in enumerate(lines):
            if incident(p, ln, tol):
                out.add((i, j))
    return out, 0


class Configuration:
    """Indexed points and lines with their incidence set.

    ``incidences`` may be supplied (e.g. by a generator that knows them by
    construction); otherwise they are computed geometrically on first use.
    """

    def __init__(
        self,
        points: Iterable[ProjPoint],
        lines: Iterable[ProjLine],
        incidences: Iterable[Incidence] | None = None,
        provenance: str = "",
        point_labels: Sequence[str] | None = None,
        line_labels: Sequence[str] | None = None,
    ) -> None:
        self.points: tuple[ProjPoint, ...] = tuple(points)
        self.lines: tuple[ProjLine, ...] = tuple(lines)
        self.provenance = provenance
        self.point_labels = tuple(point_labels) if point_labels is not None else None
        self.line_labels = tuple(line_labels) if line_labels is not None else None
        if self.point_labels is not None and len(self.point_labels) != len(self.points):
            raise DomainError("point_labels length does not match points")
        if self.line_labels is not None and len(self.line_labels) != len(self.lines):
            raise DomainError("line_labels length does not match lines")
        self._incidences: frozenset[Incidence] | None = None
        self.ambiguous_pairs = 0
        if incidences is not None:
            inc = frozenset((int(i), int(j)) for i, j in incidences)
            for i, j in inc:
                if not (0 <= i < len(self.points) and 0 <= j < len(self.lines)):
                    raise DomainError(f"incidence ({i}, {j}) out of range")
            self._incidences = inc
        self._point_lines: list[frozenset[int]] | None = None
        self._line_points: list[frozenset[int]] | None = None

    @property
    def incidences(self) -> frozenset[Incidence]:
        if self._incidences is None:
            inc, amb = compute_incidences(self.points, self.lines)
            self._incidences = frozenset(inc)
            self.ambiguous_pairs = amb
        return self._incidences

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    @property
    def scalar_kind(self) -> tuple[str, int | None]:
        return common_kind(c for o in self.points + self.lines for c in o.coords)

    def _adjacency(self) -> None:
        pl: list[set[int]] = [set() for _ in self.points]
        lp: list[set[int]] = [set() for _ in self.lines]
        for i, j in self.incidences:
            pl[i].add(j)
            lp[j].add(i)
        self._point_lines = [frozenset(s) for s in pl]
        self._line_points = [frozenset(s) for s in lp]

    @property
    def point_lines(self) -> list[frozenset[int]]:
        if self._point_lines is None:
            self._adjacency()
        return self._point_lines

    @property
    def line_points(self) -> list[frozenset[int]]:
        if self._line_points is None:
            self._adjacency()
        return self._line_points

    def point_degrees(self) -> list[int]:
        return [len(s) for s in self.point_lines]

    def line_degrees(self) -> list[int]:
        return [len(s) for s in self.line_points]

    def point_label(self, i: int) -> str:
        return self.point_labels[i] if self.point_labels else f"p{i}"

    def line_label(self, j: int) -> str:
        return self.line_labels[j] if self.line_labels else f"l{j}"

    def labeled_incidences(self) -> set[tuple[str, str]]:
        return {(self.point_label(i), self.line_label(j)) for i, j in self.incidences}

    def restrict(self, keep_points: Sequence[int], keep_lines: Sequence[int], provenance: str | None = None) -> Configuration:
        """Induced sub-configuration on the given indices (order preserved, incidences reindexed)."""
        kp = sorted(set(keep_points))
        kl = sorted(set(keep_lines))
        pmap = {old: new for new, old in enumerate(kp)}
        lmap = {old: new for new, old in enumerate(kl)}
        inc = [(pmap[i], lmap[j]) for i, j in self.incidences if i in pmap and j in lmap]
        return Configuration(
            [self.points[i] for i in kp],
            [self.lines[j] for j in kl],
            inc,
            provenance if provenance is not None else self.provenance,
            [self.point_label(i) for i in kp],
            [self.line_label(j) for j in kl],
        )

    def duplicates(self) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """Index pairs of equal points and of equal lines (canonical-form equality)."""

        def dup(objs):
            if all(o.is_exact for o in objs):
                seen: dict = {}
                out = []
                for i, o in enumerate(objs):
                    if o in seen:
                        out.append((seen[o], i))
                    else:
                        seen[o] = i
                return out
            return [(i, j) for i in range(len(objs)) for j in range(i + 1, len(objs)) if objs[i] == objs[j]]

        return dup(self.points), dup(self.lines)

    def validate(self) -> None:
        """Raise if there are duplicate points or lines, or if stored incidences disagree with the geometry."""
        dp, dl = self.duplicates()
        if dp or dl:
            raise DegenerateInputError(f"duplicate points {dp[:3]} / lines {dl[:3]}")
        geo, _ = compute_incidences(self.points, self.lines)
        if self._incidences is not None and set(self._incidences) != geo:
            raise DegenerateInputError("stored incidences disagree with the geometry")

    def __repr__(self) -> str:
        return f"Configuration({self.n_points} points, {self.n_lines} lines, provenance={self.provenance!r})"


def count_incidences(c: Configuration) -> int:
    return len(c.incidences)


def erdos_config(A: int) -> Configuration:
    """Standard lattice configuration with N = A^3 points and N lines.

    Points ``(a, b)`` with ``0 <= a < A``, ``0 <= b < A^2`` and lines
    ``y = s x + t`` with ``0 <= s < A``, ``0 <= t < A^2``; point index
    ``a * A^2 + b``, line index ``s * A^2 + t``. Incidences are enumerated
    from the lattice structure.
    """
    if A < 2:
        raise DomainError(f"A must be >= 2, got {A}")
    A2 = A * A
    points = [ProjPoint(a, b, 1) for a in range(A) for b in range(A2)]
    lines = [ProjLine(s, -1, t) for s in range(A) for t in range(A2)]
    inc = []
    for s in range(A):
        for t in range(A2):
            j = s * A2 + t
            for x in range(A):
                y = s * x + t
                if y >= A2:
                    break
                inc.append((x * A2 + y, j))
    return Configuration(
        points, lines, inc, f"erdos(A={A})",
        [f"({a},{b})" for a in range(A) for b in range(A2)],
        [f"y={s}x+{t}" for s in range(A) for t in range(A2)],
    )


def erdos_incidence_count(A: int) -> int:
    """Closed form ``A^4 - (A (A - 1) / 2)^2``."""
    return A**4 - (A * (A - 1) // 2) ** 2


def extended_gon_config(k: int, mode: str = "float") -> Configuration:
    pts, lines = extended_gon(k, mode)
    pl, ll = extended_gon_labels(k)
    return Configuration(pts, lines, None, f"extended-gon(k={k},{mode})", pl, ll)


def from_affine(points: Iterable[tuple], lines: Iterable[tuple] = (), provenance: str = "") -> Configuration:
    """Build from affine ``(x, y)`` points and ``(a, b, c)`` line coefficients."""
    return Configuration(
        [ProjPoint(x, y, 1) for x, y in points],
        [ProjLine(a, b, c) for a, b, c in lines],
        None, provenance,
    )


def lines_through_pairs(points: Sequence[ProjPoint]) -> list[ProjLine]:
    """All distinct lines spanned by pairs of the given points."""
    from .projective import line_through

    seen: dict = {}
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            L = line_through(points[i], points[j])
            seen.setdefault(L, None)
    return list(seen)


class MatchingGraph:
    """Graph on the points of a configuration: along each line, points 1-2, 3-4, ... are joined."""

    def __init__(self, config: Configuration, edges: Sequence[tuple[int, int, int]], chart: str = "primal") -> None:
        self.config = config
        self.edges: tuple[tuple[int, int, int], ...] = tuple(edges)  # (u, v, supporting line)
        self.chart = chart

    @property
    def n_vertices(self) -> int:
        return self.config.n_points

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def lower_bound_holds(self) -> bool:
        return self.n_edges >= (len(self.config.incidences) - self.config.n_lines) / 2

    def same_line_disjoint(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for u, v, j in self.edges:
            for w in (u, v):
                if (w, j) in seen:
                    return False
                seen.add((w, j))
        return True

    def summary(self) -> dict:
        I = len(self.config.incidences)
        return {
            "chart": self.chart,
            "vertices": self.n_vertices,
            "edges": self.n_edges,
            "incidences": I,
            "lines": self.config.n_lines,
            "edge_lower_bound": (I - self.config.n_lines) / 2,
            "lower_bound_holds": self.lower_bound_holds(),
        }


def _order_key(p: ProjPoint, idx: int, vertical: bool):
    # points at infinity go after every affine point on the line
    if p.at_infinity:
        return (1, 0, 0, idx)
    x, y = p.xy()
    if not p.is_exact:
        x, y = float(x), float(y)
    if vertical:
        return (0, y, 0, idx)
    return (0, x, y, idx)


def matching_graph(c: Configuration, chart: str = "primal") -> MatchingGraph:
    """Left-to-right order along each line (ties by y, then index); vertical lines by (y, index)."""
    edges = []
    for j, L in enumerate(c.lines):
        on = c.line_points[j]
        if len(on) < 2:
            continue
        vertical = L.is_vertical
        order = sorted(on, key=lambda i: _order_key(c.points[i], i, vertical))
        for a in range(0, len(order) - 1, 2):
            u, v = order[a], order[a + 1]
            edges.append((min(u, v), max(u, v), j))
    edges.sort()
    return MatchingGraph(c, edges, chart)


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def _segments(g: MatchingGraph):
    pts = g.config.points
    for u, v, _ in g.edges:
        if pts[u].at_infinity or pts[v].at_infinity:
            raise DomainError("matching-graph edge has an endpoint at infinity; no straight-line drawing")
    return [(u, v) for u, v, _ in g.edges]


def _integer_coords(points: Sequence[ProjPoint]):
    """Affine coordinates scaled to a common integer grid, or None if any is irrational."""
    xy = []
    den = 1
    for p in points:
        if p.at_infinity:
            xy.append(None)
            continue
        x, y = p.xy()
        if not isinstance(x, Fraction) or not isinstance(y, Fraction):
            return None
        xy.append((x, y))
        for v in (x, y):
            den = den * v.denominator // math.gcd(den, v.denominator)
    return [None if t is None else (int(t[0] * den), int(t[1] * den)) for t in xy]


def straightline_crossings(g: MatchingGraph, tol: float = FLOAT_TOL) -> int:
    """Number of pairs of edge segments that cross at an interior point.

    Edges sharing an endpoint are skipped. Orientation signs are exact for
    rational and quadratic coordinates; float coordinates use ``tol`` relative
    to the segment scale. Two segments overlapping along a common line raise
    :class:`DegenerateInputError`.
    """
    segs = _segments(g)
    if len(segs) < 2:
        return 0
    pts = g.config.points
    icoords = _integer_coords(pts)
    kind = g.config.scalar_kind[0]
    if icoords is not None:
        big = max((max(abs(a), abs(b)) for t in icoords if t is not None for a, b in [t]), default=0)
        dtype = np.int64 if big < (1 << 28) else object
        C = np.array([icoords[u] + icoords[v] for u, v in segs], dtype=dtype)
        return _count_numpy(C, segs, exact=True, tol=0.0)
    if kind == FLOAT:
        C = np.array([[float(t) for t in pts[u].xy()] + [float(t) for t in pts[v].xy()] for u, v in segs])
        return _count_numpy(C, segs, exact=False, tol=tol)
    xy = {i: pts[i].xy() for s in segs for i in s}
    count = 0
    for a in range(len(segs)):
        u1, v1 = segs[a]
        A, B = xy[u1], xy[v1]
        for b in range(a + 1, len(segs)):
            u2, v2 = segs[b]
            if len({u1, v1, u2, v2}) < 4:
                continue
            Cp, D = xy[u2], xy[v2]
            o1 = _orient_exact(*A, *B, *Cp)
            o2 = _orient_exact(*A, *B, *D)
            o3 = _orient_exact(*Cp, *D, *A)
            o4 = _orient_exact(*Cp, *D, *B)
            if o1 == o2 == o3 == o4 == 0:
                _check_overlap([A, B], [Cp, D])
            elif o1 * o2 < 0 and o3 * o4 < 0:
                count += 1
    return count


def _check_overlap(s1, s2) -> None:
    key = (lambda p: (p[0], p[1]))
    lo1, hi1 = sorted(s1, key=key)
    lo2, hi2 = sorted(s2, key=key)
    if key(lo1) < key(hi2) and key(lo2) < key(hi1):
        raise DegenerateInputError("collinear overlapping segments")


def _count_numpy(C: np.ndarray, segs, exact: bool, tol: float) -> int:
    n = len(segs)
    ends = np.array(segs)
    total = 0
    for a in range(n - 1):
        ax, ay, bx, by = C[a]
        rest = C[a + 1 :]
        cx, cy, dx, dy = rest[:, 0], rest[:, 1], rest[:, 2], rest[:, 3]
        d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
        d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
        d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
        if exact:
            s = [np.array([(v > 0) - (v < 0) for v in d]) if d.dtype == object else np.sign(d) for d in (d1, d2, d3, d4)]
        else:
            la = math.hypot(bx - ax, by - ay)
            eps = tol * np.maximum(la * np.hypot(dx - cx, dy - cy), 1e-300)
            s = [np.where(np.abs(d) <= eps, 0, np.sign(d)) for d in (d1, d2, d3, d4)]
        s1, s2, s3, s4 = s
        shared = (
            (ends[a + 1 :, 0] == ends[a, 0]) | (ends[a + 1 :, 0] == ends[a, 1])
            | (ends[a + 1 :, 1] == ends[a, 0]) | (ends[a + 1 :, 1] == ends[a, 1])
        )
        cross = (s1 * s2 < 0) & (s3 * s4 < 0) & ~shared
        total += int(np.count_nonzero(cross))
        flat = (s1 == 0) & (s2 == 0) & (s3 == 0) & (s4 == 0) & ~shared
        for b in np.nonzero(flat)[0]:
            r = rest[b]
            _check_overlap([(ax, ay), (bx, by)], [(r[0], r[1]), (r[2], r[3])])
    return total


def crossing_inequality_report(c: Configuration, t: int = 2, chart: str = "dual") -> dict:
    """Diagnostic combining the matching-graph crossing count with the crossing-lemma shape.

    In the dual chart the vertices are the ``n`` points dual to the lines of
    ``c`` and the ``m`` dual lines come from its points; in the primal chart
    the roles are the configuration's own. ``X`` is the straight-line crossing
    count of the drawing, an upper bound for the crossing number, and is
    always at most ``C(m, 2)``.
    """
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    if chart == "dual":
        from .projective import dualize

        dp, dl = dualize(c.points, c.lines)
        inc = [(j, i) for i, j in c.incidences]
        host = Configuration(dp, dl, inc, f"dual({c.provenance})")
    elif chart == "primal":
        host = c
    else:
        raise DomainError(f"chart must be 'dual' or 'primal', got {chart!r}")
    g = matching_graph(host, chart)
    n, m, e = host.n_points, host.n_lines, g.n_edges
    X = straightline_crossings(g)
    r = 1.0 / (t - 1)
    c_hat = X * n ** (2 + r) / e ** (3 + r) if e > 0 else float("nan")
    report = {
        "chart": chart,
        "t": t,
        "incidences": len(c.incidences),
        "n": n,
        "m": m,
        "e": e,
        "straight_line_crossings": X,
        "crossing_upper_bound": math.comb(m, 2),
        "within_upper_bound": X <= math.comb(m, 2),
        "c_hat": c_hat,
        "flags": [],
    }
    if e < 4 * n:
        report["flags"].append("crossing lemma precondition unmet (e < 4n)")
    return report


def embedded_hexagon_config() -> Configuration:
    """Integer-lattice image of the extended hexagon under the published map (12 points, 16 lines)."""
    from .projective import apply, apply_line, chord_pairs, line_through, paper_hexagon, paper_k6_map

    pts, labels = paper_hexagon()
    f = paper_k6_map()
    lines = [line_through(pts[i - 1], pts[j - 1]) for i, j in chord_pairs(6)] + [ProjLine.at_infinity()]
    _, line_labels = extended_gon_labels(6)
    return Configuration(
        [apply(f, p) for p in pts], [apply_line(f, L) for L in lines], None,
        "extended hexagon under the published integer map", labels, line_labels,
    )
