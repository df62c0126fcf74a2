"""Abstract two-sorted incidence patterns: H_k, grids and subdivided cliques."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True)
class Pattern:
    """Bipartite graph between point-vertices and line-vertices.

    ``edges`` holds ``(point index, line index)`` pairs into the two label
    tuples. Edges are oriented from points to lines; a pattern vertex is never
    matched to a host object of the other sort.
    """

    name: str
    point_vertices: tuple[str, ...]
    line_vertices: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    allow_isolated: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.point_vertices)) != len(self.point_vertices):
            raise DomainError("duplicate point-vertex labels")
        if len(set(self.line_vertices)) != len(self.line_vertices):
            raise DomainError("duplicate line-vertex labels")
        P, L = len(self.point_vertices), len(self.line_vertices)
        for i, j in self.edges:
            if not (0 <= i < P and 0 <= j < L):
                raise DomainError(f"edge ({i}, {j}) out of range")
        if not self.allow_isolated:
            pd, ld = self.point_degrees(), self.line_degrees()
            if 0 in pd or 0 in ld:
                raise DomainError(f"pattern {self.name!r} has isolated vertices")

    @classmethod
    def from_labels(cls, name: str, points: Iterable[str], lines: Iterable[str],
                    edges: Iterable[tuple[str, str]], allow_isolated: bool = False) -> Pattern:
        points, lines = tuple(points), tuple(lines)
        pi = {p: i for i, p in enumerate(points)}
        li = {l: j for j, l in enumerate(lines)}
        try:
            idx = frozenset((pi[p], li[l]) for p, l in edges)
        except KeyError as exc:
            raise DomainError(f"edge refers to unknown vertex {exc}") from None
        return cls(name, points, lines, idx, allow_isolated)

    @property
    def n_points(self) -> int:
        return len(self.point_vertices)

    @property
    def n_lines(self) -> int:
        return len(self.line_vertices)

    def point_degrees(self) -> list[int]:
        d = [0] * self.n_points
        for i, _ in self.edges:
            d[i] += 1
        return d

    def line_degrees(self) -> list[int]:
        d = [0] * self.n_lines
        for _, j in self.edges:
            d[j] += 1
        return d

    def labeled_edges(self) -> set[tuple[str, str]]:
        return {(self.point_vertices[i], self.line_vertices[j]) for i, j in self.edges}


def _mod(i: int, k: int) -> int:
    r = i % k
    return k if r == 0 else r


def _chord(a: int, b: int, k: int) -> str:
    a, b = _mod(a, k), _mod(b, k)
    if a == b:
        raise AssertionError("degenerate chord")
    return f"L{min(a, b)},{max(a, b)}"


def pattern_hk(k: int) -> Pattern:
    """Incidence graph H_k of the extended regular k-gon, built from its edge rules.

    Labels match :func:`incidences.projective.extended_gon_labels`.
    """
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    points = [f"v{i}" for i in range(1, k + 1)] + [f"t{i}" for i in range(1, k + 1)]
    lines = [f"L{i},{j}" for i in range(1, k + 1) for j in range(i + 1, k + 1)] + ["Linf"]
    edges: set[tuple[str, str]] = set()
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            edges.add((f"v{i}", f"L{i},{j}"))
            edges.add((f"v{j}", f"L{i},{j}"))
    up, down = (k + 1) // 2, k // 2
    for i in range(1, up + 1):
        for s in range(down):
            edges.add((f"t{2 * i - 1}", _chord(i - s, i + s + 1, k)))
    for i in range(1, down + 1):
        for s in range(up - 1):
            edges.add((f"t{2 * i}", _chord(i - s, i + s + 2, k)))
    for i in range(1, k + 1):
        edges.add((f"t{i}", "Linf"))
    return Pattern.from_labels(f"H{k}", points, lines, edges)


def pattern_grid(t: int) -> Pattern:
    """t x t grid: bundles ``a1..at`` and ``b1..bt``; point ``p{i},{j}`` lies on ``ai`` and ``bj``."""
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    points = [f"p{i},{j}" for i in range(1, t + 1) for j in range(1, t + 1)]
    lines = [f"a{i}" for i in range(1, t + 1)] + [f"b{j}" for j in range(1, t + 1)]
    edges = []
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            edges.append((f"p{i},{j}", f"a{i}"))
            edges.append((f"p{i},{j}", f"b{j}"))
    return Pattern.from_labels(f"grid{t}", points, lines, edges)


def pattern_subdivided_clique(k: int) -> Pattern:
    """1-subdivision of K_k: blacks ``b_i``, whites ``w_ij`` and, per pair, lines through (b_i, w_ij) and (b_j, w_ij)."""
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    points = [f"b{i}" for i in range(1, k + 1)] + [f"w{i},{j}" for i, j in pairs]
    lines = []
    edges = []
    for i, j in pairs:
        for end in (i, j):
            name = f"l{end}|{i},{j}"
            lines.append(name)
            edges.append((f"b{end}", name))
            edges.append((f"w{i},{j}", name))
    return Pattern.from_labels(f"sclique{k}", points, lines, edges)


def builtin_pattern(name: str) -> Pattern:
    """Resolve names like ``hk5``, ``grid2``, ``sclique3``."""
    for prefix, fn in (("hk", pattern_hk), ("grid", pattern_grid), ("sclique", pattern_subdivided_clique)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return fn(int(name[len(prefix):]))
    raise DomainError(f"unknown builtin pattern {name!r}")
