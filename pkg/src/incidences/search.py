"""Subgraph containment of patterns in host incidence graphs.

Host neighbourhoods are Python-int bitmasks, so candidate filtering is a few
``&`` operations per placed neighbour. Search is plain backtracking over a
static vertex order; a node budget turns an unfinished search into an explicit
"unknown" instead of a false "absent".
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .configurations import Configuration
from .errors import DomainError
from .patterns import Pattern, pattern_subdivided_clique

FOUND, ABSENT, UNKNOWN = "found", "absent", "unknown"


@dataclass
class Embedding:
    point_map: dict[str, int]
    line_map: dict[str, int]

    def as_pairs(self) -> dict:
        return {"points": sorted(self.point_map.items()), "lines": sorted(self.line_map.items())}


@dataclass
class SearchResult:
    status: str
    embedding: Embedding | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


@dataclass
class CountResult:
    count: int
    complete: bool
    nodes: int = 0
    witnesses: list = field(default_factory=list)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Host:
    def __init__(self, host: Configuration) -> None:
        self.n_points = host.n_points
        self.n_lines = host.n_lines
        self.line_pts = [0] * host.n_lines  # bitmask of points on each line
        self.point_lns = [0] * host.n_points  # bitmask of lines through each point
        for i, j in host.incidences:
            self.line_pts[j] |= 1 << i
            self.point_lns[i] |= 1 << j
        self.incidences = host.incidences
        pdeg = [m.bit_count() for m in self.point_lns]
        ldeg = [m.bit_count() for m in self.line_pts]
        top = max(pdeg + ldeg + [0])
        # deg_mask[s][d]: objects of sort s with degree >= d
        self.deg_mask = [[0] * (top + 2), [0] * (top + 2)]
        for sort, degs in ((0, pdeg), (1, ldeg)):
            for idx, d in enumerate(degs):
                for t in range(d + 1):
                    self.deg_mask[sort][t] |= 1 << idx

    def at_least(self, sort: int, d: int) -> int:
        table = self.deg_mask[sort]
        return table[d] if d < len(table) else 0


def _search_order(p: Pattern) -> list[tuple[int, int]]:
    """Static order of (sort, index): highest-degree line first, then most placed neighbours."""
    nbrs: dict[tuple[int, int], set] = {(0, i): set() for i in range(p.n_points)}
    nbrs.update({(1, j): set() for j in range(p.n_lines)})
    for i, j in p.edges:
        nbrs[(0, i)].add((1, j))
        nbrs[(1, j)].add((0, i))
    order: list[tuple[int, int]] = []
    placed: set = set()
    remaining = set(nbrs)
    while remaining:
        def score(v):
            return (len(nbrs[v] & placed), v[0] == 1, len(nbrs[v]), -v[1])
        v = max(remaining, key=score)
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


class _Backtracker:
    def __init__(self, host: Configuration, p: Pattern, budget: int | None) -> None:
        self.h = _Host(host)
        self.p = p
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.order = _search_order(p)
        adj: dict[tuple[int, int], list] = {v: [] for v in self.order}
        for i, j in p.edges:
            adj[(0, i)].append((1, j))
            adj[(1, j)].append((0, i))
        pos = {v: n for n, v in enumerate(self.order)}
        self.earlier = [[u for u in adj[v] if pos[u] < pos[v]] for v in self.order]
        pdeg, ldeg = p.point_degrees(), p.line_degrees()
        self.base = [self.h.at_least(s, (pdeg if s == 0 else ldeg)[i]) for s, i in self.order]
        self.assign: dict[tuple[int, int], int] = {}

    def candidates(self, depth: int, used: tuple[int, int]) -> int:
        sort, _ = self.order[depth]
        mask = self.base[depth] & ~used[sort]
        for u in self.earlier[depth]:
            target = self.assign[u]
            mask &= self.h.point_lns[target] if sort == 1 else self.h.line_pts[target]
            if not mask:
                break
        return mask

    def run(self, depth: int, used: tuple[int, int]) -> Iterator[dict]:
        if depth == len(self.order):
            yield dict(self.assign)
            return
        v = self.order[depth]
        for c in _bits(self.candidates(depth, used)):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                self.exhausted = True
                return
            self.assign[v] = c
            nu = (used[0] | (1 << c), used[1]) if v[0] == 0 else (used[0], used[1] | (1 << c))
            yield from self.run(depth + 1, nu)
            if self.exhausted:
                return
        self.assign.pop(v, None)

    def embedding(self, a: dict) -> Embedding:
        pm = {self.p.point_vertices[i]: a[(0, i)] for i in range(self.p.n_points)}
        lm = {self.p.line_vertices[j]: a[(1, j)] for j in range(self.p.n_lines)}
        return Embedding(pm, lm)


def verify_embedding(host: Configuration, p: Pattern, e: Embedding) -> bool:
    """Edge-by-edge check: injective, sort-preserving, every pattern edge lands on a host incidence."""
    if set(e.point_map) != set(p.point_vertices) or set(e.line_map) != set(p.line_vertices):
        return False
    pts, lns = list(e.point_map.values()), list(e.line_map.values())
    if len(set(pts)) != len(pts) or len(set(lns)) != len(lns):
        return False
    if not all(0 <= i < host.n_points for i in pts) or not all(0 <= j < host.n_lines for j in lns):
        return False
    inc = host.incidences
    return all(
        (e.point_map[p.point_vertices[i]], e.line_map[p.line_vertices[j]]) in inc for i, j in p.edges
    )


def contains(host: Configuration, p: Pattern, budget: int | None = None) -> SearchResult:
    """Search for ``p`` as a (not necessarily induced) subgraph of the host incidence graph.

    ``budget`` caps the number of search nodes; ``None`` means exhaustive.
    Status is ``found`` (with a verified embedding), ``absent`` (exhaustive
    search finished empty) or ``unknown`` (budget ran out).
    """
    if p.n_points > host.n_points or p.n_lines > host.n_lines:
        return SearchResult(ABSENT, None, 0)
    bt = _Backtracker(host, p, budget)
    for a in bt.run(0, (0, 0)):
        emb = bt.embedding(a)
        if not verify_embedding(host, p, emb):
            raise AssertionError("search produced an invalid embedding")
        return SearchResult(FOUND, emb, bt.nodes)
    return SearchResult(UNKNOWN if bt.exhausted else ABSENT, None, bt.nodes)


def _image(p: Pattern, a: dict) -> frozenset[tuple[int, int]]:
    return frozenset((a[(0, i)], a[(1, j)]) for i, j in p.edges)


def count_embeddings(host: Configuration, p: Pattern, modulo_symmetry: bool = True,
                     budget: int | None = None) -> CountResult:
    """Number of embeddings, or of distinct images when ``modulo_symmetry`` is set.

    An image is the set of host incidences hit by the pattern edges, so two
    maps differing by a pattern automorphism count once.
    """
    if p.n_points > host.n_points or p.n_lines > host.n_lines:
        return CountResult(0, True)
    bt = _Backtracker(host, p, budget)
    if modulo_symmetry:
        images = {_image(p, a) for a in bt.run(0, (0, 0))}
        n = len(images)
    else:
        n = sum(1 for _ in bt.run(0, (0, 0)))
    return CountResult(n, not bt.exhausted, bt.nodes)


# Subdivided cliques, counted through pairs of black points.

def white_candidates(host: Configuration) -> dict[tuple[int, int], list[tuple[int, int, int]]]:
    """For each black pair ``b < b'``: triples ``(w, line through b and w, line through b' and w)`` with distinct lines."""
    out: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    lp = host.line_points
    for w in range(host.n_points):
        through = sorted(host.point_lines[w])
        for l1, l2 in itertools.permutations(through, 2):
            for b in lp[l1]:
                if b == w:
                    continue
                for b2 in lp[l2]:
                    if b2 == w or b2 <= b:
                        continue
                    out.setdefault((b, b2), []).append((w, l1, l2))
    for v in out.values():
        v.sort()
    return out


def _cliques(adj: dict[int, set[int]], k: int) -> Iterator[tuple[int, ...]]:
    """k-cliques with increasing vertex labels."""
    def grow(clique: list[int], cand: list[int]):
        if len(clique) == k:
            yield tuple(clique)
            return
        for n, v in enumerate(cand):
            if len(clique) + len(cand) - n < k:
                return
            nxt = [u for u in cand[n + 1:] if u in adj[v]]
            clique.append(v)
            yield from grow(clique, nxt)
            clique.pop()

    yield from grow([], sorted(adj))


def count_subdivided_cliques(host: Configuration, k: int = 3, with_witnesses: bool = False,
                             budget: int | None = None) -> CountResult:
    """Distinct subdivided k-cliques in the host incidence graph.

    Black k-sets are cliques of the "has a white candidate" pair graph; the
    whites are then chosen pair by pair with all points and all lines kept
    distinct. Copies are deduplicated by their incidence set (for k = 3 the
    same 12-cycle arises from two black labellings). Witnesses are
    ``(blacks, {(i, j): (w, line at b_i, line at b_j)})`` with positions into
    ``blacks``.
    """
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    W = white_candidates(host)
    adj: dict[int, set[int]] = {}
    for b, b2 in W:
        adj.setdefault(b, set()).add(b2)
        adj.setdefault(b2, set()).add(b)
    pairs = list(itertools.combinations(range(k), 2))
    seen: set[frozenset] = set()
    witnesses = []
    nodes = 0
    exhausted = False
    for blacks in _cliques(adj, k):
        black_set = set(blacks)
        opts = [[t for t in W[(blacks[i], blacks[j])] if t[0] not in black_set] for i, j in pairs]
        if any(not o for o in opts):
            continue
        order = sorted(range(len(pairs)), key=lambda n: len(opts[n]))
        choice: list = [None] * len(pairs)

        def rec(d: int, whites: set, lines: set):
            nonlocal nodes, exhausted
            if d == len(order):
                yield list(choice)
                return
            n = order[d]
            for t in opts[n]:
                w, l1, l2 = t
                if w in whites or l1 in lines or l2 in lines:
                    continue
                nodes += 1
                if budget is not None and nodes > budget:
                    exhausted = True
                    return
                choice[n] = t
                whites.add(w)
                lines.update((l1, l2))
                yield from rec(d + 1, whites, lines)
                whites.discard(w)
                lines.difference_update((l1, l2))
                if exhausted:
                    return

        for ch in rec(0, set(), set()):
            inc = set()
            for (i, j), (w, l1, l2) in zip(pairs, ch):
                inc.update({(blacks[i], l1), (w, l1), (blacks[j], l2), (w, l2)})
            key = frozenset(inc)
            if key in seen:
                continue
            seen.add(key)
            if with_witnesses:
                witnesses.append((blacks, dict(zip(pairs, ch))))
        if exhausted:
            break
    return CountResult(len(seen), not exhausted, nodes, witnesses)


def has_subdivided_clique(host: Configuration, k: int = 3, budget: int | None = None) -> SearchResult:
    """Independent detector: generic :func:`contains` on the subdivided-clique pattern."""
    return contains(host, pattern_subdivided_clique(k), budget)


def h_adjacency(host: Configuration) -> np.ndarray:
    """Adjacency of the collinearity graph H on the host points (shared line, no loops)."""
    n = host.n_points
    M = np.zeros((n, host.n_lines), dtype=np.float64)
    for i, j in host.incidences:
        M[i, j] = 1.0
    H = (M @ M.T) > 0
    np.fill_diagonal(H, False)
    return H


def max_common_neighbors(host: Configuration) -> int:
    """Largest number of common H-neighbours over pairs of distinct points."""
    if host.n_points < 2:
        return 0
    H = h_adjacency(host).astype(np.float64)
    C = H @ H
    np.fill_diagonal(C, -1)
    return int(round(C.max()))


def common_neighbor_ratio(host: Configuration, A: int) -> float:
    """``max common neighbours / (A (1 + ln N))`` with ``N = A^3``."""
    return max_common_neighbors(host) / (A * (1 + math.log(A**3)))
