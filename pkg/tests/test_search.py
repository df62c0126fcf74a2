from __future__ import annotations

import itertools
import math
import random

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from incidences.configurations import (
    Configuration,
    embedded_hexagon_config,
    erdos_config,
    extended_gon_config,
    from_affine,
)
from incidences.errors import DomainError
from incidences.lowerbound import planted_subdivided_clique
from incidences.patterns import (
    Pattern,
    builtin_pattern,
    pattern_grid,
    pattern_hk,
    pattern_subdivided_clique,
)
from incidences.projective import ProjLine, ProjPoint, line_through
from incidences.search import (
    ABSENT,
    FOUND,
    UNKNOWN,
    common_neighbor_ratio,
    contains,
    count_embeddings,
    count_subdivided_cliques,
    has_subdivided_clique,
    max_common_neighbors,
    verify_embedding,
)


# oracles

def naive_contains(host: Configuration, p: Pattern) -> bool:
    """Try every injective line map, then every injective point map allowed by it."""
    inc = host.incidences
    pt_lines = [[j for pi, j in p.edges if pi == i] for i in range(p.n_points)]
    for lm in itertools.permutations(range(host.n_lines), p.n_lines):
        opts = []
        for i in range(p.n_points):
            opts.append([h for h in range(host.n_points) if all((h, lm[j]) in inc for j in pt_lines[i])])
        for pm in itertools.product(*opts):
            if len(set(pm)) == len(pm):
                return True
    return False


def to_nx(points: int, lines: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from((("p", i) for i in range(points)), sort="p")
    g.add_nodes_from((("l", j) for j in range(lines)), sort="l")
    g.add_edges_from((("p", i), ("l", j)) for i, j in edges)
    return g


def nx_contains(host: Configuration, p: Pattern) -> bool:
    G = to_nx(host.n_points, host.n_lines, host.incidences)
    H = to_nx(p.n_points, p.n_lines, p.edges)
    gm = isomorphism.GraphMatcher(G, H, node_match=lambda a, b: a["sort"] == b["sort"])
    return gm.subgraph_is_monomorphic()


def random_host(rng: random.Random, max_side: int = 40) -> Configuration:
    size = rng.randint(2, 5)
    n = rng.randint(3, 20)
    pts = list({(rng.randint(0, size), rng.randint(0, size)) for _ in range(n)})
    P = [ProjPoint(x, y, 1) for x, y in pts]
    L = list(dict.fromkeys(line_through(a, b) for a, b in itertools.combinations(P, 2)))
    rng.shuffle(L)
    return Configuration(P[:max_side], L[: rng.randint(1, min(len(L), max_side))])


def random_pattern(rng: random.Random) -> Pattern:
    while True:
        np_, nl = rng.randint(1, 3), rng.randint(1, 3)
        edges = {(i, j) for i in range(np_) for j in range(nl) if rng.random() < 0.6}
        try:
            return Pattern("rand", tuple(f"p{i}" for i in range(np_)), tuple(f"l{j}" for j in range(nl)),
                           frozenset(edges))
        except DomainError:
            continue


def grid_host(n: int) -> Configuration:
    pts = [(x, y) for x in range(n) for y in range(n)]
    lines = [(1, 0, -x) for x in range(n)] + [(0, 1, -y) for y in range(n)]
    return from_affine(pts, lines)


# builders

@pytest.mark.parametrize("k", range(3, 17))
def test_hk_degree_profile(k):
    p = pattern_hk(k)
    pd = dict(zip(p.point_vertices, p.point_degrees()))
    ld = dict(zip(p.line_vertices, p.line_degrees()))
    for i in range(1, k + 1):
        assert pd[f"v{i}"] == k - 1
        assert pd[f"t{i}"] == (k // 2 + 1 if i % 2 else math.ceil(k / 2))
    assert ld["Linf"] == k
    assert all(d == 3 for name, d in ld.items() if name != "Linf")
    assert len(p.edges) == 3 * math.comb(k, 2) + k


def test_hk5_counts():
    p = pattern_hk(5)
    assert (p.n_points, p.n_lines, len(p.edges)) == (10, 11, 35)


@pytest.mark.parametrize("k", range(3, 17))
def test_hk_equals_geometric_realization(k):
    mode = "exact" if k in (3, 4, 6) else "float"
    assert extended_gon_config(k, mode).labeled_incidences() == pattern_hk(k).labeled_edges()


def test_grid_counts():
    assert (pattern_grid(2).n_points, pattern_grid(2).n_lines, len(pattern_grid(2).edges)) == (4, 4, 8)
    assert (pattern_grid(3).n_points, pattern_grid(3).n_lines, len(pattern_grid(3).edges)) == (9, 6, 18)
    with pytest.raises(DomainError):
        pattern_grid(1)


def test_subdivided_clique_counts():
    p = pattern_subdivided_clique(3)
    assert (p.n_points, p.n_lines, len(p.edges)) == (6, 6, 12)
    p4 = pattern_subdivided_clique(4)
    assert (p4.n_points, p4.n_lines) == (10, 12)
    pd = dict(zip(p4.point_vertices, p4.point_degrees()))
    assert all(pd[f"b{i}"] == 3 for i in range(1, 5))
    assert all(d == 2 for name, d in pd.items() if name.startswith("w"))
    assert set(p4.line_degrees()) == {2}


def test_builtin_names():
    assert builtin_pattern("hk5") == pattern_hk(5)
    assert builtin_pattern("grid3") == pattern_grid(3)
    assert builtin_pattern("sclique4") == pattern_subdivided_clique(4)
    with pytest.raises(DomainError):
        builtin_pattern("cube")


def test_pattern_rejects_isolated_and_unknown_labels():
    with pytest.raises(DomainError):
        Pattern.from_labels("x", ["a", "b"], ["L"], [("a", "L")])
    with pytest.raises(DomainError):
        Pattern.from_labels("x", ["a"], ["L"], [("a", "M")])
    assert Pattern.from_labels("x", ["a", "b"], ["L"], [("a", "L")], allow_isolated=True).n_points == 2


# contains

def test_grid2_in_erdos():
    # erdos_config(2) has a forest as incidence graph, so no 4-cycle and no 2x2 grid
    g = to_nx(8, 8, erdos_config(2).incidences)
    assert nx.cycle_basis(g) == []
    assert contains(erdos_config(2), pattern_grid(2)).status == ABSENT
    r = contains(erdos_config(3), pattern_grid(2))
    assert r.status == FOUND and verify_embedding(erdos_config(3), pattern_grid(2), r.embedding)


@pytest.mark.parametrize("A", [2, 3])
def test_hk5_absent_in_erdos(A):
    assert contains(erdos_config(A), pattern_hk(5)).status == ABSENT


def test_hk6_found_in_embedded_hexagon():
    host = embedded_hexagon_config()
    r = contains(host, pattern_hk(6))
    assert r.status == FOUND
    assert verify_embedding(host, pattern_hk(6), r.embedding)
    assert host.labeled_incidences() == pattern_hk(6).labeled_edges()


def test_contains_agrees_with_oracles_random():
    rng = random.Random(2024)
    found = 0
    for _ in range(200):
        host, p = random_host(rng), random_pattern(rng)
        ours = contains(host, p)
        assert ours.status in (FOUND, ABSENT)
        truth = nx_contains(host, p)
        assert ours.found == truth
        if host.n_lines <= 12:
            assert naive_contains(host, p) == truth
        if ours.found:
            found += 1
            assert verify_embedding(host, p, ours.embedding)
    assert 20 < found < 180  # both outcomes exercised


def test_monotonicity_under_added_objects():
    rng = random.Random(3)
    base = erdos_config(3)
    r = contains(base, pattern_grid(2))
    assert r.found
    for _ in range(10):
        extra_p = [ProjPoint(rng.randint(-9, 9), rng.randint(-9, 9), 1) for _ in range(3)]
        extra_l = [ProjLine(rng.randint(-4, 4), 1, rng.randint(-9, 9)) for _ in range(3)]
        pts = list(base.points) + [q for q in extra_p if q not in base.points]
        lines = list(base.lines) + [L for L in extra_l if L not in base.lines]
        assert contains(Configuration(pts, lines), pattern_grid(2)).found


def test_orientation_respected():
    # one point on three lines exists; three points on one line does not
    star = Pattern.from_labels("star", ["p"], ["a", "b", "c"], [("p", "a"), ("p", "b"), ("p", "c")])
    fan = from_affine([(0, 0)], [(1, 0, 0), (0, 1, 0), (1, -1, 0)])
    assert contains(fan, star).found
    dual_star = Pattern.from_labels("dual", ["p", "q", "r"], ["L"], [("p", "L"), ("q", "L"), ("r", "L")])
    assert contains(fan, dual_star).status == ABSENT
    e = contains(fan, star).embedding
    assert set(e.point_map) == {"p"} and set(e.line_map) == {"a", "b", "c"}


def test_budget_exhaustion_is_unknown():
    r = contains(erdos_config(3), pattern_grid(3), budget=50)
    assert r.status == UNKNOWN
    assert contains(erdos_config(3), pattern_grid(3)).status == ABSENT


def test_oversized_pattern_short_circuits():
    assert contains(erdos_config(2), pattern_hk(6)).status == ABSENT


# counting

def test_count_grid2_in_3x3_grid():
    host = grid_host(3)
    assert count_embeddings(host, pattern_grid(2)).count == 9
    # 8 pattern automorphisms: swap within each bundle, swap the bundles
    assert count_embeddings(host, pattern_grid(2), modulo_symmetry=False).count == 72


def test_count_in_empty_host():
    r = count_embeddings(Configuration([], []), pattern_grid(2))
    assert r.count == 0 and r.complete


def test_count_budget_flags_partial():
    r = count_embeddings(erdos_config(3), pattern_subdivided_clique(3), budget=100)
    assert not r.complete


@pytest.mark.parametrize("A", [2, 3])
def test_specialized_clique_count_matches_general(A):
    host = erdos_config(A)
    fast = count_subdivided_cliques(host, 3)
    slow = count_embeddings(host, pattern_subdivided_clique(3))
    assert fast.complete and slow.complete
    assert fast.count == slow.count


def test_erdos3_clique_count_pin():
    assert count_subdivided_cliques(erdos_config(3), 3).count == 142


def test_planted_copy_counts_once():
    host = planted_subdivided_clique(3)
    assert (host.n_points, host.n_lines) == (6, 6)
    assert count_subdivided_cliques(host, 3).count == 1
    assert count_embeddings(host, pattern_subdivided_clique(3)).count == 1
    assert has_subdivided_clique(host).found


def test_specialized_count_matches_general_random():
    rng = random.Random(8)
    for _ in range(25):
        host = random_host(rng, max_side=30)
        assert count_subdivided_cliques(host, 3).count == count_embeddings(host, pattern_subdivided_clique(3)).count


def test_clique_witnesses_are_valid():
    host = erdos_config(3)
    r = count_subdivided_cliques(host, 3, with_witnesses=True)
    assert len(r.witnesses) == r.count
    for blacks, whites in r.witnesses[:20]:
        used_pts = set(blacks) | {w for w, _, _ in whites.values()}
        used_lines = [l for _, l1, l2 in whites.values() for l in (l1, l2)]
        assert len(used_pts) == 6 and len(set(used_lines)) == 6
        for (i, j), (w, l1, l2) in whites.items():
            assert {(blacks[i], l1), (w, l1), (blacks[j], l2), (w, l2)} <= host.incidences


def test_clique_count_domain():
    with pytest.raises(DomainError):
        count_subdivided_cliques(erdos_config(2), 2)


# common neighbours

def brute_common(host: Configuration) -> int:
    nb = [set() for _ in range(host.n_points)]
    for pts in host.line_points:
        for a in pts:
            nb[a].update(b for b in pts if b != a)
    return max((len(nb[a] & nb[b]) for a, b in itertools.combinations(range(host.n_points), 2)), default=0)


@pytest.mark.parametrize("A", [2, 3, 4])
def test_common_neighbors_brute_force(A):
    host = erdos_config(A)
    assert max_common_neighbors(host) == brute_common(host)


def test_common_neighbor_ratio_bounded():
    for A in range(4, 8):
        assert common_neighbor_ratio(erdos_config(A), A) <= 4
