from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incidences.algebra import QuadExt
from incidences.configurations import Configuration, erdos_config
from incidences.errors import DegenerateInputError, DomainError, UnsupportedFieldError
from incidences.projective import (
    ProjLine,
    ProjMap,
    ProjPoint,
    apply,
    apply_line,
    collinear,
    cross_ratio,
    dual_of_line,
    dual_of_point,
    dualize,
    extended_gon,
    gon_ratio_identities,
    incident,
    line_through,
    meet,
    paper_hexagon,
    paper_k6_map,
    regular_gon,
    verify_integer_embedding_k6,
)

R3 = QuadExt.sqrt(3)


def test_canonical_form():
    assert ProjPoint(2, 4, 2) == ProjPoint(1, 2, 1)
    assert ProjPoint(2, 4, 2).coords == (1, 2, 1)
    assert ProjPoint(Fraction(1, 2), Fraction(1, 3), 1).coords == (3, 2, 6)
    assert ProjPoint(-1, 0, 0).coords == (1, 0, 0)
    assert ProjPoint(1.0, 2.0, 2.0) == ProjPoint(0.5, 1.0, 1.0)
    with pytest.raises(DegenerateInputError):
        ProjPoint(0, 0, 0)


def test_line_through_examples():
    assert line_through(ProjPoint(0, 0, 1), ProjPoint(1, 0, 1)) == ProjLine(0, 1, 0)
    assert line_through(ProjPoint(1, 0, 0), ProjPoint(0, 1, 0)) == ProjLine(0, 0, 1)
    with pytest.raises(DegenerateInputError):
        line_through(ProjPoint(1, 2, 1), ProjPoint(2, 4, 2))


def test_line_through_hexagon_chord_hits_slope_point():
    pts, lines = extended_gon(6, "exact")
    v1, v2 = pts[0], pts[1]
    L = line_through(v1, v2)
    assert incident(v1, L) and incident(v2, L)
    # chord v1 v2 has index sum 3, the class of t_1
    assert incident(pts[6], L)


def test_meet_examples():
    assert meet(ProjLine(1, 0, 0), ProjLine(0, 1, 0)) == ProjPoint(0, 0, 1)
    assert meet(ProjLine(0, 1, 0), ProjLine(0, 1, -1)) == ProjPoint(1, 0, 0)
    with pytest.raises(DegenerateInputError):
        meet(ProjLine(1, 1, 1), ProjLine(2, 2, 2))


def test_meet_pentagon_ratio():
    vs = regular_gon(5)
    w = meet(line_through(vs[0], vs[1]), line_through(vs[3], vs[4]))
    (wx, wy), (ax, ay), (bx, by) = (p.xy() for p in (w, vs[0], vs[1]))
    s, r = math.hypot(bx - ax, by - ay), math.hypot(ax - wx, ay - wy)
    assert abs(s / r - 2 * math.cos(2 * math.pi / 5)) < 1e-12


def test_apply_published_examples():
    f = paper_k6_map()
    assert str(apply(f, ProjPoint(1, 0, 1))) == "[25:15:1]"
    assert str(apply(f, ProjPoint(-R3, 1, 0))) == "[-10:-10:1]"
    assert apply(ProjMap.identity(), ProjPoint(3, 5, 7)) == ProjPoint(3, 5, 7)


def test_singular_map_rejected():
    with pytest.raises(DegenerateInputError):
        ProjMap([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


def test_cross_ratio_examples():
    a, b, c, d = (ProjPoint(x, 0, 1) for x in (0, 3, 1, 2))
    assert cross_ratio(a, b, c, d) == Fraction(1, 4)
    with pytest.raises(DomainError):
        cross_ratio(a, b, c, ProjPoint(1, 1, 1))
    with pytest.raises(DomainError):
        cross_ratio(a, a, c, d)


def test_cross_ratio_with_point_at_infinity():
    # distances to the point at infinity drop out
    inf = ProjPoint(1, 0, 0)
    w, c, d = ProjPoint(0, 0, 1), ProjPoint(1, 0, 1), ProjPoint(3, 0, 1)
    assert cross_ratio(inf, w, c, d) == Fraction(3, 1)


@pytest.mark.parametrize("k", range(5, 25))
def test_ratio_identities_float(k):
    d = gon_ratio_identities(k)
    assert abs(d["s_over_r"] - 2 * math.cos(2 * math.pi / k)) < 1e-9
    assert abs(float(d["cross_ratio"]) - (1 + 2 * math.cos(2 * math.pi / k))) < 1e-9


def test_ratio_identity_exact_hexagon():
    assert gon_ratio_identities(6, "exact")["cross_ratio"] == 2


def test_regular_gon_examples():
    assert regular_gon(4, "exact") == [ProjPoint(0, 1, 1), ProjPoint(-1, 0, 1), ProjPoint(0, -1, 1), ProjPoint(1, 0, 1)]
    half = Fraction(1, 2)
    assert ProjPoint(-half, R3 / 2, 1) in regular_gon(6, "exact")
    for j, p in enumerate(regular_gon(5), start=1):
        x, y = p.xy()
        diff = math.atan2(y, x) - 2 * math.pi * j / 5
        assert abs(math.remainder(diff, 2 * math.pi)) < 1e-12
    with pytest.raises(UnsupportedFieldError):
        regular_gon(5, "exact")


def test_extended_gon_sizes():
    pts, lines = extended_gon(5)
    assert (len(pts), len(lines)) == (10, 11)
    pts, lines = extended_gon(3, "exact")
    assert (len(pts), len(lines)) == (6, 4)
    for L in lines[:-1]:
        assert sum(incident(t, L) for t in pts[3:]) == 1


def test_paper_hexagon_matches_published_first_vertex():
    pts, labels = paper_hexagon()
    assert pts[0] == ProjPoint(Fraction(-1, 2), R3 / 2, 1)
    assert labels[0] == "v1"


def test_k6_report():
    rep = verify_integer_embedding_k6()
    assert rep["passed"]
    assert rep["incidences"] == 51
    for lab in ("v1", "v2", "v3", "v4", "v6", "t1", "t2", "t4", "t5", "t6"):
        assert rep["comparison"][lab]["match"], lab
    assert rep["images"]["t3"] == "[50:50:1]"
    assert rep["images"]["v5"] == "[-2:6:1]"
    assert {d.split("(")[1].split(")")[0] for d in rep["discrepancies"]} == {"v5", "t3"}


def test_k6_published_v5_is_not_on_the_image_lines():
    rep = verify_integer_embedding_k6()
    assert rep["comparison"]["v5"]["published_satisfies_incidences"] is False


def test_duality_chart_examples():
    L = dual_of_point(ProjPoint(1, 2, 1))
    assert L == ProjLine.slope_intercept(1, -2)
    assert dual_of_line(L) == ProjPoint(1, 2, 1)
    assert dual_of_line(ProjLine.slope_intercept(3, 1)) == ProjPoint(3, -1, 1)


def test_dualize_preserves_incidences_erdos():
    c = erdos_config(2)
    dp, dl = dualize(c.points, c.lines)
    dual = Configuration(dp, dl)
    assert len(dual.incidences) == 15
    assert set(dual.incidences) == {(j, i) for i, j in c.incidences}


def test_dualize_handles_vertical_lines():
    pts = [ProjPoint(x, y, 1) for x in range(3) for y in range(3)]
    lines = [ProjLine(1, 0, -x) for x in range(3)] + [ProjLine(0, 1, -y) for y in range(3)]
    c = Configuration(pts, lines)
    dp, dl, q = dualize(pts, lines, return_shear=True)
    assert q == 7
    assert set(Configuration(dp, dl).incidences) == {(j, i) for i, j in c.incidences}


def test_dualize_rejects_infinity():
    with pytest.raises(DegenerateInputError):
        dualize([ProjPoint(1, 0, 0)], [])


# projective invariance

def random_map(rng: random.Random) -> ProjMap:
    while True:
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        try:
            return ProjMap(rows)
        except DegenerateInputError:
            continue


def test_incidence_invariance_random_exact():
    rng = random.Random(1)
    for _ in range(1000):
        pts = [ProjPoint(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3)]
        try:
            L = line_through(pts[0], pts[1])
        except DegenerateInputError:
            continue
        f = random_map(rng)
        fL = apply_line(f, L)
        for p in pts:
            assert incident(p, L) == incident(apply(f, p), fL)


coords = st.integers(-6, 6)


@given(st.lists(coords, min_size=3, max_size=3), st.lists(coords, min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=9, max_size=9),
       st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4))
@settings(max_examples=200, deadline=None)
def test_cross_ratio_invariant_exact(p, q, m, s, t):
    try:
        P, Q = ProjPoint(*p), ProjPoint(*q)
        f = ProjMap([m[0:3], m[3:6], m[6:9]])
    except DegenerateInputError:
        return
    if P == Q:
        return
    pts = [P, Q]
    for lam in (s, t):
        pts.append(ProjPoint(*(a + lam * b for a, b in zip(P.coords, Q.coords))) if any(
            a + lam * b for a, b in zip(P.coords, Q.coords)) else None)
    if None in pts or len(set(pts)) < 4:
        return
    a, b, c, d = pts
    assert cross_ratio(a, b, c, d) == cross_ratio(*(apply(f, x) for x in (a, b, c, d)))


def test_cross_ratio_invariant_float():
    rng = random.Random(5)
    for _ in range(200):
        f = ProjMap([[rng.uniform(-2, 2) for _ in range(3)] for _ in range(3)])
        base = [ProjPoint(x, 2 * x + 1, 1.0) for x in (0.0, 1.0, 2.5, -1.5)]
        a = cross_ratio(*base)
        b = cross_ratio(*(apply(f, p) for p in base))
        assert abs(a - b) < 1e-8 * max(1.0, abs(a))


def test_collinear():
    assert collinear(ProjPoint(0, 0, 1), ProjPoint(1, 1, 1), ProjPoint(2, 2, 1))
    assert not collinear(ProjPoint(0, 0, 1), ProjPoint(1, 1, 1), ProjPoint(2, 3, 1))
