import itertools
import json
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from distcolor.errors import (
    DegeneratePair, DimensionError, GenericityFailure, IncompatibleCoordinates,
    InvalidSampleCount, NotBoundedAwayFromZero, ParseError, RadiusTooLarge,
)
from distcolor.euclid import (
    DSpec, ExactPoint, Root, circle_point, classify_distance_graph, cube_points,
    default_parameters, distance_graph_points, hypercube_embedding, plane_common_neighbor_count,
    point_from_json, point_to_json, rational_sqrt, sqrt_q, squared_distance, witness_x3,
    witness_x4,
)
from distcolor.families import complete_bipartite, hypercube
from distcolor.graph import find_biclique, from_edges, verify_embedding

SQUARE = [ExactPoint.rational(*p) for p in ((0, 0), (1, 0), (1, 1), (0, 1))]
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def test_rational_sqrt():
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    assert rational_sqrt(F(2)) is None and rational_sqrt(F(-1)) is None
    assert sqrt_q(F(1, 4)) == F(1, 2) and sqrt_q(3) == Root(F(3))


def test_distance_graph_examples():
    g = distance_graph_points(2, SQUARE, DSpec.parse("sq:1"))
    assert g == from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    g = distance_graph_points(2, SQUARE, DSpec.parse("sq:1,2"))
    assert g.m == 6
    line = [ExactPoint.rational(x) for x in (0, 1, 3)]
    g = distance_graph_points(1, line, DSpec.parse("tail:1,4"))
    assert g.sorted_edges() == [(0, 1), (1, 2)]


def test_distance_graph_rejects_wrong_dimension_and_support():
    with pytest.raises(DimensionError):
        distance_graph_points(3, SQUARE, DSpec.parse("sq:1"))
    p = ExactPoint((Root(F(2)), F(0)))
    q = ExactPoint((F(1), F(0)))
    with pytest.raises(IncompatibleCoordinates):
        distance_graph_points(2, [p, q], DSpec.parse("sq:1"))


def test_squared_distance_support_discipline():
    p = ExactPoint((Root(F(2)), F(0)))
    q = ExactPoint((F(0), Root(F(3))))
    assert squared_distance(p, q) == 5
    # root against a nonzero rational: irrational in relaxed mode
    r = ExactPoint((F(1), F(0)))
    assert squared_distance(p, r, strict=False) is None
    # same square class cancels exactly: sqrt(2) vs sqrt(8) differ by sqrt(2)
    s = ExactPoint((Root(F(8)), F(0)))
    assert squared_distance(p, s, strict=False) == 2


@given(rationals, rationals, rationals, rationals)
def test_squared_distance_rational_points(a, b, c, d):
    p, q = ExactPoint.rational(a, b), ExactPoint.rational(c, d)
    assert squared_distance(p, q) == (a - c) ** 2 + (b - d) ** 2
    assert squared_distance(p, q) == squared_distance(q, p)


@given(st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20),
       st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_circle_point_on_circle(r_sq, t):
    x, y = circle_point(r_sq, t)
    sq = lambda c: c.radicand if isinstance(c, Root) else c * c
    assert sq(x) + sq(y) == r_sq


def test_dspec_parsing_and_membership():
    D = DSpec.parse("sq:1,2;tail:1,4")
    assert D.finite_sq == {1, 2} and D.tail == (1, 4)
    assert str(DSpec.parse(str(D))) == str(D)
    assert all(F(4) ** i in D for i in range(6))
    assert F(8) not in D and F(1, 4) not in D and None not in D
    down = DSpec.parse("tail:1,1/4")
    assert F(1, 64) in down and F(4) not in down
    assert DSpec.parse("sq:1/2 tail:3,2").tail == (3, 2)
    for bad in ("", "sq:", "tail:1", "tail:1,1", "sq:-1", "foo:1", "sq:x", "tail:1,2;tail:1,3"):
        with pytest.raises(ParseError):
            DSpec.parse(bad)


@given(st.fractions(min_value=F(1, 8), max_value=8, max_denominator=8),
       st.sampled_from([F(1, 4), F(1, 2), F(2), F(3), F(9, 4)]),
       st.integers(0, 12), st.fractions(min_value=F(1, 30), max_value=100, max_denominator=30))
def test_dspec_tail_membership_oracle(c, q, i, x):
    D = DSpec(frozenset(), (c, q))
    assert c * q**i in D
    # oracle: x in tail iff log_q(x / c) is a nonnegative integer exponent that reproduces x
    k = round(math.log(x / c) / math.log(q)) if x > 0 else -1
    expected = k >= 0 and c * q**k == x
    assert D.contains(x) == expected


def test_classifier_table():
    fin = DSpec.parse("sq:1")
    up = DSpec.parse("tail:1,4")
    down = DSpec.parse("tail:1,1/4")
    assert classify_distance_graph(1, up).verdict == "countable"
    assert classify_distance_graph(2, up).case == "n<=2"
    assert classify_distance_graph(3, fin).verdict == "countable"
    assert classify_distance_graph(3, down).verdict == "countable"
    rep = classify_distance_graph(3, up)
    assert (rep.verdict, rep.witness_plan) == ("uncountable", "x3")
    for D in (fin, up, down):
        rep = classify_distance_graph(4, D)
        assert (rep.verdict, rep.witness_plan) == ("uncountable", "x4")
    with pytest.raises(ValueError):
        classify_distance_graph(0, fin)


@given(st.integers(1, 6), st.sampled_from(["sq:1", "sq:1,2", "tail:1,4", "tail:2,1/3",
                                           "sq:3;tail:1,9", "sq:2;tail:5,1/2"]))
def test_classifier_uncountable_means_witness_exists(n, text):
    D = DSpec.parse(text)
    rep = classify_distance_graph(n, D)
    assert (rep.verdict == "uncountable") == (rep.witness_plan is not None)
    if rep.witness_plan == "x4":
        d_sq = min(D.finite_sq) if D.finite_sq else D.tail[0]
        w = witness_x4(d_sq, 4)
        assert w.ok and all(D.contains(t) for t in w.targets)
    elif rep.witness_plan == "x3":
        w = witness_x3(D, D.tail[0] / 2, 3, 4)
        assert w.ok


def test_witness_x4_small():
    w = witness_x4(2, 3, params=[0, 1, F(1, 2)])
    assert [p.coords for p in w.left] == [
        (1, 0, 0, 0), (0, 1, 0, 0), (F(3, 5), F(4, 5), 0, 0)]
    assert w.ok and w.verification["pairs"] == 9


def test_witness_x4_formal_root_radius():
    w = witness_x4(1, 2)
    assert any(isinstance(c, Root) for p in w.left for c in p.coords)
    assert w.ok and all(squared_distance(a, b) == 1 for a in w.left for b in w.right)


def test_witness_x4_twenty():
    w = witness_x4(2, 20)
    assert w.verification["exact_matches"] == 400 and w.ok
    assert len(set(w.left)) == 20
    g = distance_graph_points(4, w.points(), DSpec.parse("sq:2"))
    b = find_biclique(g, 20, 20)
    assert b is not None and b.left | b.right == set(range(40))


def test_witness_sample_counts():
    with pytest.raises(InvalidSampleCount):
        witness_x4(2, 0)
    with pytest.raises(InvalidSampleCount):
        witness_x4(2, 3, params=[0, 0, 1])


def test_witness_x3_small():
    D = DSpec.parse("tail:1,4")
    w = witness_x3(D, F(1, 4), 2, 2)
    assert w.left[0].coords[0] == Root(F(3, 4)) and w.left[1].coords[0] == Root(F(15, 4))
    assert w.right[0].coords == (0, F(1, 2), 0) and w.right[1].coords == (0, 0, F(1, 2))
    assert w.ok and set(w.targets) == {1, 4}


def test_witness_x3_full():
    D = DSpec.parse("tail:1,4")
    w = witness_x3(D, F(1, 4), 5, 20)
    assert w.verification["exact_matches"] == 100 and w.ok
    for i, a in enumerate(w.left):
        assert all(squared_distance(a, p) == F(4) ** i for p in w.right)
    g = distance_graph_points(3, w.points(), D, strict=False)
    assert find_biclique(g, 5, 20) is not None


def test_witness_x3_errors():
    with pytest.raises(RadiusTooLarge):
        witness_x3(DSpec.parse("tail:1,4"), 2, 2, 2)
    with pytest.raises(NotBoundedAwayFromZero):
        witness_x3(DSpec.parse("tail:1,1/4"), F(1, 8), 2, 2)
    with pytest.raises(NotBoundedAwayFromZero):
        witness_x3(DSpec.parse("sq:1"), F(1, 8), 2, 2)


def test_witness_json_round_trip():
    w = witness_x3(DSpec.parse("tail:1,4"), F(1, 4), 2, 3)
    doc = json.loads(json.dumps(w.to_json()))
    assert [point_from_json(p) for p in doc["left"]] == list(w.left)
    assert doc["targets_sq"] == ["1/1", "4/1"]
    assert point_to_json(ExactPoint.rational(F(1, 2))) == [{"rat": "1/2"}]


def test_plane_examples():
    o, two, three = (ExactPoint.rational(*p) for p in ((0, 0), (2, 0), (3, 0)))
    assert plane_common_neighbor_count(o, two, DSpec.parse("sq:1")) == 1
    assert plane_common_neighbor_count(o, two, DSpec.parse("sq:4")) == 2
    assert plane_common_neighbor_count(o, three, DSpec.parse("sq:1")) == 0
    with pytest.raises(DegeneratePair):
        plane_common_neighbor_count(o, o, DSpec.parse("sq:1"))


def float_common_count(x, y, d_sqs, tol=1e-9):
    """Floating-point oracle: intersect every pair of circles, merge close points."""
    (x0, y0), (x1, y1) = map(lambda p: tuple(map(float, p.coords)), (x, y))
    dx, dy = x1 - x0, y1 - y0
    L = math.hypot(dx, dy)
    pts = []
    for a, b in itertools.product(map(float, d_sqs), repeat=2):
        s = (a - b + L * L) / (2 * L)
        h_sq = a - s * s
        if h_sq < -tol:
            continue
        h = math.sqrt(max(h_sq, 0.0))
        bx, by = x0 + s * dx / L, y0 + s * dy / L
        for sign in ((0,) if abs(h_sq) <= tol else (1, -1)):
            p = (bx - sign * h * dy / L, by + sign * h * dx / L)
            if all(math.dist(p, q) > 1e-7 for q in pts):
                pts.append(p)
    return len(pts)


@given(rationals, rationals, rationals, rationals,
       st.sets(st.fractions(min_value=F(1, 4), max_value=9, max_denominator=4), min_size=1,
               max_size=3))
def test_plane_count_matches_float_oracle(a, b, c, d, ds):
    x, y = ExactPoint.rational(a, b), ExactPoint.rational(c, d)
    if x == y:
        return
    D = DSpec(frozenset(ds))
    n = plane_common_neighbor_count(x, y, D)
    assert n <= 2 * len(ds) ** 2
    assert n == float_common_count(x, y, ds)


def test_plane_bound_on_random_pairs():
    rng = random.Random(7)
    D = DSpec.parse("sq:1,2,5")
    for _ in range(100):
        x = ExactPoint.rational(F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-5, 5), rng.randint(1, 4)))
        y = ExactPoint.rational(F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-5, 5), rng.randint(1, 4)))
        if x != y:
            assert plane_common_neighbor_count(x, y, D) <= 18


def test_countable_plane_samples_avoid_big_bicliques():
    # unit-distance samples rich in unit pairs: cube images and circle points
    rng = random.Random(11)
    D = DSpec.parse("sq:1")
    for _ in range(5):
        ts = [F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(4)]
        pts = list(dict.fromkeys(cube_points(ts)))
        pts += [ExactPoint(circle_point(F(1), t)) for t in default_parameters(6)]
        pts = list(dict.fromkeys(pts))
        g = distance_graph_points(2, pts, D)
        assert find_biclique(g, 2, 2 * 1 + 1) is None


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hypercube_embedding(d):
    emb = hypercube_embedding(d)
    assert emb.attempts <= 10 and len(set(emb.points)) == 2**d
    ok, bad = verify_embedding(emb.graph, hypercube(d), emb.mapping(), induced=True)
    assert ok, bad
    assert emb.graph == hypercube(d)


def test_hypercube_rhombus_diagonals():
    emb = hypercube_embedding(2)
    p = emb.points
    assert squared_distance(p[0], p[3]) != 1 and squared_distance(p[1], p[2]) != 1
    assert squared_distance(p[0], p[1]) == 1


def test_hypercube_embedding_is_seeded():
    a, b = hypercube_embedding(3, seed=5), hypercube_embedding(3, seed=5)
    assert a.params == b.params and a.points == b.points


def test_hypercube_genericity_failure():
    # parallel unit vectors make words collide, and the retry budget is 1
    with pytest.raises(GenericityFailure):
        hypercube_embedding(2, max_retries=1, params=[0, 0])


def test_hypercube_d1():
    emb = hypercube_embedding(1)
    assert squared_distance(*emb.points) == 1
    assert emb.graph == complete_bipartite(1, 1)
