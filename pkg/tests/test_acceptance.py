"""The eleven acceptance criteria, one test each.

Every test records its outcome in ``conftest.ACCEPTANCE`` and prints a
single ``criterion N: PASS|FAIL`` line; the pytest terminal summary repeats
them all.  Run directly with ``python3 tests/test_acceptance.py``.
"""
import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE
from distcolor.coloring import (
    Listing, chromatic_number, coloring_number_witness, extend_listing_fresh,
    find_defeating_listing, kmn_adversary_listing, list_chromatic_exact, list_colorable,
)
from distcolor.euclid import (
    DSpec, ExactPoint, classify_distance_graph, distance_graph_points, hypercube_embedding,
    plane_common_neighbor_count, squared_distance, witness_x3, witness_x4,
)
from distcolor.families import (
    cantor_chain_biclique, cantor_graph, cantor_interval, complete_bipartite, hypercube,
)
from distcolor.graph import common_neighbors, find_biclique, from_edges, verify_embedding
from distcolor.salg import SigmaFamily, distance_predicate, sample_sigma_graph

import oracles


@contextmanager
def criterion(num: int, detail: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"{detail} [{type(exc).__name__}: {exc}]"
        ACCEPTANCE[num] = (False, line)
        print(f"criterion {num}: FAIL {line}")
        raise
    took = f"{detail} ({time.perf_counter() - start:.2f} s)"
    ACCEPTANCE[num] = (True, took)
    print(f"criterion {num}: PASS {took}")


def test_criterion_01_kmn_threshold():
    with criterion(1, "K(2,6) adversary listing uncolourable, col = chi_l = 3"):
        start = time.perf_counter()
        g, lam = kmn_adversary_listing(2)
        assert g == complete_bipartite(2, 6) and lam.is_k_listing(2)
        assert list_colorable(g, lam) is None
        assert not oracles.colorable_from(g, lam.lists)
        col, w = coloring_number_witness(g)
        assert col == 3 and max(w.back_degrees) == 2
        # a defeated 2-listing gives chi_l >= 3, col = 3 gives chi_l <= 3
        rep = list_chromatic_exact(g, 3)
        assert rep.value == 3
        assert time.perf_counter() - start < 1.0


def test_criterion_02_tiny_exact():
    with criterion(2, "chi_l of P3, C4, triangle against canonical-listing brute force"):
        start = time.perf_counter()
        cases = {
            "P3": (from_edges(3, [(0, 1), (1, 2)]), 2),
            "C4": (from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), 2),
            "K3": (from_edges(3, [(0, 1), (1, 2), (0, 2)]), 3),
        }
        for name, (g, want) in cases.items():
            for ohba in (True, False):
                assert list_chromatic_exact(g, g.n, ohba=ohba).value == want, (name, ohba)
            assert oracles.choice_number(g) == want, name
        assert time.perf_counter() - start < 60.0


def test_criterion_03_cantor_enumeration():
    with criterion(3, "I_2..I_5 exact, depth cover for d <= 8"):
        want = {2: (F(0), F(1)), 3: (F(0), F(1, 3)), 4: (F(2, 3), F(1)), 5: (F(0), F(1, 9))}
        for j, (lo, hi) in want.items():
            iv = cantor_interval(j)
            assert (iv.lo, iv.hi) == (lo, hi)
        layers = [[cantor_interval(j) for j in range(2**i + 1, 2 ** (i + 1) + 1)]
                  for i in range(9)]
        for d in range(9):
            for bits in itertools.product("01", repeat=d):
                lo = sum(F(2 * int(b), 3 ** (i + 1)) for i, b in enumerate(bits))
                hi = lo + F(1, 3**d)
                for layer in layers[:d + 1]:
                    assert sum(1 for iv in layer if iv.lo <= lo and hi <= iv.hi) == 1


def test_criterion_04_laminar_law():
    with criterion(4, "common neighbours nonempty iff chain, count 2^(d-p); C_4 has K(2,8) not K(2,9)"):
        for d in range(5):
            cg = cantor_graph(d)
            ivs = list(cg.interval_vertices())
            for r in (1, 2, 3):
                for subset in itertools.combinations(ivs, r):
                    common = common_neighbors(cg.graph, subset)
                    chain = all(cg.interval_at(a).contains(cg.interval_at(b))
                                or cg.interval_at(b).contains(cg.interval_at(a))
                                for a, b in itertools.combinations(subset, 2))
                    assert bool(common) == chain
                    if chain:
                        p = max(cg.interval_at(v).depth for v in subset)
                        assert len(common) == 2 ** (d - p)
        g4 = cantor_graph(4).graph
        assert find_biclique(g4, 2, 8) is not None
        assert find_biclique(g4, 2, 9) is None


def test_criterion_05_cantor_growth():
    with criterion(5, "K(2,6) adversary embedded in C_4 stays uncolourable; chi(C_4) = 2"):
        start = time.perf_counter()
        cg = cantor_graph(4)
        w = cantor_chain_biclique(4, 2)
        assert w.check(cg.graph)
        _, lam = kmn_adversary_listing(2)
        left, right = sorted(w.left), sorted(w.right)[:6]
        sub = {left[0]: lam[0], left[1]: lam[1]}
        sub.update({right[i]: lam[2 + i] for i in range(6)})
        ext = extend_listing_fresh(cg.graph, sub.keys(), Listing(sub), 2)
        assert ext.is_k_listing(2) and set(ext.lists) == set(cg.graph.vertices())
        assert list_colorable(cg.graph, ext) is None
        assert chromatic_number(cg.graph)[0] == 2
        assert time.perf_counter() - start < 10.0


def test_criterion_06_x4_witness():
    with criterion(6, "400 cross pairs at squared distance exactly 2; K(20,20) recovered"):
        w = witness_x4(2, 20)
        v = w.verification
        assert v["pairs"] == v["exact_matches"] == 400 and v["all_exact"]
        assert all(squared_distance(a, b) == 2 for a in w.left for b in w.right)
        # the default parameters land on a circle of radius 1: coordinates are rational
        pts = [tuple(c for c in p.coords) for p in w.points()]
        assert all(isinstance(c, F) for p in pts for c in p)
        g = sample_sigma_graph(SigmaFamily(4, [distance_predicate(4, 2)]), pts)
        bw = find_biclique(g, 20, 20)
        assert bw is not None and {bw.left, bw.right} == {frozenset(range(20)),
                                                         frozenset(range(20, 40))}


def test_criterion_07_x3_witness():
    with criterion(7, "5 centres x 20 circle points, 100 exact incidences, all edges of X_3(D)"):
        D = DSpec.parse("tail:1,4")
        w = witness_x3(D, F(1, 4), 5, 20)
        v = w.verification
        assert v["pairs"] == v["exact_matches"] == 100 and v["all_exact"]
        for i, c in enumerate(w.left):
            assert w.targets[i] == D.tail_value(i)
            for p in w.right:
                assert squared_distance(c, p) == w.targets[i] and D.contains(w.targets[i])
        g = distance_graph_points(3, w.points(), D, strict=False)
        assert all(g.has_edge(i, 5 + j) for i in range(5) for j in range(20))


def test_criterion_08_plane_bound():
    with criterion(8, "100 random pairs, |D| = 3, at most 18 common neighbours; tangency gives 1"):
        rng = random.Random(20240601)
        D = DSpec.parse("sq:1,2,5")
        done = 0
        while done < 100:
            x, y = (ExactPoint.rational(F(rng.randint(-6, 6), rng.randint(1, 4)),
                                        F(rng.randint(-6, 6), rng.randint(1, 4)))
                    for _ in range(2))
            if x == y:
                continue
            assert plane_common_neighbor_count(x, y, D) <= 18
            done += 1
        tangent = plane_common_neighbor_count(ExactPoint.rational(0, 0), ExactPoint.rational(2, 0),
                                              DSpec.parse("sq:1"))
        assert tangent == 1


def test_criterion_09_cube_embedding():
    with criterion(9, "Q_d for d <= 4 embeds as induced unit-distance graph within 10 retries"):
        for d in range(1, 5):
            emb = hypercube_embedding(d)
            assert emb.attempts <= 10
            ok, bad = verify_embedding(emb.graph, hypercube(d), emb.mapping(), induced=True)
            assert ok, bad


def test_criterion_10_classifier():
    with criterion(10, "all six classifier cases"):
        fin, up, down = DSpec.parse("sq:1,2"), DSpec.parse("tail:1,4"), DSpec.parse("tail:1,1/4")
        for D in (fin, up, down):
            assert classify_distance_graph(1, D).verdict == "countable"
            assert classify_distance_graph(2, D).verdict == "countable"
        assert classify_distance_graph(3, fin).verdict == "countable"
        assert classify_distance_graph(3, down).verdict == "countable"
        rep = classify_distance_graph(3, up)
        assert (rep.verdict, rep.witness_plan) == ("uncountable", "x3")
        for n in (4, 5, 9):
            for D in (fin, up, down):
                rep = classify_distance_graph(n, D)
                assert (rep.verdict, rep.witness_plan) == ("uncountable", "x4")


def random_graphs(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        n, p = rng.randint(1, 7), rng.choice((0.3, 0.5, 0.7))
        yield from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def test_criterion_11_sandwich():
    with criterion(11, "chi <= chi_l <= col <= |V| on 200 seeded graphs; defeat at k implies col > k"):
        for g in random_graphs(200, 20240601):
            chi, _ = chromatic_number(g)
            col, _ = coloring_number_witness(g)
            assert chi == oracles.chromatic(g)
            assert col == oracles.col_by_permutations(g)
            rep = list_chromatic_exact(g, g.n)
            assert rep.value is not None
            assert chi <= rep.value <= col <= g.n
            for k, cert in rep.certificates.items():
                assert col > k and list_colorable(g, cert.listing) is None
            for k in range(1, min(col, 4)):
                cert = find_defeating_listing(g, k)
                if cert is not None:
                    assert col > k


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
