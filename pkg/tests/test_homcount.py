import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altpaths.constructions import alternating_path
from altpaths.ecgraph import BLUE, RED, BudgetExceeded, EdgeColouredGraph
from altpaths.homcount import (
    NotAForest,
    density,
    hom_brute,
    hom_forest,
    is_forest,
    weighted_ab_bound,
)
from helpers import brute_hom_oracle, random_forest, random_graph

TRIANGLE = EdgeColouredGraph.make(3, [(0, 1, RED), (1, 2, BLUE), (0, 2, RED)])
RED_EDGE = EdgeColouredGraph.make(2, [(0, 1, RED)])


class TestBrute:
    def test_red_edge_in_triangle(self):
        assert hom_brute(RED_EDGE, TRIANGLE) == 4  # 2 * e_R

    def test_alternating_p3_in_triangle(self):
        # Independent oracle sweeps all 3^4 = 81 maps.
        assert brute_hom_oracle(alternating_path(3), TRIANGLE) == 2
        assert hom_brute(alternating_path(3), TRIANGLE) == 2

    def test_isolated_vertex(self):
        one = EdgeColouredGraph(1, ())
        host = EdgeColouredGraph(5, ())
        assert hom_brute(one, host) == 5

    def test_empty_pattern(self):
        assert hom_brute(EdgeColouredGraph(0, ()), TRIANGLE) == 1

    def test_budget_refusal_reports_requirement(self):
        big = EdgeColouredGraph(30, ())
        with pytest.raises(BudgetExceeded) as err:
            hom_brute(big, EdgeColouredGraph(10, ()), budget=100)
        assert err.value.required == 10**30


class TestForestDP:
    def test_rejects_cycles_with_vertex_list(self):
        with pytest.raises(NotAForest) as err:
            hom_forest(TRIANGLE, TRIANGLE)
        assert sorted(err.value.cycle) == [0, 1, 2]

    def test_no_blue_edge_means_zero(self):
        all_red = EdgeColouredGraph.make(
            4, [(u, v, RED) for u in range(4) for v in range(u + 1, 4)]
        )
        assert hom_forest(alternating_path(3), all_red) == 0

    def test_two_disjoint_red_edges(self):
        h = EdgeColouredGraph.make(4, [(0, 1, RED), (2, 3, RED)])
        for g in (TRIANGLE, alternating_path(4)):
            e_r = g.num_edges(RED)
            assert hom_forest(h, g) == (2 * e_r) ** 2

    def test_agreement_with_oracle_seeded(self):
        rng = random.Random(2024)
        done = 0
        while done < 120:
            h = random_forest(rng, rng.randint(1, 8))
            g = random_graph(rng, rng.randint(1, 7))
            if g.n**h.n > 20000:
                continue
            assert hom_forest(h, g) == brute_hom_oracle(h, g)
            done += 1

    def test_empty_host(self):
        assert hom_forest(RED_EDGE, EdgeColouredGraph(0, ())) == 0
        assert hom_forest(EdgeColouredGraph(0, ()), EdgeColouredGraph(0, ())) == 1


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_forest_dp_matches_oracle(rng):
    h = random_forest(rng, rng.randint(1, 6))
    g = random_graph(rng, rng.randint(1, 4))
    assert hom_forest(h, g) == brute_hom_oracle(h, g)


def test_multiplicative_over_disjoint_unions():
    rng = random.Random(99)
    for _ in range(200):
        h1 = random_forest(rng, rng.randint(1, 4))
        h2 = random_forest(rng, rng.randint(1, 4))
        shifted = [(u + h1.n, v + h1.n, c) for u, v, c in h2.edges]
        union = EdgeColouredGraph.make(h1.n + h2.n, list(h1.edges) + shifted)
        g = random_graph(rng, rng.randint(1, 5))
        assert hom_forest(union, g) == hom_forest(h1, g) * hom_forest(h2, g)


def test_adding_pattern_edge_never_increases_count():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(2, 5)
        h = random_graph(rng, n)
        free = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if all((eu, ev) != (u, v) for eu, ev, _ in h.edges)
        ]
        if not free:
            continue
        u, v = rng.choice(free)
        colour = RED if rng.random() < 0.5 else BLUE
        bigger = EdgeColouredGraph.make(n, list(h.edges) + [(u, v, colour)])
        g = random_graph(rng, rng.randint(1, 4))
        assert hom_brute(bigger, g) <= hom_brute(h, g)


class TestDensity:
    def test_red_edge_in_all_red_k4(self):
        k4 = EdgeColouredGraph.make(
            4, [(u, v, RED) for u in range(4) for v in range(u + 1, 4)]
        )
        assert density(RED_EDGE, k4) == Fraction(3, 4)

    def test_p3_in_triangle(self):
        assert density(alternating_path(3), TRIANGLE) == Fraction(2, 81)

    def test_isolated_vertex_normalises_to_one(self):
        one = EdgeColouredGraph(1, ())
        assert density(one, TRIANGLE) == 1

    def test_empty_pattern_density_is_one(self):
        assert density(EdgeColouredGraph(0, ()), TRIANGLE) == 1

    def test_empty_host_rejected(self):
        with pytest.raises(ValueError, match="undefined"):
            density(RED_EDGE, EdgeColouredGraph(0, ()))

    def test_in_unit_interval(self):
        rng = random.Random(12)
        for _ in range(150):
            h = random_forest(rng, rng.randint(1, 5))
            g = random_graph(rng, rng.randint(1, 5))
            assert 0 <= density(h, g) <= 1


class TestWeightedBound:
    def test_examples(self):
        assert weighted_ab_bound(2, 1, 3) == 4
        assert weighted_ab_bound(1, 1, 2) == 1
        assert weighted_ab_bound(2, 1, 1) == Fraction(4, 27)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            weighted_ab_bound(0, 1, 1)
        with pytest.raises(ValueError):
            weighted_ab_bound(1, 1, 0)

    def test_dominates_grid(self):
        # The bound really is the maximum of x^a y^b on the simplex slice.
        a, b, m = 3, 2, 5
        bound = weighted_ab_bound(a, b, m)
        for i in range(0, 51):
            x = Fraction(i * m, 50)
            y = m - x
            assert x**a * y**b <= bound


def test_is_forest():
    assert is_forest(alternating_path(5))
    assert not is_forest(TRIANGLE)
