import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altpaths.ecgraph import (
    BLUE,
    RED,
    Colour,
    EdgeColouredGraph,
    circulant_host,
    degree_stats,
    enumerate_hosts,
    format_ecg,
    host_count,
    host_from_index,
    parse_ecg,
    random_host,
    symmetric_residues,
    validate,
)
from helpers import brute_two_walks, random_graph

TRIANGLE = EdgeColouredGraph.make(3, [(0, 1, RED), (1, 2, BLUE), (0, 2, RED)])


class TestValidate:
    def test_minimal_valid(self):
        assert validate(EdgeColouredGraph(2, ((0, 1, RED),))) is None

    def test_endpoint_order(self):
        problem = validate(EdgeColouredGraph(2, ((1, 0, RED),)))
        assert problem is not None and "u<v" in problem

    def test_loop(self):
        problem = validate(EdgeColouredGraph(1, ((0, 0, BLUE),)))
        assert problem is not None and "loopless" in problem

    def test_out_of_range(self):
        assert "range" in validate(EdgeColouredGraph(2, ((0, 5, RED),)))

    def test_duplicate_pair(self):
        g = EdgeColouredGraph(3, ((0, 1, RED), (0, 1, BLUE)))
        assert "duplicate" in validate(g)

    def test_unsorted(self):
        g = EdgeColouredGraph(3, ((1, 2, RED), (0, 1, BLUE)))
        assert "sorted" in validate(g)


class TestDegreeStats:
    def test_triangle_against_walk_oracle(self):
        stats = degree_stats(TRIANGLE)
        assert stats.d_r[0] == 2 and stats.d_b[0] == 0
        assert stats.e_r == 2 and stats.e_b == 1
        for v in range(3):
            assert stats.d_rb[v] == brute_two_walks(TRIANGLE, v, RED, BLUE)
            assert stats.d_bb[v] == brute_two_walks(TRIANGLE, v, BLUE, BLUE)
        assert stats.d_rb[0] == 2

    def test_single_red_edge(self):
        g = EdgeColouredGraph.make(2, [(0, 1, RED)])
        stats = degree_stats(g)
        assert stats.d_r == (1, 1)
        assert stats.d_b == (0, 0)
        assert stats.d_rb == (0, 0) and stats.d_bb == (0, 0)

    def test_empty_graph(self):
        stats = degree_stats(EdgeColouredGraph(3, ()))
        assert stats.d_r == (0, 0, 0) and stats.e_r == 0 and stats.e_b == 0

    def test_invariants_on_random_graphs(self):
        rng = random.Random(1729)
        for _ in range(1000):
            g = random_graph(rng, rng.randint(1, 12))
            stats = degree_stats(g)
            assert sum(stats.d_r) == 2 * stats.e_r
            assert sum(stats.d_b) == 2 * stats.e_b
            for v in range(g.n):
                assert stats.d_r[v] + stats.d_b[v] <= g.n - 1
                assert stats.d_rb[v] + stats.d_bb[v] <= 2 * stats.e_b - stats.d_b[v]

    def test_walk_counts_match_oracle_on_random_graphs(self):
        rng = random.Random(42)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 7))
            stats = degree_stats(g)
            for v in range(g.n):
                assert stats.d_rb[v] == brute_two_walks(g, v, RED, BLUE)
                assert stats.d_bb[v] == brute_two_walks(g, v, BLUE, BLUE)


class TestCirculant:
    def test_all_residues_red_triangle(self):
        g = circulant_host(3, {1, 2})
        assert g.edges == ((0, 1, RED), (0, 2, RED), (1, 2, RED))

    def test_seven_cycle_in_blue_clique(self):
        g = circulant_host(7, {1, 6})
        stats = degree_stats(g)
        assert all(d == 2 for d in stats.d_r)
        assert len(g.edges) == 21

    def test_empty(self):
        assert circulant_host(0, set()).n == 0

    def test_rejects_unclosed_residues(self):
        with pytest.raises(ValueError, match="negation"):
            circulant_host(7, {1})

    def test_regularity_many_sizes(self):
        rng = random.Random(7)
        for n in range(2, 51):
            for _ in range(20):
                degree = rng.randint(0, n - 1)
                residues = symmetric_residues(n, degree)
                if residues is None:
                    continue
                g = circulant_host(n, residues)
                stats = degree_stats(g)
                assert all(d == len(residues) for d in stats.d_r)
                assert validate(g) is None

    def test_symmetric_residues_parity(self):
        assert symmetric_residues(5, 3) is None  # odd size impossible for odd n
        assert symmetric_residues(6, 3) == {1, 3, 5}
        assert symmetric_residues(6, 7) is None


class TestEnumerateHosts:
    @pytest.mark.parametrize("n,count", [(2, 3), (3, 27), (4, 729)])
    def test_counts_and_distinctness(self, n, count):
        keys = {g.canonical_key() for g in enumerate_hosts(n)}
        assert len(keys) == count == host_count(n)

    def test_n5_count(self):
        assert host_count(5) == 59049

    def test_all_valid(self):
        assert all(validate(g) is None for g in enumerate_hosts(3))

    def test_restartable_slices(self):
        full = [g.canonical_key() for g in enumerate_hosts(3)]
        pieces = []
        for start, stop in ((0, 10), (10, 11), (11, 27)):
            pieces.extend(g.canonical_key() for g in enumerate_hosts(3, start, stop))
        assert pieces == full
        assert host_from_index(3, 11).canonical_key() == full[11]

    def test_bad_range(self):
        with pytest.raises(ValueError):
            list(enumerate_hosts(2, 0, 99))


class TestEcgFormat:
    def test_round_trip(self):
        text = format_ecg(TRIANGLE)
        assert text.splitlines()[0] == "ecg 1"
        assert parse_ecg(text) == TRIANGLE

    def test_round_trip_random(self):
        rng = random.Random(3)
        for _ in range(50):
            g = random_host(rng.randint(0, 8), rng)
            assert parse_ecg(format_ecg(g)) == g

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("bogus\nn 2\n", "header"),
            ("ecg 1\nn 2\ne 0 0 R\n", "loopless"),
            ("ecg 1\nn 2\ne 0 1 R\ne 0 1 B\n", "duplicate"),
            ("ecg 1\nn 2\ne 0 5 R\n", "range"),
            ("ecg 1\nn 2\ne 0 1 X\n", "colour"),
            ("ecg 1\nn 2\ne 0 1\n", "malformed"),
        ],
    )
    def test_rejections(self, text, fragment):
        with pytest.raises(ValueError, match=fragment):
            parse_ecg(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 8), st.randoms(use_true_random=False))
def test_generated_graphs_always_validate(n, rng):
    assert validate(random_host(n, rng)) is None


def test_colour_order():
    assert RED < BLUE
    assert Colour.from_letter("R") is RED and Colour.from_letter("B") is BLUE
    with pytest.raises(ValueError):
        Colour.from_letter("G")
