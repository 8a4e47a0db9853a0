import random
from fractions import Fraction
from math import factorial

import pytest

from sync_census import (
    BudgetError,
    cerny_digraph,
    census,
    census_naive,
    count_distinct_automata,
    count_via_sink,
    digraph_from_lists,
    digraph_weight,
    enumerate_distinct_automata,
    enumerate_primitive_digraphs,
    g30,
    gnk,
    hdnk,
    is_totally_synchronizing,
)

import oracles


class TestKnownCensuses:
    def test_g30_30_of_64(self):
        res = census(g30())
        assert res.sync_colorings == 30
        assert res.total_colorings == 64
        assert res.ratio == Fraction(30, 64)
        assert res.distinct_automata == 64
        assert res.weight == 1

    def test_cerny_totally_synchronizing(self):
        res = census(cerny_digraph(4))
        assert res.sync_colorings == res.total_colorings == 16
        assert res.ratio == 1
        assert is_totally_synchronizing(cerny_digraph(4))

    def test_gnk_ratio(self):
        assert census(gnk(4, 3)).ratio == Fraction(2, 3)
        res = census(gnk(5, 2))
        assert (res.sync_colorings, res.total_colorings) == (16, 32)

    def test_hdnk_ratio(self):
        assert census(hdnk(2, 6, 2)).ratio == Fraction(3, 4)
        assert census(hdnk(2, 7, 3)).ratio == Fraction(8, 9)

    def test_two_cycle_ratio_zero(self):
        res = census(digraph_from_lists(2, 1, [[1], [0]]))
        assert res.sync_colorings == 0
        assert res.ratio == 0
        assert not is_totally_synchronizing(digraph_from_lists(2, 1, [[1], [0]]))


class TestEnumerateDistinctAutomata:
    def test_g30_has_64(self):
        assert sum(1 for _ in enumerate_distinct_automata(g30())) == 64

    def test_loop_vertex_collapses(self):
        d = digraph_from_lists(1, 2, [[0, 0]])
        autos = list(enumerate_distinct_automata(d))
        assert len(autos) == 1

    def test_gnk52_counts(self):
        d = gnk(5, 2)
        assert count_distinct_automata(d) == 4
        assert digraph_weight(d) == 8
        assert sum(1 for _ in enumerate_distinct_automata(d)) == 4

    def test_stream_is_unique_and_consistent(self):
        rng = random.Random(1)
        for _ in range(60):
            d = oracles.random_digraph(rng, rng.randrange(1, 5), rng.randrange(1, 4))
            autos = list(enumerate_distinct_automata(d))
            assert len(autos) == len(set(a.delta for a in autos))
            assert len(autos) == count_distinct_automata(d)
            for a in autos:
                for v in range(d.n):
                    assert tuple(sorted(a.delta[v])) == d.dests[v]

    def test_deterministic_lexicographic_order(self):
        d = digraph_from_lists(2, 2, [[0, 1], [0, 1]])
        deltas = [a.delta for a in enumerate_distinct_automata(d)]
        assert deltas == sorted(deltas)

    def test_budget_guard(self):
        with pytest.raises(BudgetError):
            list(enumerate_distinct_automata(g30(), budget=10))
        with pytest.raises(BudgetError):
            census(g30(), "full", budget=10)


class TestCountingIdentities:
    def test_identities_on_random_digraphs(self):
        rng = random.Random(8)
        kf_cache = {}
        for _ in range(150):
            n = rng.randrange(1, 6)
            k = rng.randrange(1, 4)
            d = oracles.random_digraph(rng, n, k)
            res = census(d)
            kf = kf_cache.setdefault(k, factorial(k))
            assert res.distinct_automata * res.weight == res.total_colorings
            assert res.sync_colorings == res.sync_automata * res.weight
            assert res.sync_colorings % kf == 0
            assert 0 <= res.ratio <= 1
            assert (res.ratio == 1) == is_totally_synchronizing(d)


class TestModeEquivalence:
    def test_full_equals_reduced_exhaustive_n5_k2(self):
        for n in range(1, 6):
            for d in enumerate_primitive_digraphs(n, 2):
                assert census(d, "full") == census(d, "reduced")

    def test_full_equals_reduced_random(self):
        rng = random.Random(21)
        for _ in range(80):
            d = oracles.random_digraph(rng, rng.randrange(1, 6), rng.randrange(1, 4))
            assert census(d, "full") == census(d, "reduced")

    def test_naive_brute_force_small(self):
        for n in range(1, 4):
            for k in (1, 2, 3):
                for d in enumerate_primitive_digraphs(n, k):
                    assert census_naive(d) == census(d)

    def test_naive_on_non_strongly_connected(self):
        rng = random.Random(5)
        checked = 0
        while checked < 25:
            d = oracles.random_digraph(rng, rng.randrange(2, 5), 2)
            checked += 1
            assert census_naive(d) == census(d)


class TestCountViaSink:
    def test_strongly_connected_identical(self):
        assert count_via_sink(g30()) == census(g30())

    def test_loop_sink_ratio_one(self):
        d = digraph_from_lists(3, 1, [[1], [2], [2]])
        res = count_via_sink(d)
        assert res.ratio == 1
        assert res.sync_colorings == res.total_colorings == 1

    def test_two_sinks_zero(self):
        d = digraph_from_lists(4, 1, [[1], [1], [3], [3]])
        res = count_via_sink(d)
        assert res.sync_colorings == 0
        assert res.ratio == 0

    def test_matches_direct_census_on_random_non_sc(self):
        from sync_census import is_strongly_connected

        rng = random.Random(17)
        non_sc = 0
        while non_sc < 80:
            d = oracles.random_digraph(rng, rng.randrange(2, 7), rng.randrange(1, 4))
            if is_strongly_connected(d):
                continue
            non_sc += 1
            assert count_via_sink(d) == census(d)
