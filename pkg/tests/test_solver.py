"""Optimal-solver tests: exhaustive enumeration, the fast sum solver, and
their equivalence.

Brute-force expectations below were hand-computed by listing every feasible
host set; the fast solver is checked against those same frozen values and,
property-style, against the enumerator on random instances.
"""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flp import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    InputError,
    Instance,
    Solution,
    UnsupportedVariantError,
    Variant,
    brute_force_optimal,
    enumerate_solutions,
    enumeration_budget,
    fast_optimal_sum,
    social_cost,
)


def sum_inst(*locs, k=2):
    return Instance(tuple(locs), k, Variant.SUM)


def max_inst(*locs, k=2):
    return Instance(tuple(locs), k, Variant.MAX)


coords = st.one_of(
    st.integers(min_value=-20, max_value=20),
    st.fractions(min_value=-20, max_value=20, max_denominator=10),
)


@st.composite
def instances(draw, variant=None, max_n=7):
    n = draw(st.integers(min_value=2, max_value=max_n))
    locs = tuple(draw(coords) for _ in range(n))
    k = draw(st.integers(min_value=2, max_value=n))
    var = variant if variant is not None else draw(st.sampled_from(list(Variant)))
    return Instance(locs, k, var)


class TestEnumeration:
    def test_count_matches_binomial(self):
        assert len(list(enumerate_solutions(sum_inst(0, 1, 3)))) == 3
        assert len(list(enumerate_solutions(sum_inst(0, 1, 2, 3, k=3)))) == 4
        assert len(list(enumerate_solutions(sum_inst(0, 1, k=2)))) == 1

    def test_order_follows_sorted_positions(self):
        sols = list(enumerate_solutions(sum_inst(0, 1, 3)))
        assert [s.hosts for s in sols] == [
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({1, 2}),
        ]

    def test_unsorted_input_enumerates_by_coordinate(self):
        # Locations (5, 2): sorted order is agent 1 then agent 0.
        sols = list(enumerate_solutions(sum_inst(5, 2)))
        assert sols == [Solution.of(0, 1)]

    @given(instances(max_n=6))
    @settings(max_examples=40)
    def test_all_solutions_feasible_and_unique(self, inst):
        sols = list(enumerate_solutions(inst))
        assert len(sols) == math.comb(inst.n, inst.k)
        assert len({s.hosts for s in sols}) == len(sols)
        for s in sols:
            assert len(s.hosts) == inst.k
            assert all(0 <= h < inst.n for h in s.hosts)


class TestBruteForce:
    def test_sum_three_agents(self):
        inst = sum_inst(0, 1, 3)
        opt = brute_force_optimal(inst)
        assert opt.solution == Solution.of(0, 1)
        assert opt.cost == 7
        # Exhaustive cross-check of every candidate pair.
        assert sorted(social_cost(inst, s) for s in enumerate_solutions(inst)) == [
            7,
            8,
            9,
        ]

    def test_max_prefers_far_left_pair(self):
        # Unique optimum places both facilities left of centre.
        inst = max_inst(F(-1, 2), 0, 1, 2)
        opt = brute_force_optimal(inst)
        assert opt.cost == 5
        assert opt.solution.coords(inst) == (F(-1, 2), 0)

    def test_sum_four_agents_two_medians(self):
        opt = brute_force_optimal(sum_inst(0, 1, 2, 3))
        assert opt.solution == Solution.of(1, 2)
        assert opt.cost == 8

    def test_tie_returns_first_in_enumeration_order(self):
        opt = brute_force_optimal(sum_inst(0, 0, 0, 0))
        assert opt.solution == Solution.of(0, 1)
        assert opt.cost == 0

    def test_cost_matches_certificate(self):
        inst = max_inst(0, F(1, 3), 2, 5, k=3)
        opt = brute_force_optimal(inst)
        assert social_cost(inst, opt.solution) == opt.cost

    @given(instances(max_n=6))
    @settings(max_examples=40)
    def test_returns_minimum_over_enumeration(self, inst):
        opt = brute_force_optimal(inst)
        costs = [social_cost(inst, s) for s in enumerate_solutions(inst)]
        assert opt.cost == min(costs)
        assert social_cost(inst, opt.solution) == opt.cost


class TestEnumerationBudget:
    def test_default_budget(self):
        assert DEFAULT_BUDGET == math.comb(20, 6)
        assert enumeration_budget() == DEFAULT_BUDGET

    def test_explicit_budget_exceeded_sum_hints_at_fast_solver(self):
        with pytest.raises(EnumerationBudgetError, match="fast_optimal_sum"):
            brute_force_optimal(sum_inst(0, 1, 3), budget=2)

    def test_explicit_budget_exceeded_max_has_no_hint(self):
        with pytest.raises(EnumerationBudgetError) as err:
            brute_force_optimal(max_inst(0, 1, 3), budget=2)
        assert "fast_optimal_sum" not in str(err.value)

    def test_budget_equal_to_count_is_allowed(self):
        assert brute_force_optimal(sum_inst(0, 1, 3), budget=3).cost == 7

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("FLP_BUDGET", "5")
        assert enumeration_budget() == 5
        with pytest.raises(EnumerationBudgetError):
            brute_force_optimal(sum_inst(0, 1, 2, 3))  # 6 candidates > 5

    def test_env_malformed(self, monkeypatch):
        for bad in ("abc", "-3", "0", "1.5"):
            monkeypatch.setenv("FLP_BUDGET", bad)
            with pytest.raises(InputError):
                enumeration_budget()


class TestFastOptimalSum:
    def test_odd_n_right_neighbour_farther(self):
        opt = fast_optimal_sum(sum_inst(0, 1, 3))
        assert opt.solution == Solution.of(0, 1)
        assert opt.cost == 7

    def test_odd_n_neighbour_tie_goes_left(self):
        opt = fast_optimal_sum(sum_inst(0, 1, 2))
        assert opt.solution == Solution.of(0, 1)
        assert opt.cost == 5

    def test_odd_n_right_neighbour_closer(self):
        opt = fast_optimal_sum(sum_inst(0, 1, F(3, 2)))
        assert opt.solution == Solution.of(1, 2)
        assert opt.cost == F(7, 2)

    def test_even_n_two_medians(self):
        opt = fast_optimal_sum(sum_inst(0, 1, 2, 3))
        assert opt.solution == Solution.of(1, 2)
        assert opt.cost == 8

    def test_two_agents(self):
        opt = fast_optimal_sum(sum_inst(5, 2))
        assert opt.solution == Solution.of(0, 1)
        assert opt.cost == 6

    def test_k_three_tie_takes_leftmost_window(self):
        # Windows {0,1,1} and {1,1,2} both cost 8; the left one wins.
        opt = fast_optimal_sum(sum_inst(0, 1, 1, 2, k=3))
        assert opt.solution == Solution.of(0, 1, 2)
        assert opt.cost == 8

    def test_k_equals_n(self):
        inst = sum_inst(0, 2, 7, k=3)
        opt = fast_optimal_sum(inst)
        assert opt.solution == Solution.of(0, 1, 2)
        assert opt.cost == social_cost(inst, opt.solution)

    def test_max_variant_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            fast_optimal_sum(max_inst(0, 1, 2))

    @given(instances(variant=Variant.SUM, max_n=7))
    @settings(max_examples=80)
    def test_matches_brute_force_cost(self, inst):
        fast = fast_optimal_sum(inst)
        brute = brute_force_optimal(inst)
        assert fast.cost == brute.cost
        assert social_cost(inst, fast.solution) == fast.cost


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
