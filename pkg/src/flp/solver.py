"""Optimal solvers: exhaustive enumeration and a median-window fast path.

``brute_force_optimal`` is the ground-truth oracle: it evaluates the exact
social cost of every feasible solution, guarded by an enumeration budget.
``fast_optimal_sum`` exploits the structure of the SUM variant, where an
optimal solution is a run of consecutive sorted agents covering a median;
the two must always agree on cost, which the test suite checks at scale.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

from .errors import EnumerationBudgetError, InputError, UnsupportedVariantError
from .model import (
    Coord,
    Instance,
    Solution,
    Variant,
    order_stats,
    social_cost,
)

DEFAULT_BUDGET = math.comb(20, 6)
"""Default cap on enumerated solutions: every instance with n <= 20 and
k <= 6 fits, since C(n, k) <= C(20, 6) there."""

BUDGET_ENV_VAR = "FLP_BUDGET"


@dataclass(frozen=True, slots=True)
class OptResult:
    """An optimal solution together with its exact social cost."""

    solution: Solution
    cost: Coord


def enumeration_budget() -> int:
    """The active enumeration cap; the FLP_BUDGET env var overrides the default."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(
            f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}"
        ) from None
    if value < 1:
        raise InputError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def enumerate_solutions(inst: Instance) -> Iterator[Solution]:
    """Yield all C(n, k) solutions, lexicographic over sorted positions.

    "Lexicographic over sorted positions" pins the order: combinations are
    drawn from agents listed left-to-right on the line, so the all-leftmost
    window comes first and ties elsewhere resolve deterministically.
    """
    order = order_stats(inst).sorted_order
    for combo in itertools.combinations(order, inst.k):
        yield Solution(frozenset(combo))


def brute_force_optimal(inst: Instance, budget: int | None = None) -> OptResult:
    """Exhaustive optimum for either variant; ties go to enumeration order.

    Raises EnumerationBudgetError when C(n, k) exceeds the budget (default
    :data:`DEFAULT_BUDGET`, overridable via the FLP_BUDGET env var or the
    ``budget`` argument).
    """
    n, k = inst.n, inst.k
    cap = enumeration_budget() if budget is None else budget
    count = math.comb(n, k)
    if count > cap:
        hint = (
            "; fast_optimal_sum solves the sum variant without enumeration"
            if inst.variant is Variant.SUM
            else ""
        )
        raise EnumerationBudgetError(
            f"C({n}, {k}) = {count} solutions exceeds the enumeration budget "
            f"of {cap}{hint}"
        )

    locs = inst.locations
    order = order_stats(inst).sorted_order
    best_combo: tuple[int, ...] | None = None
    best_cost: Coord = 0
    if inst.variant is Variant.SUM:
        # Social cost of a solution is the sum over hosts of that host's
        # total distance to all agents, so precompute those totals once.
        host_total = {i: sum(abs(x - locs[i]) for x in locs) for i in range(n)}
        for combo in itertools.combinations(order, k):
            cost: Coord = 0
            for i in combo:
                cost += host_total[i]
            if best_combo is None or cost < best_cost:
                best_combo, best_cost = combo, cost
    else:
        for combo in itertools.combinations(order, k):
            cost = 0
            for x in locs:
                worst: Coord = 0
                for i in combo:
                    d = abs(x - locs[i])
                    if d > worst:
                        worst = d
                cost += worst
            if best_combo is None or cost < best_cost:
                best_combo, best_cost = combo, cost
    assert best_combo is not None
    return OptResult(Solution(frozenset(best_combo)), best_cost)


def fast_optimal_sum(inst: Instance) -> OptResult:
    """Optimal SUM-variant solution without enumerating all subsets.

    For k = 2: the two medians when n is even; the median plus its nearer
    neighbour when n is odd (distance ties go left, matching the stable
    sort order).  For larger k: scan every window of k consecutive sorted
    agents that covers a median position and keep the cheapest, leftmost
    window first on ties.
    """
    if inst.variant is not Variant.SUM:
        raise UnsupportedVariantError(
            "fast_optimal_sum only handles the sum variant; use "
            "brute_force_optimal for max"
        )
    stats = order_stats(inst)
    locs = inst.locations
    if inst.k == 2:
        if inst.n % 2 == 0:
            sol = Solution(frozenset((stats.median_lo, stats.median_hi)))
        else:
            m = locs[stats.median_lo]
            assert stats.l_idx is not None and stats.r_idx is not None
            if abs(m - locs[stats.l_idx]) <= abs(locs[stats.r_idx] - m):
                sol = Solution(frozenset((stats.l_idx, stats.median_lo)))
            else:
                sol = Solution(frozenset((stats.median_lo, stats.r_idx)))
        return OptResult(sol, social_cost(inst, sol))

    order = stats.sorted_order
    n, k = inst.n, inst.k
    best: OptResult | None = None
    for start in range(n - k + 1):
        end = start + k - 1
        if not (start <= stats.median_lo_pos <= end or start <= stats.median_hi_pos <= end):
            continue
        sol = Solution(frozenset(order[start : start + k]))
        cost = social_cost(inst, sol)
        if best is None or cost < best.cost:
            best = OptResult(sol, cost)
    assert best is not None  # the window around the median always exists
    return best
