"""Facility placement mechanisms mapping reported locations to lotteries.

Every mechanism returns a :class:`~flp.model.Lottery`; deterministic rules
return a point mass.  Mechanisms only read the reported profile, never the
variant-specific costs, except for the optimal-cost baseline, which is the
deliberately manipulable negative control used to validate the refuter.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable

from .errors import InputError, MechanismPreconditionError
from .model import Instance, Lottery, Solution, exact_div, order_stats
from .solver import fast_optimal_sum

_HALF = Fraction(1, 2)


class MechanismId(enum.Enum):
    """Stable identifiers, doubling as the CLI spelling of each mechanism."""

    TWO_MEDIANS = "two-medians"
    MEDIAN_RIGHT = "median-right"
    MEDIAN_LEFT = "median-left"
    UNIFORM = "uniform"
    REVERSE_PROPORTIONAL = "reverse-proportional"
    MEDIAN_BALL = "median-ball"
    AUTO_SUM = "auto-sum"
    OPT_SUM_BASELINE = "opt-sum-baseline"


def is_strategyproof(mech: MechanismId) -> bool:
    """Whether the mechanism is designed to be strategyproof (in expectation).

    The optimal-cost baseline intentionally is not; it exists so the
    manipulation search has a known-positive target.
    """
    return mech is not MechanismId.OPT_SUM_BASELINE


def _require_k2(inst: Instance, name: str) -> None:
    if inst.k != 2:
        raise MechanismPreconditionError(f"{name} requires k=2, got k={inst.k}")


def _require_odd(inst: Instance, name: str) -> None:
    if inst.n % 2 == 0:
        raise MechanismPreconditionError(
            f"{name} requires an odd number of agents, got n={inst.n}"
        )


def two_medians(inst: Instance) -> Lottery:
    """Open both median agents.  Needs k=2 and even n (odd n has one median)."""
    _require_k2(inst, "two-medians")
    if inst.n % 2 != 0:
        raise MechanismPreconditionError(
            f"two-medians requires an even number of agents, got n={inst.n}"
        )
    stats = order_stats(inst)
    return Lottery.point_mass(Solution(frozenset((stats.median_lo, stats.median_hi))))


def median_right(inst: Instance) -> Lottery:
    """Open the low median and its right sorted neighbour.  Needs k=2."""
    _require_k2(inst, "median-right")
    stats = order_stats(inst)
    if stats.r_idx is None:  # unreachable for n >= 2, kept as a guard
        raise MechanismPreconditionError("median-right: median has no right neighbour")
    return Lottery.point_mass(Solution(frozenset((stats.median_lo, stats.r_idx))))


def median_left(inst: Instance) -> Lottery:
    """Open the low median and its left sorted neighbour.  Needs k=2 and n >= 3."""
    _require_k2(inst, "median-left")
    stats = order_stats(inst)
    if stats.l_idx is None:
        raise MechanismPreconditionError(
            f"median-left requires the median to have a left neighbour, got n={inst.n}"
        )
    return Lottery.point_mass(Solution(frozenset((stats.l_idx, stats.median_lo))))


def uniform_lr(inst: Instance) -> Lottery:
    """Open {left neighbour, median} or {median, right neighbour}, each with
    probability 1/2.  Needs k=2 and odd n >= 3."""
    _require_k2(inst, "uniform")
    _require_odd(inst, "uniform")
    stats = order_stats(inst)
    assert stats.l_idx is not None and stats.r_idx is not None
    return Lottery._trusted(
        (
            (Solution(frozenset((stats.l_idx, stats.median_lo))), _HALF),
            (Solution(frozenset((stats.median_lo, stats.r_idx))), _HALF),
        )
    )


def reverse_proportional(inst: Instance) -> Lottery:
    """Randomise between the two median-adjacent pairs with probabilities
    inversely proportional to their gap from the median.

    With l, m, r the median's left neighbour, the median, and its right
    neighbour: pick {l, m} with probability d(m, r) / d(l, r) and {m, r}
    with probability d(l, m) / d(l, r), so the nearer neighbour is the more
    likely partner.  If l and r coincide with m, both pairs cost the same
    and the split is 1/2 each.  Needs k=2 and odd n >= 3.
    """
    _require_k2(inst, "reverse-proportional")
    _require_odd(inst, "reverse-proportional")
    stats = order_stats(inst)
    assert stats.l_idx is not None and stats.r_idx is not None
    locs = inst.locations
    m = locs[stats.median_lo]
    gap_l = abs(m - locs[stats.l_idx])
    gap_r = abs(locs[stats.r_idx] - m)
    span = gap_l + gap_r
    if span == 0:
        p_left: Fraction = _HALF
        p_right: Fraction = _HALF
    else:
        p_left = exact_div(gap_r, span)
        p_right = exact_div(gap_l, span)
    return Lottery._trusted(
        (
            (Solution(frozenset((stats.l_idx, stats.median_lo))), p_left),
            (Solution(frozenset((stats.median_lo, stats.r_idx))), p_right),
        )
    )


def median_ball(inst: Instance) -> Lottery:
    """Open a window of k consecutive sorted agents balanced around the low
    median: (k-1)/2 on each side for odd k, one fewer on the left for even
    k.  At the ends of the line the window shifts inward so it keeps k
    agents; it always still contains the median.  Works for any 2 <= k <= n.
    """
    stats = order_stats(inst)
    n, k = inst.n, inst.k
    if k % 2 == 1:
        start = stats.median_lo_pos - (k - 1) // 2
    else:
        start = stats.median_lo_pos - (k // 2 - 1)
    start = max(0, min(start, n - k))
    window = stats.sorted_order[start : start + k]
    return Lottery.point_mass(Solution(frozenset(window)))


def auto_sum(inst: Instance) -> Lottery:
    """Parity dispatch for k=2: two-medians on even n (cost-optimal for the
    sum variant), reverse-proportional on odd n."""
    _require_k2(inst, "auto-sum")
    if inst.n % 2 == 0:
        return two_medians(inst)
    return reverse_proportional(inst)


def opt_sum_baseline(inst: Instance) -> Lottery:
    """Point mass on the exact sum-variant optimum.  Cost-perfect but
    manipulable; kept as the refuter's negative control.  Sum variant only."""
    return Lottery.point_mass(fast_optimal_sum(inst).solution)


_DISPATCH: dict[MechanismId, Callable[[Instance], Lottery]] = {
    MechanismId.TWO_MEDIANS: two_medians,
    MechanismId.MEDIAN_RIGHT: median_right,
    MechanismId.MEDIAN_LEFT: median_left,
    MechanismId.UNIFORM: uniform_lr,
    MechanismId.REVERSE_PROPORTIONAL: reverse_proportional,
    MechanismId.MEDIAN_BALL: median_ball,
    MechanismId.AUTO_SUM: auto_sum,
    MechanismId.OPT_SUM_BASELINE: opt_sum_baseline,
}


def apply(mech: MechanismId, inst: Instance) -> Lottery:
    """Run ``mech`` on ``inst``, raising MechanismPreconditionError (or, for
    the baseline on a max instance, UnsupportedVariantError) when it does
    not apply."""
    if not isinstance(mech, MechanismId):
        try:
            mech = MechanismId(mech)
        except ValueError:
            known = ", ".join(m.value for m in MechanismId)
            raise InputError(f"unknown mechanism {mech!r} (known: {known})") from None
    return _DISPATCH[mech](inst)
