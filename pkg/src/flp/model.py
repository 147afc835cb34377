"""Core model: instances, solutions, lotteries, and exact cost evaluation.

Facilities live on the real line and may only be opened at locations reported
by the agents themselves.  All arithmetic is exact: coordinates, costs, and
probabilities are rational numbers represented as Python ``int`` or
``fractions.Fraction`` (both exact, totally ordered, and freely mixable).
Floats are rejected at every entry point.

Agent indices are 0-based positions into ``Instance.locations``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import InfeasibleError, InputError, InvariantError, ParseError

Coord = Union[int, Fraction]
"""An exact rational number.  ``int`` is kept as-is for speed; a ``Fraction``
with denominator 1 is normalised to ``int`` on entry."""


class Variant(enum.Enum):
    """How an agent aggregates its distances to the k open facilities."""

    SUM = "sum"
    MAX = "max"


class Side(enum.Enum):
    """Selects the left or right neighbour of the low median."""

    LEFT = "left"
    RIGHT = "right"


def as_coord(value: object) -> Coord:
    """Coerce ``value`` to an exact rational coordinate.

    Accepts ``int``, ``Fraction``, and strings in decimal ("1.5", "0.2361")
    or ratio ("3/2", "-1/2") form.  Decimal strings parse exactly, never
    through binary floating point.  Floats are rejected.
    """
    if isinstance(value, bool):
        raise InputError(f"not a coordinate: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        try:
            parsed = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {value!r} as a rational number") from exc
        return int(parsed) if parsed.denominator == 1 else parsed
    if isinstance(value, float):
        raise InputError(
            f"refusing float {value!r}: pass an int, Fraction, or string so the "
            "value stays exact"
        )
    raise InputError(f"cannot interpret {value!r} as a rational coordinate")


def coord_str(value: Coord) -> str:
    """Canonical text form of a coordinate ("3", "-1/2").  Round-trips through
    :func:`as_coord` without value change."""
    return str(value)


def exact_div(num: Coord, den: Coord) -> Fraction:
    """Exact rational division (never falls back to float)."""
    return Fraction(num) / den


def _require_coord(value: object, what: str) -> Coord:
    if type(value) is int:  # the common case; bool has type bool, not int
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an exact rational, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class Instance:
    """A profile of reported locations plus the number of facilities to open.

    ``locations`` preserves the reported order; sorting is a view computed by
    :func:`order_stats`.  Requires n >= 2 agents and 2 <= k <= n facilities
    (facilities must sit at distinct agent indices, so k > n is infeasible).
    """

    locations: tuple[Coord, ...]
    k: int
    variant: Variant

    def __post_init__(self) -> None:
        clean = tuple(_require_coord(x, "coordinate") for x in self.locations)
        object.__setattr__(self, "locations", clean)
        n = len(clean)
        if n < 2:
            raise InfeasibleError(f"need at least 2 agents, got {n}")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise InputError(f"k must be an int, got {self.k!r}")
        if self.k < 2:
            raise InfeasibleError(f"need at least 2 facilities, got k={self.k}")
        if self.k > n:
            raise InfeasibleError(f"infeasible: k exceeds n (k={self.k}, n={n})")
        if not isinstance(self.variant, Variant):
            raise InputError(f"variant must be a Variant, got {self.variant!r}")

    @classmethod
    def from_values(
        cls, values: Iterable[object], k: int, variant: Variant | str
    ) -> "Instance":
        """Build an instance, parsing coordinates and the variant leniently."""
        if isinstance(variant, str):
            try:
                variant = Variant(variant.lower())
            except ValueError:
                raise InputError(
                    f"unknown variant {variant!r} (expected 'sum' or 'max')"
                ) from None
        return cls(tuple(as_coord(v) for v in values), k, variant)

    @property
    def n(self) -> int:
        return len(self.locations)

    def with_location(self, agent: int, value: Coord) -> "Instance":
        """Copy of this instance where ``agent`` reports ``value`` instead."""
        self.check_agent(agent)
        locs = list(self.locations)
        locs[agent] = _require_coord(value, "coordinate")
        return Instance(tuple(locs), self.k, self.variant)

    def check_agent(self, agent: int) -> None:
        if isinstance(agent, bool) or not isinstance(agent, int):
            raise InputError(f"agent index must be an int, got {agent!r}")
        if not 0 <= agent < len(self.locations):
            raise InputError(
                f"agent index {agent} out of range for n={len(self.locations)}"
            )


@dataclass(frozen=True, slots=True)
class Solution:
    """A set of k distinct agent indices hosting the facilities."""

    hosts: frozenset[int]

    def __post_init__(self) -> None:
        if not isinstance(self.hosts, frozenset):
            object.__setattr__(self, "hosts", frozenset(self.hosts))
        if not self.hosts:
            raise InvariantError("a solution must open at least one facility")
        for h in self.hosts:
            if type(h) is not int or h < 0:
                raise InputError(f"host must be a nonnegative agent index, got {h!r}")

    @classmethod
    def of(cls, *indices: int) -> "Solution":
        if len(set(indices)) != len(indices):
            raise InputError(f"duplicate host indices in {indices!r}")
        return cls(frozenset(indices))

    def sorted_hosts(self) -> tuple[int, ...]:
        return tuple(sorted(self.hosts))

    def coords(self, inst: Instance) -> tuple[Coord, ...]:
        """Host coordinates sorted by (coordinate, agent index), for display."""
        hosts = sorted(self.hosts, key=lambda i: (inst.locations[i], i))
        return tuple(inst.locations[i] for i in hosts)


def check_feasible(inst: Instance, sol: Solution) -> None:
    """Raise unless ``sol`` opens exactly ``inst.k`` facilities at valid agents."""
    if len(sol.hosts) != inst.k:
        raise InputError(
            f"solution opens {len(sol.hosts)} facilities, instance requires k={inst.k}"
        )
    n = len(inst.locations)
    for h in sol.hosts:
        if h >= n:
            raise InputError(f"host index {h} out of range for n={n}")


Prob = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class Lottery:
    """A probability distribution over solutions with exact probabilities.

    Zero-probability outcomes are dropped at construction, so a lottery whose
    mass collapses onto one solution compares equal to the point mass.
    """

    support: tuple[tuple[Solution, Prob], ...]

    def __post_init__(self) -> None:
        total: Prob = 0
        seen: set[frozenset[int]] = set()
        cleaned: list[tuple[Solution, Prob]] = []
        for sol, p in self.support:
            p = _require_coord(p, "probability")
            if p < 0:
                raise InvariantError(f"negative probability {p} in lottery")
            if p == 0:
                continue
            if sol.hosts in seen:
                raise InvariantError(
                    f"duplicate solution {sorted(sol.hosts)} in lottery support"
                )
            seen.add(sol.hosts)
            cleaned.append((sol, p))
            total += p
        if total != 1:
            raise InvariantError(f"lottery probabilities sum to {total}, expected 1")
        object.__setattr__(self, "support", tuple(cleaned))

    @classmethod
    def point_mass(cls, sol: Solution) -> "Lottery":
        return cls._trusted(((sol, 1),))

    @classmethod
    def _trusted(cls, support: tuple[tuple[Solution, Prob], ...]) -> "Lottery":
        """Internal fast path for construction sites that guarantee the
        invariants (used by mechanisms, which run in tight verification
        loops).  Zero-probability entries are still dropped."""
        kept = tuple(entry for entry in support if entry[1] != 0)
        obj = object.__new__(cls)
        object.__setattr__(obj, "support", kept)
        return obj

    def is_degenerate(self) -> bool:
        return len(self.support) == 1

    def outcomes(self) -> Iterator[tuple[Solution, Prob]]:
        return iter(self.support)


def distance(a: Coord, b: Coord) -> Coord:
    """|a - b|, exact."""
    return abs(a - b)


def _cost_from(point: Coord, inst: Instance, sol: Solution) -> Coord:
    """Cost a single point pays toward ``sol`` under the instance's variant."""
    locs = inst.locations
    if inst.variant is Variant.SUM:
        total: Coord = 0
        for h in sol.hosts:
            total += abs(point - locs[h])
        return total
    worst: Coord = 0
    for h in sol.hosts:
        d = abs(point - locs[h])
        if d > worst:
            worst = d
    return worst


def agent_cost(inst: Instance, sol: Solution, agent: int) -> Coord:
    """Variant-dependent cost of one agent: the sum (SUM) or maximum (MAX)
    of its distances to the open facilities."""
    inst.check_agent(agent)
    check_feasible(inst, sol)
    return _cost_from(inst.locations[agent], inst, sol)


def social_cost(inst: Instance, sol: Solution) -> Coord:
    """Total cost: sum of every agent's cost toward ``sol``."""
    check_feasible(inst, sol)
    total: Coord = 0
    for loc in inst.locations:
        total += _cost_from(loc, inst, sol)
    return total


def expected_social_cost(inst: Instance, lottery: Lottery) -> Coord:
    """Probability-weighted social cost of a lottery over solutions."""
    total: Coord = 0
    for sol, p in lottery.support:
        total += p * social_cost(inst, sol)
    return total


def expected_agent_cost(
    inst: Instance, lottery: Lottery, agent: int, true_location: Coord
) -> Coord:
    """Expected cost of ``agent`` measured from ``true_location``.

    ``inst`` may be a deviated profile; the cost is still evaluated from the
    agent's true location, which is what a manipulation check compares.
    """
    inst.check_agent(agent)
    point = _require_coord(true_location, "true_location")
    total: Coord = 0
    for sol, p in lottery.support:
        check_feasible(inst, sol)
        total += p * _cost_from(point, inst, sol)
    return total


@dataclass(frozen=True, slots=True)
class OrderStats:
    """Sorted view of an instance: stable order plus median bookkeeping.

    ``sorted_order`` lists agent indices sorted by (coordinate, agent index);
    Python's stable sort realises exactly that tie-break.  ``median_lo`` is
    the agent at 1-based sorted position ceil(n/2) for odd n and n/2 for even
    n; ``median_hi`` equals it for odd n and sits one position right for even
    n.  ``l_idx``/``r_idx`` are the sorted neighbours of ``median_lo`` when
    they exist.
    """

    sorted_order: tuple[int, ...]
    median_lo: int
    median_hi: int
    l_idx: int | None
    r_idx: int | None
    median_lo_pos: int
    median_hi_pos: int


def order_stats(inst: Instance) -> OrderStats:
    locs = inst.locations
    n = len(locs)
    order = tuple(sorted(range(n), key=locs.__getitem__))
    lo_pos = (n - 1) // 2
    hi_pos = n // 2
    return OrderStats(
        sorted_order=order,
        median_lo=order[lo_pos],
        median_hi=order[hi_pos],
        l_idx=order[lo_pos - 1] if lo_pos >= 1 else None,
        r_idx=order[lo_pos + 1] if lo_pos + 1 < n else None,
        median_lo_pos=lo_pos,
        median_hi_pos=hi_pos,
    )


def lemma_pair_cost(inst: Instance, side: Side) -> Coord:
    """Closed form 2 * sum_i d(i, m) + d(m, x) for the pair {median, neighbour}.

    Here m is the median agent of an odd-n instance and x its left or right
    sorted neighbour per ``side``.  For the SUM variant this equals
    ``social_cost`` of that pair exactly, which makes it a useful independent
    cross-check of the cost evaluator.  Requires odd n >= 3 and k = 2.
    """
    n = inst.n
    if n % 2 == 0:
        raise InputError(f"pair cost formula needs an odd number of agents, got n={n}")
    if inst.k != 2:
        raise InputError(f"pair cost formula is defined for k=2, got k={inst.k}")
    stats = order_stats(inst)
    m = inst.locations[stats.median_lo]
    neighbour = stats.l_idx if side is Side.LEFT else stats.r_idx
    if neighbour is None:  # unreachable for odd n >= 3, kept as a guard
        raise InputError(f"median has no {side.value} neighbour")
    x = inst.locations[neighbour]
    total: Coord = 0
    for loc in inst.locations:
        total += abs(loc - m)
    return 2 * total + abs(m - x)
