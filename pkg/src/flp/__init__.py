"""Facility location on a line where facilities may only be opened at agent
locations.

The package provides exact (rational-arithmetic) cost evaluation for the sum
and max cost variants, optimal solvers, a family of placement mechanisms with
declared approximation bounds, a strategyproofness refuter, seeded instance
generators, and a CLI (``flp``).
"""

from .bounds import RP_BOUND, declared_bound
from .errors import (
    EnumerationBudgetError,
    FlpError,
    InfeasibleError,
    InputError,
    InvariantError,
    MechanismPreconditionError,
    ParseError,
    UnsupportedVariantError,
)
from .fileio import (
    dump_instance,
    instance_digest,
    instance_from_dict,
    instance_to_dict,
    load_instance,
)
from .generators import Family, GenSpec, generate, perturb
from .mechanisms import (
    MechanismId,
    apply,
    auto_sum,
    is_strategyproof,
    median_ball,
    median_left,
    median_right,
    opt_sum_baseline,
    reverse_proportional,
    two_medians,
    uniform_lr,
)
from .model import (
    Coord,
    Instance,
    Lottery,
    OrderStats,
    Side,
    Solution,
    Variant,
    agent_cost,
    as_coord,
    coord_str,
    distance,
    expected_agent_cost,
    expected_social_cost,
    lemma_pair_cost,
    order_stats,
    social_cost,
)
from .solver import (
    DEFAULT_BUDGET,
    OptResult,
    brute_force_optimal,
    enumerate_solutions,
    enumeration_budget,
    fast_optimal_sum,
)
from .verification import (
    REGRESSION_NAMES,
    RatioReport,
    RegressionResult,
    SpScan,
    SpViolation,
    approx_ratio,
    candidate_misreports,
    lemma_pair_cost_consistent,
    run_regressions,
    sp_refute,
    sp_scan,
    worst_ratio_search,
)

__version__ = "0.1.0"

__all__ = [
    "Coord",
    "DEFAULT_BUDGET",
    "EnumerationBudgetError",
    "Family",
    "FlpError",
    "GenSpec",
    "InfeasibleError",
    "InputError",
    "Instance",
    "InvariantError",
    "Lottery",
    "MechanismId",
    "MechanismPreconditionError",
    "OptResult",
    "OrderStats",
    "ParseError",
    "REGRESSION_NAMES",
    "RP_BOUND",
    "RatioReport",
    "RegressionResult",
    "Side",
    "Solution",
    "SpScan",
    "SpViolation",
    "UnsupportedVariantError",
    "Variant",
    "agent_cost",
    "apply",
    "approx_ratio",
    "as_coord",
    "auto_sum",
    "brute_force_optimal",
    "candidate_misreports",
    "coord_str",
    "declared_bound",
    "distance",
    "dump_instance",
    "enumerate_solutions",
    "enumeration_budget",
    "expected_agent_cost",
    "expected_social_cost",
    "fast_optimal_sum",
    "generate",
    "instance_digest",
    "instance_from_dict",
    "instance_to_dict",
    "is_strategyproof",
    "lemma_pair_cost",
    "lemma_pair_cost_consistent",
    "load_instance",
    "median_ball",
    "median_left",
    "median_right",
    "opt_sum_baseline",
    "order_stats",
    "perturb",
    "reverse_proportional",
    "run_regressions",
    "social_cost",
    "sp_refute",
    "sp_scan",
    "two_medians",
    "uniform_lr",
    "worst_ratio_search",
]
