"""Command-line interface.

Subcommands: solve, mech, verify-sp, ratio-sweep, search, regress.  Results
go to stdout (or --out) as JSON or CSV; diagnostics go to stderr.  Exit
codes are part of the contract:

  0  success
  1  input, parse, or internal error
  2  infeasible instance or configuration (e.g. k exceeds n)
  3  mechanism precondition not met
  4  a strategyproofness violation was found
  5  a sweep ratio exceeded the mechanism's declared bound
  6  a regression fixture failed
"""

from __future__ import annotations

import argparse
import enum
import sys
from typing import Any

from .bounds import declared_bound
from .errors import (
    FlpError,
    InfeasibleError,
    InvariantError,
    MechanismPreconditionError,
    UnsupportedVariantError,
)
from .fileio import (
    RESULT_FORMAT,
    RESULT_VERSION,
    dual,
    instance_digest,
    load_instance,
    lottery_to_list,
    write_record,
    write_sweep_csv,
)
from .generators import Family, GenSpec, generate
from .mechanisms import MechanismId, apply, is_strategyproof
from .model import Instance, Variant, coord_str
from .solver import brute_force_optimal, fast_optimal_sum
from .verification import approx_ratio, run_regressions, sp_scan, worst_ratio_search


class ExitCode(enum.IntEnum):
    OK = 0
    ERROR = 1
    INFEASIBLE = 2
    PRECONDITION = 3
    SP_VIOLATION = 4
    BOUND_EXCEEDED = 5
    REGRESSION_FAILED = 6


def _base_record(command: str) -> dict[str, Any]:
    return {"format": RESULT_FORMAT, "version": RESULT_VERSION, "command": command}


def _emit(record: dict[str, Any], out_path: str | None) -> None:
    if out_path is None:
        write_record(record, sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8") as fp:
            write_record(record, fp)


def _instance_header(inst: Instance) -> dict[str, Any]:
    return {
        "instance_digest": instance_digest(inst),
        "variant": inst.variant.value,
        "n": inst.n,
        "k": inst.k,
        "locations": [coord_str(x) for x in inst.locations],
    }


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    opt = brute_force_optimal(inst)
    cost_str, cost_float = dual(opt.cost)
    record = _base_record("solve")
    record.update(_instance_header(inst))
    record.update(
        {
            "optimal_agents": list(opt.solution.sorted_hosts()),
            "optimal_coordinates": [coord_str(c) for c in opt.solution.coords(inst)],
            "optimal_cost": cost_str,
            "optimal_cost_float": cost_float,
        }
    )
    if inst.variant is Variant.SUM:
        fast = fast_optimal_sum(inst)
        if fast.cost != opt.cost:
            raise InvariantError(
                f"median-window solver cost {fast.cost} disagrees with "
                f"enumeration cost {opt.cost}"
            )
        record["fast_solver_agrees"] = True
        record["fast_solver_coordinates"] = [
            coord_str(c) for c in fast.solution.coords(inst)
        ]
    _emit(record, args.out)
    return ExitCode.OK


def cmd_mech(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    mech = MechanismId(args.mech)
    lottery = apply(mech, inst)
    report = approx_ratio(mech, inst)
    mech_cost = dual(report.mech_cost)
    opt_cost = dual(report.opt_cost)
    ratio = dual(report.ratio)
    record = _base_record("mech")
    record["mechanism"] = mech.value
    record["strategyproof_by_design"] = is_strategyproof(mech)
    record.update(_instance_header(inst))
    record.update(
        {
            "lottery": lottery_to_list(inst, lottery),
            "expected_social_cost": mech_cost[0],
            "expected_social_cost_float": mech_cost[1],
            "optimal_cost": opt_cost[0],
            "optimal_cost_float": opt_cost[1],
            "ratio": ratio[0],
            "ratio_float": ratio[1],
        }
    )
    _emit(record, args.out)
    return ExitCode.OK


def _gen_spec(args: argparse.Namespace) -> GenSpec:
    return GenSpec(
        family=Family(args.family),
        n=args.n,
        k=args.k,
        variant=Variant(args.variant),
        seed=args.seed,
    )


def cmd_verify_sp(args: argparse.Namespace) -> int:
    mech = MechanismId(args.mech)
    spec = _gen_spec(args)
    instances = generate(spec, args.trials)
    checked = 0
    evaluated = 0
    skipped = 0
    violation: dict[str, Any] | None = None
    for idx, inst in enumerate(instances):
        scan = sp_scan(mech, inst, args.grid_points)
        checked += 1
        evaluated += scan.evaluated
        skipped += scan.skipped
        if scan.violation is not None:
            v = scan.violation
            honest = dual(v.honest_cost)
            deviated = dual(v.deviated_cost)
            violation = {
                "seed_index": idx,
                **_instance_header(inst),
                "agent": v.agent,
                "true_location": coord_str(v.true_location),
                "misreport": coord_str(v.misreport),
                "honest_cost": honest[0],
                "honest_cost_float": honest[1],
                "deviated_cost": deviated[0],
                "deviated_cost_float": deviated[1],
            }
            break
    record = _base_record("verify-sp")
    record.update(
        {
            "mechanism": mech.value,
            "family": spec.family.value,
            "variant": spec.variant.value,
            "n": args.n,
            "k": args.k,
            "seed": args.seed,
            "grid_points": args.grid_points,
            "trials_requested": args.trials,
            "instances_checked": checked,
            "deviations_evaluated": evaluated,
            "deviations_skipped": skipped,
            "violation": violation,
        }
    )
    _emit(record, args.out)
    if violation is not None:
        print(
            f"strategyproofness violation: {mech.value} on seed index "
            f"{violation['seed_index']}, agent {violation['agent']} gains by "
            f"reporting {violation['misreport']}",
            file=sys.stderr,
        )
        return ExitCode.SP_VIOLATION
    return ExitCode.OK


def cmd_ratio_sweep(args: argparse.Namespace) -> int:
    mech = MechanismId(args.mech)
    spec = _gen_spec(args)
    bound = declared_bound(mech, spec.variant, args.n, args.k)
    rows: list[dict[str, Any]] = []
    worst = None
    for idx, inst in enumerate(generate(spec, args.trials)):
        report = approx_ratio(mech, inst)
        rows.append(
            {
                "seed_index": idx,
                "n": inst.n,
                "k": inst.k,
                "variant": inst.variant.value,
                "mech_cost": coord_str(report.mech_cost),
                "opt_cost": coord_str(report.opt_cost),
                "ratio": coord_str(report.ratio),
                "ratio_float": dual(report.ratio)[1],
            }
        )
        if worst is None or report.ratio > worst.ratio:
            worst = report
    if args.out is None:
        write_sweep_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fp:
            write_sweep_csv(rows, fp)
    if bound is not None and worst is not None and worst.ratio > bound:
        print(
            f"bound exceeded: {mech.value} reached ratio {worst.ratio} "
            f"(> declared {bound}) on locations "
            f"{[coord_str(x) for x in worst.instance.locations]}",
            file=sys.stderr,
        )
        return ExitCode.BOUND_EXCEEDED
    return ExitCode.OK


def cmd_search(args: argparse.Namespace) -> int:
    mech = MechanismId(args.mech)
    report = worst_ratio_search(
        mech,
        Variant(args.variant),
        args.n,
        args.k,
        trials=args.trials,
        seed=args.seed,
        perturb_rounds=args.rounds,
    )
    mech_cost = dual(report.mech_cost)
    opt_cost = dual(report.opt_cost)
    ratio = dual(report.ratio)
    record = _base_record("search")
    record["mechanism"] = mech.value
    record.update(_instance_header(report.instance))
    record.update(
        {
            "trials": args.trials,
            "seed": args.seed,
            "rounds": args.rounds,
            "mech_cost": mech_cost[0],
            "mech_cost_float": mech_cost[1],
            "opt_cost": opt_cost[0],
            "opt_cost_float": opt_cost[1],
            "ratio": ratio[0],
            "ratio_float": ratio[1],
        }
    )
    _emit(record, args.out)
    return ExitCode.OK


def cmd_regress(args: argparse.Namespace) -> int:
    results = run_regressions(args.only)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.details}")
    passed = sum(1 for r in results if r.passed)
    print(f"{passed}/{len(results)} regression fixtures passed")
    return ExitCode.OK if passed == len(results) else ExitCode.REGRESSION_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flp",
        description=(
            "Facility location on a line with facilities restricted to agent "
            "locations: exact solving, mechanisms, and manipulation checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    mech_ids = [m.value for m in MechanismId]
    family_ids = [f.value for f in Family]

    def add_gen_flags(p: argparse.ArgumentParser, default_trials: int) -> None:
        p.add_argument("--variant", required=True, choices=["sum", "max"])
        p.add_argument("--n", type=int, required=True, help="number of agents")
        p.add_argument("--k", type=int, default=2, help="facilities to open")
        p.add_argument("--trials", type=int, default=default_trials)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("solve", help="exact optimum of an instance file")
    p.add_argument("--instance", required=True, metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mech", help="run one mechanism on an instance file")
    p.add_argument("--mech", required=True, choices=mech_ids)
    p.add_argument("--instance", required=True, metavar="PATH")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_mech)

    p = sub.add_parser(
        "verify-sp", help="search seeded instances for profitable misreports"
    )
    p.add_argument("--mech", required=True, choices=mech_ids)
    add_gen_flags(p, default_trials=100)
    p.add_argument("--grid-points", type=int, default=200, dest="grid_points")
    p.add_argument("--family", choices=family_ids, default="uniform-int")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify_sp)

    p = sub.add_parser(
        "ratio-sweep", help="CSV of exact ratios over seeded instances"
    )
    p.add_argument("--mech", required=True, choices=mech_ids)
    add_gen_flags(p, default_trials=100)
    p.add_argument("--family", choices=family_ids, default="uniform-int")
    p.add_argument("--out", metavar="PATH", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_ratio_sweep)

    p = sub.add_parser(
        "search", help="hunt for high-ratio instances by sampling plus hill-climb"
    )
    p.add_argument("--mech", required=True, choices=mech_ids)
    add_gen_flags(p, default_trials=200)
    p.add_argument("--rounds", type=int, default=10, help="halving refinement rounds")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("regress", help="run the pinned regression fixtures")
    p.add_argument("--only", metavar="NAME", help="run a single fixture by name")
    p.set_defaults(func=cmd_regress)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; keep 2 reserved
        # for infeasibility and fold usage problems into the generic error code.
        return ExitCode.OK if exc.code == 0 else ExitCode.ERROR
    try:
        return int(args.func(args))
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitCode.INFEASIBLE
    except (MechanismPreconditionError, UnsupportedVariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitCode.PRECONDITION
    except FlpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitCode.ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitCode.ERROR


if __name__ == "__main__":
    sys.exit(main())
