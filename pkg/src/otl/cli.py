"""Command-line entry point.

Exit codes: 0 success / verification pass, 1 verification failure,
2 configuration error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from . import verify as verify_mod
from .beliefs import belief_id
from .config import dump_config, load_config
from .errors import ConfigurationError, ResourceLimitError, ValidationError
from .mdp import solve_q
from .policies import POLICY_KINDS, PolicySpec, make_policy
from .sim import ComparisonTable, SimResult, compare, run

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

PATH_CSV_COLUMNS = ["path_id", "t", "move", "action", "size", "reward", "wealth"]
STATS_CSV_COLUMNS = [
    "policy",
    "mean_terminal",
    "std_terminal",
    "q05",
    "q25",
    "q50",
    "q75",
    "q95",
    "mean_max_drawdown",
    "ruin_fraction",
]
QTABLE_CSV_COLUMNS = ["t", "belief_id", "action", "q_value", "is_optimal"]


def _num(x: float) -> str:
    # repr of a float is the shortest string that parses back exactly
    return repr(float(x))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otl")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve the Q-table for a config")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--out", help="write the Q-table as CSV")
    p_solve.add_argument(
        "--dump-config", action="store_true", help="print the effective config and exit"
    )

    p_sim = sub.add_parser("simulate", help="run one policy over seeded paths")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--policy", required=True, help=",".join(POLICY_KINDS))
    p_sim.add_argument("--out", required=True, help="per-path CSV output")
    p_sim.add_argument("--stats-out", help="summary statistics CSV output")

    p_cmp = sub.add_parser("compare", help="common-random-numbers policy comparison")
    p_cmp.add_argument("--config", required=True)
    p_cmp.add_argument("--policies", required=True, help="comma-separated policy names")
    p_cmp.add_argument("--out", required=True, help="per-policy statistics CSV")

    p_ver = sub.add_parser("verify", help="run the mechanical checkers")
    p_ver.add_argument(
        "--suite",
        default="all",
        choices=["all"] + sorted(verify_mod.SUITES),
    )
    p_ver.add_argument("--json", dest="json_out", help="write the report as JSON")
    return parser


def _write_qtable_csv(table, path: str) -> None:
    problem = table.problem
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(QTABLE_CSV_COLUMNS)
        for t in range(problem.horizon):
            beliefs = sorted(table.reachable_beliefs(t), key=belief_id)
            for b in beliefs:
                best = table.optimal_action(t, b)
                for a in problem.action_set:
                    writer.writerow(
                        [t, belief_id(b), str(a), _num(table.q(t, b, a)), int(a == best)]
                    )


def _write_paths_csv(result: SimResult, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PATH_CSV_COLUMNS)
        for wp in result.paths:
            for rec in wp.steps:
                writer.writerow(
                    [
                        wp.path_id,
                        rec.t,
                        rec.move.value,
                        rec.action.direction.value,
                        rec.action.size,
                        _num(rec.reward),
                        _num(rec.wealth_after),
                    ]
                )


def _stats_row(name: str, stats) -> list[str]:
    return [
        name,
        _num(stats.mean_terminal),
        _num(stats.std_terminal),
        _num(stats.q05),
        _num(stats.q25),
        _num(stats.q50),
        _num(stats.q75),
        _num(stats.q95),
        _num(stats.mean_max_drawdown),
        _num(stats.ruin_fraction),
    ]


def _write_stats_csv(rows: list[tuple[str, object]], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(STATS_CSV_COLUMNS)
        for name, stats in rows:
            writer.writerow(_stats_row(name, stats))


def _print_stats(name: str, stats) -> None:
    print(f"policy {name}:")
    print(f"  mean terminal   {stats.mean_terminal:.6f}")
    print(f"  std terminal    {stats.std_terminal:.6f}")
    print(
        "  quantiles 5/25/50/75/95  "
        + " ".join(f"{q:.4f}" for q in stats.quantiles())
    )
    print(f"  mean max drawdown  {stats.mean_max_drawdown:.6f}")
    print(f"  ruin fraction      {stats.ruin_fraction:.6f}")


def _cmd_solve(args) -> int:
    cfg = load_config(args.config)
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK
    table = solve_q(cfg.problem())
    problem = table.problem
    for t in range(problem.horizon):
        for b in sorted(table.reachable_beliefs(t), key=belief_id):
            best = table.optimal_action(t, b)
            for a in problem.action_set:
                print(f"t={t}, belief={belief_id(b)}, {a}, {_num(table.q(t, b, a))}")
            print(f"t={t}, belief={belief_id(b)} -> {best}")
    if args.out:
        _write_qtable_csv(table, args.out)
    return EXIT_OK


def _parse_policy_name(name: str) -> PolicySpec:
    name = name.strip().lower()
    if name not in POLICY_KINDS:
        raise ConfigurationError(f"unknown policy name: {name!r}")
    return PolicySpec(kind=name)


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    spec = _parse_policy_name(args.policy)
    policy = make_policy(spec, cfg.problem())
    result = run(policy, cfg.market(), cfg.sim_config())
    _write_paths_csv(result, args.out)
    if args.stats_out:
        _write_stats_csv([(result.policy_name, result.stats)], args.stats_out)
    _print_stats(result.policy_name, result.stats)
    return EXIT_OK


def _cmd_compare(args) -> int:
    cfg = load_config(args.config)
    names = [n for n in args.policies.split(",") if n.strip()]
    if not names:
        raise ConfigurationError("--policies must name at least one policy")
    problem = cfg.problem()
    policies = [make_policy(_parse_policy_name(n), problem) for n in names]
    table: ComparisonTable = compare(policies, cfg.market(), cfg.sim_config())
    _write_stats_csv([(row.policy_name, row.stats) for row in table.rows], args.out)
    for row in table.rows:
        _print_stats(row.policy_name, row.stats)
    for pw in table.pairwise:
        print(
            f"mean diff {pw.policy_a} - {pw.policy_b}: {pw.mean_diff:.6f}"
            f"  99% CI [{pw.ci_low:.6f}, {pw.ci_high:.6f}]"
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite == "all":
        reports = verify_mod.run_all()
    else:
        reports = [verify_mod.SUITES[args.suite]()]
    for rep in reports:
        print(rep.render())
    overall = all(rep.overall for rep in reports)
    if args.json_out:
        doc = {"reports": [rep.to_dict() for rep in reports], "overall": overall}
        with open(args.json_out, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    print(f"verify: {'PASS' if overall else 'FAIL'}")
    return EXIT_OK if overall else EXIT_VERIFY_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": _cmd_solve,
        "simulate": _cmd_simulate,
        "compare": _cmd_compare,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ConfigurationError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
