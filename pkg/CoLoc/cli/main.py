"""CoLoc command-line interface."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from colorama import Fore, Style, init as colorama_init

from CoLoc import __version__
from CoLoc.core.exceptions import (
    BudgetExceededError,
    ColocError,
    FieldError,
    FieldTooSmallError,
    ScenarioError,
    UsageError,
)
from CoLoc.core.schema import SCENARIO_SCHEMES
from CoLoc.core.settings import load_runtime_settings
from CoLoc.locality_oracle import locality_report
from CoLoc.matmul import MATDOT, MATMUL_SCHEMES
from CoLoc.scenario import Scenario, acceptance_scenarios, load_scenario, load_scenario_set
from CoLoc.simulator import SWEEP_COLUMNS, run_matmul, run_scenario, sweep
from CoLoc.utils.logger import get_logger

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FIELD = 3
EXIT_VERIFY = 4

colorama_init()


def _color(text: str, color: str) -> str:
    if not load_runtime_settings().color_output:
        return text
    return f"{color}{text}{Style.RESET_ALL}"


def _print_error(message: str) -> None:
    print(_color(message, Fore.RED), file=sys.stderr)


def _print_hint(message: str) -> None:
    print(_color(message, Fore.YELLOW), file=sys.stderr)


def _print_success(message: str) -> None:
    print(_color(message, Fore.GREEN), file=sys.stderr)


def _format_result(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, indent=2, default=str)
    return str(value)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        _print_hint(f"wrote {out}")
    else:
        print(text)


def _configure_logging(verbose: bool) -> None:
    level = os.getenv("COLOC_CLI_LOG_LEVEL")
    if verbose:
        level = "DEBUG"
    get_logger(level or "CRITICAL")


def _with_seed(scenario: Scenario, seed: int | None) -> Scenario:
    return scenario if seed is None else replace(scenario, seed=seed)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coloc", description="Coded computation planner and simulator")
    parser.add_argument("--verbose", action="store_true", help="Log library events to standard error")
    subparsers = parser.add_subparsers(dest="command", required=True)

    plan = subparsers.add_parser("plan", help="Print the query plan of a scenario")
    plan.add_argument("--scenario", required=True, help="Scenario JSON file")
    plan.add_argument("--scheme", choices=SCENARIO_SCHEMES, help="Override the scenario's scheme")
    plan.add_argument("--seed", type=int)
    plan.add_argument("--out")

    run = subparsers.add_parser("run", help="Simulate a scenario against its adversary and verify decoding")
    run.add_argument("--scenario", required=True, help="Scenario JSON file")
    run.add_argument("--seed", type=int)
    run.add_argument("--out")

    sweep_cmd = subparsers.add_parser("sweep", help="Run a scenario set and print the threshold table")
    source = sweep_cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", help="JSON array of scenarios, or {\"scenarios\": [...]}")
    source.add_argument("--acceptance", action="store_true", help="Use the packaged acceptance set")
    sweep_cmd.add_argument("--seed", type=int)
    sweep_cmd.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep_cmd.add_argument("--out", help="Output file; the other format is written next to it")

    locality = subparsers.add_parser("locality", help="Brute-force computational locality of a small class")
    locality.add_argument("--q", type=int, required=True, help="Field size (prime)")
    locality.add_argument("--m", type=int, required=True, help="Number of variables")
    locality.add_argument("--d", type=int, required=True, help="Total degree")
    locality.add_argument("--k", type=int, required=True, help="Number of target symbols")
    locality.add_argument("--s", type=int, required=True, help="Stragglers")
    locality.add_argument("--homogeneous", action="store_true")
    locality.add_argument("--out")

    matmul = subparsers.add_parser("matmul", help="Verify a coded matrix multiplication")
    matmul.add_argument("--size", type=int, required=True, help="Matrix dimension")
    matmul.add_argument("--t", type=int, required=True, help="Split parameter")
    matmul.add_argument("--s", type=int, default=0)
    matmul.add_argument("--scheme", choices=MATMUL_SCHEMES, default=MATDOT)
    matmul.add_argument("--modulus", type=int)
    matmul.add_argument("--seed", type=int, default=0)
    matmul.add_argument("--out")

    subparsers.add_parser("version", help="Print CoLoc version and available schemes")
    return parser


def _cmd_plan(args: argparse.Namespace) -> int:
    scenario = _with_seed(load_scenario(args.scenario), args.seed)
    if args.scheme:
        scenario = replace(scenario, scheme=args.scheme)
    plan = scenario.plan()
    _emit(_format_result(plan.to_dict()), args.out)
    _print_success(f"{plan.scheme_tag}: w={plan.w} (input-oblivious baseline {plan.baseline_oblivious})")
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = _with_seed(load_scenario(args.scenario), args.seed)
    report = run_scenario(scenario)
    _emit(_format_result(report.to_dict(include_time=False)), args.out)
    summary = (
        f"{report.scheme}: w={report.w}, {report.patterns} patterns, "
        f"{len(report.failures)} failures in {report.wall_time:.3f}s"
    )
    if not report.verified:
        _print_error(f"error: verification failed - {summary}")
        return EXIT_VERIFY
    _print_success(summary)
    return EXIT_OK


def _sweep_csv(rows: Sequence[Any]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_row())
    return buffer.getvalue().rstrip("\n")


def _companion_path(out: Path, fmt: str) -> Path:
    """``table.csv`` pairs with ``table.json``; a sibling that would overwrite ``out`` gets the suffix appended."""
    suffix = f".{fmt}"
    sibling = out.with_suffix(suffix)
    return sibling if sibling != out else out.with_name(out.name + suffix)


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenarios = acceptance_scenarios() if args.acceptance else load_scenario_set(args.scenario)
    rows = sweep([_with_seed(scenario, args.seed) for scenario in scenarios])
    rendered = {"csv": _sweep_csv(rows), "json": _format_result([row.to_dict() for row in rows])}
    _emit(rendered[args.format], args.out)
    if args.out:
        other = "json" if args.format == "csv" else "csv"
        _emit(rendered[other], str(_companion_path(Path(args.out), other)))
    failed = [row for row in rows if not row.verified]
    for row in failed:
        _print_error(f"error: {row.name or row.scheme} not verified ({row.error or 'decoding failures'})")
    if failed:
        return EXIT_VERIFY
    _print_success(f"{len(rows)} scenarios verified")
    return EXIT_OK


def _cmd_locality(args: argparse.Namespace) -> int:
    report = locality_report(args.q, args.m, args.d, args.k, args.s, homogeneous=args.homogeneous)
    _emit(_format_result(report), args.out)
    _print_success(f"L = {report['locality']} (bound {report['upper_bound']})")
    return EXIT_OK


def _cmd_matmul(args: argparse.Namespace) -> int:
    report = run_matmul(args.scheme, args.size, args.t, args.s, modulus=args.modulus, seed=args.seed)
    _emit(_format_result(report.to_dict()), args.out)
    if not report.verified:
        _print_error(f"error: {report.scheme} failed on {len(report.failures)} straggler patterns")
        return EXIT_VERIFY
    _print_success(f"{report.scheme}: w={report.w}, {report.patterns} patterns verified")
    return EXIT_OK


def _cmd_version() -> int:
    print(_format_result({"version": __version__, "schemes": list(SCENARIO_SCHEMES), "matmul": list(MATMUL_SCHEMES)}))
    return EXIT_OK


def app(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "locality":
            return _cmd_locality(args)
        if args.command == "matmul":
            return _cmd_matmul(args)
        if args.command == "version":
            return _cmd_version()
        parser.error("Unknown command")
        return 1
    except FieldTooSmallError as exc:
        _print_error(f"error: {exc}")
        _print_hint(f"hint:  use a prime modulus of at least {exc.required}")
        return EXIT_FIELD
    except ScenarioError as exc:
        _print_error(f"error: invalid scenario - {exc}")
        return EXIT_INPUT
    except (UsageError, FieldError, BudgetExceededError) as exc:
        _print_error(f"error: {exc}")
        return EXIT_INPUT
    except ColocError as exc:
        _print_error(f"error: {exc}")
        return 1


if __name__ == "__main__":
    raise SystemExit(app())
