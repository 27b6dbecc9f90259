"""
Command line interface.

    loclaurent validate PATH
    loclaurent character PATH [--order K] [--eval Z0] [--json]
    loclaurent verify PATH [--prop1] [--prop2] [--reduction] [--all] [--against PATH2] [--json]
    loclaurent examples list | emit NAME PATH | check

Exit codes: 0 success, 1 validation or verification failure, 2 parse or usage
error, 3 inconsistent data, 4 non-unit, 5 vanishing denominator.
"""
import argparse
import logging
import sys
from typing import List, Optional

import yaml

from loclaurent.configs import LocLaurentConfig
from loclaurent.datasets import Dataset, load_dataset, write_dataset
from loclaurent.datasets.bundled import example_names, get_example
from loclaurent.errors import LocLaurentError
from loclaurent.localization import ValidationReport, validate_manifold
from loclaurent.localization.localizer import eval_character, localize
from loclaurent.reports import CharacterReport, VerifyReport, suite_text
from loclaurent.utils import configure_logging, to_scalar
from loclaurent.verification import (
    CheckReport,
    CheckRow,
    check_prop1,
    check_prop2,
    check_reduction,
    run_check,
)
from loclaurent.verification.suite import run_example_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="loclaurent",
        description="Equivariant characters of Hamiltonian circle spaces from fixed-point data.",
    )
    parser.add_argument("--config", dest="config_path", help="YAML config file")
    parser.add_argument("--log-level", dest="log_level", help="Root log level, overrides the config")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check a dataset file")
    validate.add_argument("path")

    character = commands.add_parser("character", help="Compute the equivariant character")
    character.add_argument("path")
    character.add_argument("--order", type=int, help="Order margin around the support")
    character.add_argument("--eval", dest="eval_point", help="Rational point z0 to evaluate at")
    character.add_argument("--json", action="store_true")

    verify = commands.add_parser("verify", help="Run verification checks")
    verify.add_argument("path")
    verify.add_argument("--prop1", action="store_true")
    verify.add_argument("--prop2", action="store_true")
    verify.add_argument("--reduction", action="store_true")
    verify.add_argument("--all", action="store_true", help="Every check whose preconditions hold (default)")
    verify.add_argument("--against", dest="against_path", help="Second dataset for the positive-side comparison")
    verify.add_argument("--order", type=int, help="Order margin around the support")
    verify.add_argument("--json", action="store_true")

    examples = commands.add_parser("examples", help="Bundled examples")
    actions = examples.add_subparsers(dest="action", required=True)
    actions.add_parser("list")
    emit = actions.add_parser("emit")
    emit.add_argument("name")
    emit.add_argument("path")
    actions.add_parser("check")

    return parser.parse_args(argv)


def _load_config(args: argparse.Namespace) -> LocLaurentConfig:
    config = LocLaurentConfig.load_yaml(args.config_path) if args.config_path else LocLaurentConfig()
    config = config.with_env_overrides()
    if getattr(args, "order", None) is not None:
        config = LocLaurentConfig.update(config, {"localization.order_margin": args.order})
    return config


def _print_violations(report: ValidationReport):
    for v in report.violations:
        print(f"invalid: {v}")


def _validate_dataset(dataset: Dataset) -> ValidationReport:
    report = ValidationReport()
    report.extend(validate_manifold(dataset.manifold))
    if dataset.cut is not None:
        report.extend(validate_manifold(dataset.cut.plus_cut), prefix="cut.plus_")
        if dataset.cut.minus_cut is not None:
            report.extend(validate_manifold(dataset.cut.minus_cut), prefix="cut.minus_")
    return report


def cmd_validate(args: argparse.Namespace, config: LocLaurentConfig) -> int:
    dataset = load_dataset(args.path)
    report = _validate_dataset(dataset)
    if not report.passed:
        _print_violations(report)
        return EXIT_FAILURE
    print(f"valid: {len(dataset.manifold.components)} components"
          + (", with cut" if dataset.cut is not None else ""))
    return EXIT_OK


def cmd_character(args: argparse.Namespace, config: LocLaurentConfig) -> int:
    dataset = load_dataset(args.path)
    validation = validate_manifold(dataset.manifold)
    if not validation.passed:
        _print_violations(validation)
        return EXIT_FAILURE

    q = localize(dataset.manifold, config=config.localization)
    point = value = None
    if args.eval_point is not None:
        point = to_scalar(args.eval_point)
        value = eval_character(q, point)
    report = CharacterReport.build(dataset.name or args.path, q, config.localization.order_margin, point, value)
    print(report.model_dump_json(indent=2) if args.json else report.to_text(), end="\n" if args.json else "")
    return EXIT_OK


def _skipped(check, name: str, *args, **kwargs) -> CheckReport:
    report = run_check(check, name, *args, **kwargs)
    if report.precondition is not None:
        return CheckReport(name, rows=[CheckRow.skipped("precondition", report.precondition)])
    return report


def cmd_verify(args: argparse.Namespace, config: LocLaurentConfig) -> int:
    dataset = load_dataset(args.path)
    m = dataset.manifold
    other = load_dataset(args.against_path).manifold if args.against_path else None
    validation = _validate_dataset(dataset)
    if other is not None:
        validation.extend(validate_manifold(other), prefix="against.")
    if not validation.passed:
        _print_violations(validation)
        return EXIT_FAILURE
    if other is None and dataset.cut is not None:
        other = dataset.cut.plus_cut

    loc = config.localization
    explicit = args.prop1 or args.prop2 or args.reduction
    run = run_check if explicit and not args.all else _skipped
    reports = []
    if args.prop1 or not explicit or args.all:
        reports.append(run(check_prop1, "prop1", m, other, config=loc))
    if args.prop2 or not explicit or args.all:
        reports.append(run(check_prop2, "prop2", m, config=loc))
    if args.reduction or not explicit or args.all:
        if dataset.cut is None:
            reason = "the dataset has no cut section"
            reports.append(CheckReport("reduction", rows=[CheckRow.skipped("precondition", reason)])
                           if run is _skipped else CheckReport("reduction", precondition=reason))
        else:
            reports.append(run(check_reduction, "reduction", dataset.cut, config=loc))

    report = VerifyReport.build(dataset.name or args.path, reports)
    print(report.model_dump_json(indent=2) if args.json else report.to_text(), end="\n" if args.json else "")
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_examples(args: argparse.Namespace, config: LocLaurentConfig) -> int:
    if args.action == "list":
        for name in example_names():
            print(name)
        return EXIT_OK
    if args.action == "emit":
        write_dataset(get_example(args.name), args.path)
        print(f"wrote {args.name} to {args.path}")
        return EXIT_OK
    summary = run_example_suite(config=config)
    print(suite_text(summary), end="")
    return EXIT_OK if summary.passed else EXIT_FAILURE


COMMANDS = {
    "validate": cmd_validate,
    "character": cmd_character,
    "verify": cmd_verify,
    "examples": cmd_examples,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        config = _load_config(args)
    except (OSError, TypeError, ValueError, yaml.YAMLError) as e:
        print(f"error: invalid config: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(args.log_level or config.logging.level, config.logging.suppress_log_keywords)
    logger.debug("config:\n%s", config)

    try:
        return COMMANDS[args.command](args, config)
    except LocLaurentError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, TypeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
