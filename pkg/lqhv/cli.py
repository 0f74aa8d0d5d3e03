"""Command-line front end"""

__copyright__ = "Copyright (C) 2026 The lqhv developers"

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

import argparse
import json
import logging
import os
import sys

from pytools import Table

from lqhv.bell import BoundViolationError, DegenerateFunctionalError
from lqhv.bounds import (
        bound_report_as_dict, bounds_table, format_bounds_table,
        improvement_failures, lqhv_norm_bound)
from lqhv.config import (
        ConfigError, dump_config, load_config, parse_functional,
        preset_config, with_functional, with_run_overrides)
from lqhv.model import (
        UnsupportedCaseError, build_scenario_distribution,
        max_marginal_deviation, scenario_chain_overlap_bound)
from lqhv.qlinalg import UnsupportedSizeError, ValidationError
from lqhv.report import (
        Check, Report, distribution_rows, distribution_to_json, render_report,
        run_report, timestamp_now, violation_report)
from lqhv.version import VERSION_TEXT

logger = logging.getLogger(__name__)


__doc__ = """
Usage::

    lqhv <command> [--scenario FILE | --preset NAME] [--functional NAME|FILE]
        [--optimize seesaw --iters K] [--tol X] [--seed N] [--threads T]
        [--out FILE --format text|csv|json] [--no-timestamp]
        [--save-config FILE]

Commands are ``build``, ``check-marginals``, ``tvnorm``, ``bounds``,
``violate`` and ``report``. The exit code is 0 if every numerical check
passes, 1 if one fails and 2 for invalid input.

.. autofunction:: main
"""


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


# {{{ argument parsing

def parse_range(text):
    """Parse ``"A:B"`` (inclusive) or ``"A"`` into a :class:`range`."""
    try:
        if ":" in text:
            lower, upper = (int(part) for part in text.split(":"))
        else:
            lower = upper = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
                f"invalid range '{text}', expected A:B")

    if lower > upper:
        raise argparse.ArgumentTypeError(f"empty range '{text}'")
    return range(lower, upper + 1)


def make_parser():
    common = argparse.ArgumentParser(add_help=False)

    source = common.add_mutually_exclusive_group()
    source.add_argument("--scenario", metavar="FILE",
            help="JSON experiment configuration")
    source.add_argument("--preset", metavar="NAME",
            help="singlet-chsh, singlet-ch or ghz<N>-mk<N>")

    common.add_argument("--functional", metavar="NAME|FILE",
            help="functional preset (chsh, ch, mk<N>) or JSON file "
            "holding a functional section")
    common.add_argument("--optimize", choices=["seesaw"])
    common.add_argument("--iters", type=int, metavar="K")
    common.add_argument("--tol", type=float, metavar="X")
    common.add_argument("--seed", type=int, metavar="N")
    common.add_argument("--threads", type=int, metavar="T",
            help="worker threads (default: $LQHV_THREADS or the number "
            "of processors)")
    common.add_argument("--max-outcomes", type=int, metavar="M")
    common.add_argument("--pivot", type=int, metavar="SITE",
            help="site receiving the conditional weights")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--save-config", metavar="FILE",
            help="write the effective experiment configuration as JSON")
    common.add_argument("--format", choices=["text", "csv", "json"],
            default="text")
    common.add_argument("--no-timestamp", action="store_true")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="lqhv",
            description="Signed local quasi hidden variable models and "
            "Bell violation bounds")
    parser.add_argument("--version", action="version",
            version=f"%(prog)s {VERSION_TEXT}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
            ("build", "build the signed distribution"),
            ("check-marginals", "compare its marginals with quantum "
                "joint probabilities"),
            ("tvnorm", "total variation and its bounds"),
            ("violate", "violation ratio of a Bell functional"),
            ("report", "all of the above"),
            ]:
        subparsers.add_parser(name, parents=[common], help=help_text)

    bounds = subparsers.add_parser("bounds", parents=[common],
            help="table of closed-form violation bounds")
    bounds.add_argument("--sites", type=parse_range, default=range(2, 4),
            metavar="A:B")
    bounds.add_argument("--dims", type=parse_range, default=range(2, 4),
            metavar="A:B")
    bounds.add_argument("--settings", type=parse_range, default=range(2, 5),
            metavar="A:B")

    return parser

# }}}


# {{{ experiment setup

def _load_functional(source):
    if os.path.exists(source):
        try:
            with open(source) as inf:
                document = json.load(inf)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{source}: malformed JSON: {exc}")
        return parse_functional(document)

    return parse_functional({"preset": source})


def load_experiment(args):
    if args.scenario is not None:
        experiment = load_config(args.scenario)
    elif args.preset is not None:
        experiment = preset_config(args.preset)
    else:
        raise ConfigError("one of --scenario or --preset is required")

    if args.seed is not None and not 0 <= args.seed < 2**64:
        raise ConfigError("--seed: must be an unsigned 64-bit integer")
    for name in ("threads", "max_outcomes"):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise ConfigError(f"--{name.replace('_', '-')}: must be at "
                    "least 1")
    if args.iters is not None and args.iters < 0:
        raise ConfigError("--iters: must be nonnegative")
    if args.tol is not None and args.tol <= 0:
        raise ConfigError("--tol: must be positive")

    experiment = with_run_overrides(experiment,
            tol=args.tol, seed=args.seed, threads=args.threads,
            max_outcomes=args.max_outcomes, optimize=args.optimize,
            iters=args.iters)

    if args.pivot is not None:
        try:
            experiment = experiment.copy(
                    scenario=experiment.scenario.with_pivot(args.pivot))
        except ValidationError as exc:
            raise ConfigError(f"--pivot: {exc}")

    if args.functional is not None:
        experiment = with_functional(experiment,
                _load_functional(args.functional))

    if args.save_config is not None:
        with open(args.save_config, "w") as outf:
            dump_config(experiment, outf)
        logger.info("wrote %s", args.save_config)

    return experiment

# }}}


# {{{ commands

def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"

    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as outf:
            outf.write(text)
        logger.info("wrote %s", args.out)


def _emit_report(args, report):
    timestamp = None if args.no_timestamp else timestamp_now()
    _emit(args, render_report(report, fmt=args.format, timestamp=timestamp))

    for check in report.failures():
        print("lqhv: check failed: %s: %.12g > %.12g %s" % (
            check.name, check.value, check.limit, check.detail),
            file=sys.stderr)

    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _build_distribution(experiment):
    run = experiment.run
    return build_scenario_distribution(experiment.state, experiment.scenario,
            max_outcomes=run.max_outcomes, threads=run.threads)


def command_build(args):
    experiment = load_experiment(args)
    nu = _build_distribution(experiment)

    if args.format == "json":
        text = json.dumps(distribution_to_json(nu), indent=2,
                sort_keys=True) + "\n"
    else:
        tbl = Table()
        for row in distribution_rows(nu):
            tbl.add_row(row)
        if args.format == "csv":
            text = tbl.csv()
        else:
            text = "%r\ntotal %.15g\n\n%s\n" % (nu, nu.total(), tbl)

    _emit(args, text)

    if abs(nu.total() - 1) > experiment.run.tol:
        print("lqhv: check failed: distribution sums to %.15g" % nu.total(),
                file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def command_check_marginals(args):
    experiment = load_experiment(args)
    nu = _build_distribution(experiment)
    deviation = max_marginal_deviation(nu, experiment.state)

    report = Report(experiment.name, [
        ("num_checked", deviation.num_checked),
        ("max_marginal_deviation", deviation.max_deviation),
        ("worst_settings", list(deviation.settings)),
        ("worst_outcomes", list(deviation.outcomes)),
        ("model_value", deviation.model_value),
        ("quantum_value", deviation.quantum_value),
        ], [
        Check("max marginal deviation", deviation.max_deviation,
            experiment.run.tol,
            "settings %s, outcomes %s" % (
                deviation.settings, deviation.outcomes)),
        ])
    return _emit_report(args, report)


def command_tvnorm(args):
    experiment = load_experiment(args)
    scenario = experiment.scenario
    nu = _build_distribution(experiment)
    bound = lqhv_norm_bound(scenario.num_sites, max(scenario.local_dim, 2),
            scenario.num_settings)

    quantities = [("tv_norm", nu.tv_norm), ("lqhv_norm_bound", bound)]
    checks = [Check("tv_norm <= lqhv_norm_bound", nu.tv_norm,
        bound + experiment.run.tol)]

    if scenario.num_sites == 2:
        try:
            chain = scenario_chain_overlap_bound(experiment.state, scenario)
        except UnsupportedCaseError as exc:
            logger.info("chain-overlap bound skipped: %s", exc)
        else:
            quantities.append(("chain_overlap_bound", chain))
            checks.append(Check("tv_norm <= chain_overlap_bound", nu.tv_norm,
                chain + experiment.run.tol))

    return _emit_report(args, Report(experiment.name, quantities, checks))


def command_violate(args):
    experiment = load_experiment(args)
    if experiment.functional is None:
        raise ConfigError("violate needs a functional (--functional or a "
                "'functional' section)")

    quantities, checks = violation_report(experiment)
    return _emit_report(args, Report(experiment.name, quantities, checks))


def command_report(args):
    return _emit_report(args, run_report(load_experiment(args)))


def command_bounds(args):
    reports = bounds_table(args.sites, args.dims, args.settings)

    if args.format == "json":
        text = json.dumps([bound_report_as_dict(r) for r in reports],
                indent=2, sort_keys=True) + "\n"
    else:
        text = format_bounds_table(reports, fmt=args.format)
        if args.format == "text":
            text += "\n"

    _emit(args, text)

    failed = [(report, entry)
            for report in reports
            for entry in improvement_failures(report)]
    for report, entry in failed:
        print("lqhv: check failed: (%d, %d, %d): combined bound %.12g not "
                "below %s" % (report.num_sites, report.local_dim,
                    report.num_settings, report.combined_bound, entry.name),
                file=sys.stderr)

    return EXIT_CHECK_FAILED if failed else EXIT_OK


COMMANDS = {
        "build": command_build,
        "check-marginals": command_check_marginals,
        "tvnorm": command_tvnorm,
        "bounds": command_bounds,
        "violate": command_violate,
        "report": command_report,
        }

# }}}


def main(argv=None):
    """Run the command line in *argv* and return the exit code."""
    args = make_parser().parse_args(argv)

    logging.basicConfig(
            level=[logging.WARNING, logging.INFO, logging.DEBUG][
                min(args.verbose, 2)],
            format="%(name)s: %(levelname)s: %(message)s")

    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValidationError, UnsupportedSizeError,
            DegenerateFunctionalError, UnsupportedCaseError) as exc:
        print(f"lqhv: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"lqhv: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BoundViolationError as exc:
        print(f"lqhv: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

# vim: foldmethod=marker
