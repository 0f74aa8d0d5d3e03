"""Report assembly and emission"""

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

import json
import logging
from datetime import datetime, timezone

import numpy as np
from pytools import Record, Table

from lqhv.bell import (
        RATIO_SLACK, random_dichotomic_settings, seesaw_optimize,
        violation_ratio)
from lqhv.bounds import combined_bound, lqhv_norm_bound
from lqhv.config import scenario_to_json
from lqhv.model import (
        UnsupportedCaseError, build_scenario_distribution,
        max_marginal_deviation, scenario_chain_overlap_bound)
from lqhv.qlinalg import ValidationError

logger = logging.getLogger(__name__)


__doc__ = """
.. autoclass:: Check
.. autoclass:: Report

.. autofunction:: run_report
.. autofunction:: violation_report
.. autofunction:: render_report
.. autofunction:: distribution_rows
.. autofunction:: distribution_to_json
"""


# {{{ records

class Check(Record):
    """
    .. attribute:: name
    .. attribute:: value
    .. attribute:: limit
    .. attribute:: passed
    .. attribute:: detail
    """

    def __init__(self, name, value, limit, detail=""):
        super().__init__(name=name, value=float(value), limit=float(limit),
                passed=bool(value <= limit), detail=detail)


class Report(Record):
    """
    .. attribute:: name
    .. attribute:: quantities

        A list of ``(name, value)`` pairs in display order.

    .. attribute:: checks

        A list of :class:`Check`.

    .. attribute:: passed
    .. automethod:: as_dict
    .. automethod:: failures
    """

    def __init__(self, name, quantities, checks):
        super().__init__(name=name, quantities=list(quantities),
                checks=list(checks),
                passed=all(check.passed for check in checks))

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def as_dict(self):
        return {
                "name": self.name,
                "quantities": {key: _jsonable(value)
                    for key, value in self.quantities},
                "checks": [{
                    "name": check.name,
                    "value": check.value,
                    "limit": check.limit,
                    "passed": check.passed,
                    "detail": check.detail,
                    } for check in self.checks],
                "passed": self.passed,
                }


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value

# }}}


# {{{ assembly

def _chain_limit(local_dim, num_settings):
    if num_settings == 1:
        return 1.0
    elif num_settings == 2:
        return float(np.sqrt(local_dim))
    else:
        return float(local_dim) ** (num_settings / 2)


def violation_report(experiment, nu=None):
    """Return ``(quantities, checks)`` for the functional configured in
    *experiment*, evaluated at the scenario's observables and, if requested,
    at the settings found by the see-saw optimizer.
    """
    functional = experiment.functional
    if functional is None:
        raise ValidationError("no functional configured")

    scenario = experiment.scenario
    rho = experiment.state
    run = experiment.run

    result = violation_ratio(functional, rho, scenario, threads=run.threads)
    quantities = [
            ("functional", functional.name),
            ("classical_bound", result.classical_bound),
            ("quantum_value", result.quantum_value),
            ("ratio", result.ratio),
            ]
    checks = [
            Check("ratio <= combined_bound", result.ratio,
                result.combined_bound + RATIO_SLACK),
            ]
    if nu is not None:
        checks.append(Check("ratio <= tv_norm", result.ratio,
            nu.tv_norm + RATIO_SLACK))

    if run.optimize == "seesaw":
        rng = np.random.default_rng(run.seed)
        initial = random_dichotomic_settings(scenario.num_sites,
                scenario.num_settings, scenario.local_dim, rng)
        optimized = seesaw_optimize(functional, rho, initial,
                max_iters=run.iters, tol=min(run.tol, 1e-10),
                threads=run.threads)

        quantities.extend([
            ("seesaw_quantum_value", optimized.quantum_value),
            ("seesaw_ratio", optimized.ratio),
            ("seesaw_iterations", len(optimized.trace) - 1),
            ])
        decreases = np.diff(optimized.trace)
        checks.extend([
            Check("seesaw ratio <= combined_bound", optimized.ratio,
                optimized.combined_bound + RATIO_SLACK),
            Check("seesaw monotone",
                -float(decreases.min()) if decreases.size else 0.0, 1e-12,
                "largest decrease between iterations"),
            ])

    return quantities, checks


def run_report(experiment):
    """Build the signed distribution for *experiment* and return a
    :class:`Report` holding its total variation, the formula bounds, the
    worst marginal deviation, the chain-overlap bound (two sites,
    nondegenerate observables only) and, if a functional is configured, its
    violation ratio.
    """
    scenario = experiment.scenario
    rho = experiment.state
    run = experiment.run
    n = scenario.num_sites
    d = max(scenario.local_dim, 2)
    s = scenario.num_settings

    nu = build_scenario_distribution(rho, scenario,
            max_outcomes=run.max_outcomes, threads=run.threads)
    deviation = max_marginal_deviation(nu, rho)
    norm_bound = lqhv_norm_bound(n, d, s)
    combined, _ = combined_bound(n, d, s)

    quantities = [
            ("num_sites", scenario.num_sites),
            ("local_dim", scenario.local_dim),
            ("num_settings", scenario.num_settings),
            ("pivot_site", scenario.pivot_site),
            ("num_outcomes", scenario.num_outcomes),
            ("total", nu.total()),
            ("tv_norm", nu.tv_norm),
            ("lqhv_norm_bound", norm_bound),
            ("combined_bound", combined),
            ("max_marginal_deviation", deviation.max_deviation),
            ]
    checks = [
            Check("|total - 1|", abs(nu.total() - 1), run.tol),
            Check("max marginal deviation", deviation.max_deviation, run.tol,
                "settings %s, outcomes %s: model %.15g, quantum %.15g" % (
                    deviation.settings, deviation.outcomes,
                    deviation.model_value, deviation.quantum_value)),
            Check("tv_norm <= lqhv_norm_bound", nu.tv_norm,
                norm_bound + run.tol),
            ]

    if scenario.num_sites == 2:
        try:
            chain = scenario_chain_overlap_bound(rho, scenario)
        except UnsupportedCaseError as exc:
            logger.info("chain-overlap bound skipped: %s", exc)
        else:
            quantities.append(("chain_overlap_bound", chain))
            checks.extend([
                Check("tv_norm <= chain_overlap_bound", nu.tv_norm,
                    chain + run.tol),
                Check("chain_overlap_bound <= d^(S/2)", chain,
                    _chain_limit(scenario.local_dim, s) + run.tol),
                ])

    if experiment.functional is not None:
        v_quantities, v_checks = violation_report(experiment, nu=nu)
        quantities.extend(v_quantities)
        checks.extend(v_checks)

    return Report(experiment.name, quantities, checks)

# }}}


# {{{ distributions

def distribution_rows(nu):
    """Return the rows (header first) of the CSV form of *nu*: one column
    per outcome coordinate, labelled ``site.setting``, then the value.
    """
    scenario = nu.scenario
    header = tuple(f"{n}.{s}"
            for n in range(1, scenario.num_sites + 1)
            for s in range(1, scenario.num_settings + 1)) + ("value",)

    rows = [header]
    for outcomes, value in nu.items():
        rows.append(tuple("%.12g" % x for x in outcomes) + ("%.17g" % value,))
    return rows


def distribution_to_json(nu):
    """Return a JSON-compatible :class:`dict` holding the scenario, the
    values in mixed-radix order and the total variation of *nu*.
    """
    return {
            "scenario": scenario_to_json(nu.scenario),
            "radices": list(nu.scenario.radices),
            "spectra": [list(spectrum) for spectrum in nu.scenario.spectra],
            "values": [float(v) for v in nu.values.ravel()],
            "total": nu.total(),
            "tv_norm": nu.tv_norm,
            }

# }}}


# {{{ rendering

TEXT_REPORT_TEMPLATE = """\
lqhv report: ${report.name}
% if timestamp is not None:
generated: ${timestamp}
% endif

% for key, value in report.quantities:
${"%-28s" % key} ${format_value(value)}
% endfor

checks:
% for line in check_lines:
  ${line}
% endfor

result: ${"PASS" if report.passed else "FAIL"}
"""


def format_value(value):
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def timestamp_now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def render_text(report, timestamp=None):
    from mako.template import Template
    check_lines = []
    for check in report.checks:
        line = "[%s] %s: %.6g <= %.6g" % (
                "pass" if check.passed else "FAIL",
                check.name, check.value, check.limit)
        if check.detail and not check.passed:
            line += f" ({check.detail})"
        check_lines.append(line)

    template = Template(TEXT_REPORT_TEMPLATE, strict_undefined=True)
    return template.render(report=report, timestamp=timestamp,
            format_value=format_value, check_lines=check_lines)


def render_csv(report):
    tbl = Table()
    tbl.add_row(("quantity", "value"))
    for key, value in report.quantities:
        tbl.add_row((key, format_value(value)))
    for check in report.checks:
        tbl.add_row((f"check: {check.name}",
            "pass" if check.passed else "fail"))
    return tbl.csv()


def render_json(report):
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def render_report(report, fmt="text", timestamp=None):
    """Return *report* rendered as ``"text"``, ``"csv"`` or ``"json"``.
    Only the text form carries *timestamp*.
    """
    if fmt == "text":
        return render_text(report, timestamp=timestamp)
    elif fmt == "csv":
        return render_csv(report)
    elif fmt == "json":
        return render_json(report)
    else:
        raise ValidationError(f"unknown report format '{fmt}'")

# }}}

# vim: foldmethod=marker
