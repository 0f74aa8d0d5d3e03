"""Strict JSON experiment configuration"""

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
import os
import re

import numpy as np
from pytools import Record

from lqhv.bell import (
        CORRELATION, PROBABILITY, BellFunctional, chsh_optimal_settings,
        functional_from_coefficients, functional_from_expression,
        functional_preset, mermin_klyshko_ghz_settings)
from lqhv.model import DEFAULT_MAX_OUTCOMES, Scenario
from lqhv.qlinalg import (
        DEFAULT_CLUSTER_TOL, PAULI, UnsupportedSizeError, ValidationError,
        make_state)

logger = logging.getLogger(__name__)


__doc__ = """
A configuration is a single JSON object with the sections ``scenario``,
``state``, ``functional`` (optional) and ``run`` (optional). Unknown keys are
rejected in every section.

Matrices are lists of rows. An entry is either a real number or a pair
``[re, im]``. An observable may also be one of the names ``"sx"``, ``"sy"``,
``"sz"``, ``"id"``.

.. code-block:: json

    {
        "scenario": {
            "observables": [[[[1, 0], [0, -1]], "sx"], ["sz", "sx"]],
            "pivot_site": 1
        },
        "state": {"kind": "singlet"},
        "functional": {"preset": "chsh"},
        "run": {"tol": 1e-9, "seed": 0}
    }

.. autoexception:: ConfigError

.. autoclass:: RunSettings
.. autoclass:: ExperimentConfig

.. autofunction:: load_config
.. autofunction:: parse_config
.. autofunction:: preset_config
.. autofunction:: export_config
.. autofunction:: dump_config
"""


DEFAULT_TOL = 1e-9
DEFAULT_ITERS = 50
MAX_SEED = 2**64

SCENARIO_KEYS = {"observables", "num_sites", "local_dim", "num_settings",
        "pivot_site", "cluster_tol"}
STATE_KEYS = {"kind", "vector", "matrix", "num_sites", "local_dim", "seed",
        "rank"}
FUNCTIONAL_KEYS = {"preset", "expression", "form", "name", "num_settings",
        "outcomes", "terms"}
RUN_KEYS = {"tol", "seed", "threads", "max_outcomes", "optimize", "iters"}
TOP_LEVEL_KEYS = {"scenario", "state", "functional", "run"}


class ConfigError(ValueError):
    pass


# {{{ records

class RunSettings(Record):
    """
    .. attribute:: tol

        Tolerance for the numerical assertions, default ``1e-9``.

    .. attribute:: seed

        Unsigned 64-bit seed, default 0.

    .. attribute:: threads

        Worker threads, defaulting to ``$LQHV_THREADS`` or the number of
        processors.

    .. attribute:: max_outcomes
    .. attribute:: optimize

        *None* or ``"seesaw"``.

    .. attribute:: iters
    """


class ExperimentConfig(Record):
    """
    .. attribute:: scenario

        A :class:`lqhv.model.Scenario`.

    .. attribute:: state

        A :class:`lqhv.qlinalg.DensityMatrix`.

    .. attribute:: functional

        A :class:`lqhv.bell.BellFunctional` or *None*.

    .. attribute:: run

        A :class:`RunSettings`.

    .. attribute:: name
    """

# }}}


# {{{ parsing helpers

def _check_keys(section, allowed, path):
    if not isinstance(section, dict):
        raise ConfigError(f"{path}: expected an object, got "
                f"{type(section).__name__}")

    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError("%s: unknown field%s %s" % (
            path, "s" if len(unknown) > 1 else "",
            ", ".join(f"'{key}'" for key in unknown)))


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def parse_complex(value, path):
    if _is_number(value):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(_is_number(v) for v in value)):
        return complex(value[0], value[1])

    raise ConfigError(
            f"{path}: malformed complex entry {json.dumps(value)}, "
            "expected a number or [re, im]")


def parse_matrix(value, path):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list of rows")

    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ConfigError(f"{path}[{i}]: expected a row list")
        rows.append([parse_complex(entry, f"{path}[{i}][{j}]")
            for j, entry in enumerate(row)])

    if any(len(row) != len(rows[0]) for row in rows):
        raise ConfigError(f"{path}: rows of unequal length")

    return np.array(rows, dtype=np.complex128)


def parse_vector(value, path):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list")
    return np.array([parse_complex(entry, f"{path}[{i}]")
        for i, entry in enumerate(value)], dtype=np.complex128)


def parse_observable(value, path):
    if isinstance(value, str):
        try:
            return PAULI[value]
        except KeyError:
            raise ConfigError(
                    "%s: unknown observable name '%s', expected one of %s"
                    % (path, value, ", ".join(sorted(PAULI))))

    return parse_matrix(value, path)


def _get_int(section, key, path, default=None, least=None):
    value = section.get(key, default)
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{path}.{key}: expected an integer, got "
                f"{json.dumps(value)}")
    if least is not None and value < least:
        raise ConfigError(f"{path}.{key}: must be at least {least}")
    return value


def _get_float(section, key, path, default):
    value = section.get(key, default)
    if not _is_number(value) or value <= 0:
        raise ConfigError(f"{path}.{key}: expected a positive number, got "
                f"{json.dumps(value)}")
    return float(value)

# }}}


# {{{ sections

def parse_scenario(section, path="scenario"):
    """Return a :class:`lqhv.model.Scenario` from the ``scenario`` section.
    """
    _check_keys(section, SCENARIO_KEYS, path)
    if "observables" not in section:
        raise ConfigError(f"{path}: missing field 'observables'")

    observables = section["observables"]
    if not isinstance(observables, list) or not observables:
        raise ConfigError(f"{path}.observables: expected a list of sites")

    matrices = []
    for n, site in enumerate(observables):
        if not isinstance(site, list) or not site:
            raise ConfigError(
                    f"{path}.observables[{n}]: expected a list of settings")
        matrices.append([
            parse_observable(obs, f"{path}.observables[{n}][{s}]")
            for s, obs in enumerate(site)])

    cluster_tol = _get_float(section, "cluster_tol", path,
            DEFAULT_CLUSTER_TOL)
    pivot_site = _get_int(section, "pivot_site", path, default=1, least=1)

    try:
        scenario = Scenario(matrices, pivot_site=pivot_site,
                cluster_tol=cluster_tol)
    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}")

    for key, actual in [
            ("num_sites", scenario.num_sites),
            ("local_dim", scenario.local_dim),
            ("num_settings", scenario.num_settings)]:
        declared = _get_int(section, key, path)
        if declared is not None and declared != actual:
            raise ConfigError(f"{path}.{key}: declared {declared}, "
                    f"observables imply {actual}")

    return scenario


def parse_state(section, scenario, path="state"):
    """Return a :class:`lqhv.qlinalg.DensityMatrix` from the ``state``
    section. Sizes default to those of *scenario*.
    """
    _check_keys(section, STATE_KEYS, path)
    kind = section.get("kind")
    if not isinstance(kind, str):
        raise ConfigError(f"{path}: missing or invalid field 'kind'")

    kwargs = {}
    if kind in ("ghz", "random_mixed", "pure", "explicit"):
        kwargs["num_sites"] = _get_int(section, "num_sites", path,
                default=scenario.num_sites, least=1)
        kwargs["local_dim"] = _get_int(section, "local_dim", path,
                default=scenario.local_dim, least=1)
    if kind == "pure":
        if "vector" not in section:
            raise ConfigError(f"{path}: missing field 'vector'")
        kwargs["vector"] = parse_vector(section["vector"], f"{path}.vector")
    if kind == "explicit":
        if "matrix" not in section:
            raise ConfigError(f"{path}: missing field 'matrix'")
        kwargs["matrix"] = parse_matrix(section["matrix"], f"{path}.matrix")
    if kind == "random_mixed":
        kwargs["seed"] = _get_int(section, "seed", path, default=0, least=0)
        rank = _get_int(section, "rank", path, least=1)
        if rank is not None:
            kwargs["rank"] = rank

    extra = sorted(set(section) - {"kind"} - set(kwargs))
    if extra:
        raise ConfigError("%s: field%s %s not used by state kind '%s'" % (
            path, "s" if len(extra) > 1 else "",
            ", ".join(f"'{key}'" for key in extra), kind))

    try:
        return make_state(kind, **kwargs)
    except (ValidationError, UnsupportedSizeError) as exc:
        raise ConfigError(f"{path}: {exc}")


def parse_functional(section, path="functional"):
    """Return a :class:`lqhv.bell.BellFunctional` from the ``functional``
    section, which holds exactly one of ``preset``, ``expression`` or
    ``terms``.
    """
    _check_keys(section, FUNCTIONAL_KEYS, path)

    sources = [key for key in ("preset", "expression", "terms")
            if key in section]
    if len(sources) != 1:
        raise ConfigError(
                f"{path}: expected exactly one of 'preset', 'expression', "
                "'terms'")
    (source,) = sources

    try:
        if source == "preset":
            unused = sorted(set(section) - {"preset"})
            if unused:
                raise ConfigError(f"{path}: preset functionals take no "
                        "further fields")
            return functional_preset(section["preset"])

        num_settings = _get_int(section, "num_settings", path, least=1)
        name = section.get("name", source)

        if source == "expression":
            if not isinstance(section["expression"], str):
                raise ConfigError(f"{path}.expression: expected a string")
            return functional_from_expression(section["expression"],
                    num_sites=_expression_sites(section["expression"], path),
                    num_settings=num_settings, name=name)

        return _parse_terms(section, num_settings, name, path)

    except ValidationError as exc:
        raise ConfigError(f"{path}: {exc}")


_VARIABLE_RE = re.compile(r"X(\d+)_\d+")


def _expression_sites(expr, path):
    sites = {int(site) for site in _VARIABLE_RE.findall(expr)}
    if not sites:
        raise ConfigError(f"{path}.expression: no X<site>_<setting> "
                "variables found")
    return max(sites)


def _parse_terms(section, num_settings, name, path):
    form = section.get("form", CORRELATION)
    if form not in (CORRELATION, PROBABILITY):
        raise ConfigError(f"{path}.form: expected '{CORRELATION}' or "
                f"'{PROBABILITY}'")

    terms = section["terms"]
    if not isinstance(terms, list) or not terms:
        raise ConfigError(f"{path}.terms: expected a nonempty list")

    allowed = {"settings", "coefficient"}
    if form == PROBABILITY:
        allowed = allowed | {"outcomes"}

    parsed = []
    for i, term in enumerate(terms):
        term_path = f"{path}.terms[{i}]"
        _check_keys(term, allowed, term_path)
        missing = sorted(allowed - set(term))
        if missing:
            raise ConfigError(f"{term_path}: missing field '{missing[0]}'")
        if not _is_number(term["coefficient"]):
            raise ConfigError(f"{term_path}.coefficient: expected a number")
        settings = term["settings"]
        if (not isinstance(settings, list) or not settings
                or not all(isinstance(s, int) and not isinstance(s, bool)
                    for s in settings)):
            raise ConfigError(
                    f"{term_path}.settings: expected a list of integers")
        if form == PROBABILITY and not (
                isinstance(term["outcomes"], list)
                and all(_is_number(x) for x in term["outcomes"])):
            raise ConfigError(
                    f"{term_path}.outcomes: expected a list of numbers")

        if form == CORRELATION:
            parsed.append((term["settings"], term["coefficient"]))
        else:
            parsed.append((term["settings"], term["outcomes"],
                term["coefficient"]))

    num_sites = len(terms[0]["settings"])
    if num_settings is None:
        num_settings = max(s for term in terms for s in term["settings"])

    outcomes = section.get("outcomes", [1.0, -1.0])
    if not (isinstance(outcomes, list) and outcomes
            and all(_is_number(x) for x in outcomes)):
        raise ConfigError(f"{path}.outcomes: expected a list of numbers")
    return functional_from_coefficients(form, num_sites, num_settings, parsed,
            outcomes=outcomes, name=name)


def default_threads():
    value = os.environ.get("LQHV_THREADS")
    if value is not None:
        try:
            threads = int(value)
        except ValueError:
            raise ConfigError(f"LQHV_THREADS: expected an integer, got "
                    f"'{value}'")
        if threads < 1:
            raise ConfigError("LQHV_THREADS: must be at least 1")
        return threads

    return os.cpu_count() or 1


def parse_run(section, path="run"):
    _check_keys(section, RUN_KEYS, path)

    seed = _get_int(section, "seed", path, default=0, least=0)
    if seed >= MAX_SEED:
        raise ConfigError(f"{path}.seed: must be below 2^64")

    optimize = section.get("optimize")
    if optimize not in (None, "seesaw"):
        raise ConfigError(f"{path}.optimize: expected 'seesaw' or null")

    threads = _get_int(section, "threads", path, least=1)

    return RunSettings(
            tol=_get_float(section, "tol", path, DEFAULT_TOL),
            seed=seed,
            threads=threads if threads is not None else default_threads(),
            max_outcomes=_get_int(section, "max_outcomes", path,
                default=DEFAULT_MAX_OUTCOMES, least=1),
            optimize=optimize,
            iters=_get_int(section, "iters", path, default=DEFAULT_ITERS,
                least=0))

# }}}


# {{{ whole documents

def parse_config(document, name="config"):
    """Return an :class:`ExperimentConfig` from a parsed JSON *document*.

    :raises ConfigError: naming the offending field.
    """
    _check_keys(document, TOP_LEVEL_KEYS, name)
    for key in ("scenario", "state"):
        if key not in document:
            raise ConfigError(f"{name}: missing section '{key}'")

    scenario = parse_scenario(document["scenario"])
    state = parse_state(document["state"], scenario)
    if (state.num_sites != scenario.num_sites
            or state.local_dim != scenario.local_dim):
        raise ConfigError(
                "state: %d sites of dimension %d do not match the scenario's "
                "%d sites of dimension %d"
                % (state.num_sites, state.local_dim,
                    scenario.num_sites, scenario.local_dim))

    functional = None
    if document.get("functional") is not None:
        functional = parse_functional(document["functional"])

    result = ExperimentConfig(
            name=name,
            scenario=scenario,
            state=state,
            functional=functional,
            run=parse_run(document.get("run", {})))
    _check_functional_matches(result)
    return result


def load_config(filename):
    """Read and parse the JSON configuration in *filename*."""
    try:
        with open(filename) as inf:
            document = json.load(inf)
    except OSError as exc:
        raise ConfigError(f"{filename}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{filename}: malformed JSON: {exc}")

    logger.info("read configuration from %s", filename)
    return parse_config(document, name=os.path.basename(filename))


_GHZ_PRESET_RE = re.compile(r"^ghz(\d+)-mk(\d+)$")
MAX_GHZ_PRESET_SITES = 6


def _preset_document(name):
    if name in ("singlet-chsh", "singlet-ch"):
        functional = name.split("-")[1]
        return {
                "scenario": {"observables": chsh_optimal_settings()},
                "state": {"kind": "singlet"},
                "functional": {"preset": functional},
                }

    match = _GHZ_PRESET_RE.match(name)
    if match is not None:
        num_sites = int(match.group(1))
        if (num_sites != int(match.group(2))
                or not 2 <= num_sites <= MAX_GHZ_PRESET_SITES):
            raise ConfigError(f"unknown preset '{name}'")
        return {
                "scenario": {
                    "observables": mermin_klyshko_ghz_settings(num_sites)},
                "state": {"kind": "ghz"},
                "functional": {"preset": f"mk{num_sites}"},
                }

    raise ConfigError(f"unknown preset '{name}'")


def preset_config(name):
    """Return the :class:`ExperimentConfig` of a named preset:
    ``singlet-chsh``, ``singlet-ch`` or ``ghz<N>-mk<N>`` for
    ``2 <= N <= 6``.
    """
    document = _preset_document(name)
    document["scenario"]["observables"] = [
            [matrix_to_json(obs) for obs in site]
            for site in document["scenario"]["observables"]]
    return parse_config(document, name=name)

# }}}


# {{{ export

def complex_to_json(value):
    return [float(value.real), float(value.imag)]


def matrix_to_json(matrix):
    return [[complex_to_json(entry) for entry in row]
            for row in np.asarray(matrix, dtype=np.complex128)]


def functional_to_json(functional):
    if functional.form == CORRELATION:
        terms = [{"settings": list(settings), "coefficient": coeff}
                for settings, coeff in sorted(functional.coefficients.items())]
    else:
        terms = [{"settings": list(settings), "outcomes": list(outcomes),
                    "coefficient": coeff}
                for (settings, outcomes), coeff
                in sorted(functional.coefficients.items())]

    return {
            "form": functional.form,
            "name": functional.name,
            "num_settings": functional.num_settings,
            "outcomes": list(functional.outcomes),
            "terms": terms,
            }


def scenario_to_json(scenario):
    return {
            "observables": [
                [matrix_to_json(obs.matrix) for obs in site]
                for site in scenario.observables],
            "num_sites": scenario.num_sites,
            "local_dim": scenario.local_dim,
            "num_settings": scenario.num_settings,
            "pivot_site": scenario.pivot_site,
            "cluster_tol": scenario.cluster_tol,
            }


def export_config(experiment):
    """Return a JSON-compatible :class:`dict` that :func:`parse_config` turns
    back into an equivalent :class:`ExperimentConfig`. Float values are
    written with full precision.
    """
    document = {
            "scenario": scenario_to_json(experiment.scenario),
            "state": {
                "kind": "explicit",
                "matrix": matrix_to_json(experiment.state.entries),
                "num_sites": experiment.state.num_sites,
                "local_dim": experiment.state.local_dim,
                },
            "run": {
                "tol": experiment.run.tol,
                "seed": experiment.run.seed,
                "threads": experiment.run.threads,
                "max_outcomes": experiment.run.max_outcomes,
                "optimize": experiment.run.optimize,
                "iters": experiment.run.iters,
                },
            }

    if experiment.functional is not None:
        document["functional"] = functional_to_json(experiment.functional)

    return document


def dump_config(experiment, outf):
    json.dump(export_config(experiment), outf, indent=2, sort_keys=True)
    outf.write("\n")


def with_run_overrides(experiment, **overrides):
    """Return *experiment* with the fields in *overrides* replaced in its
    :class:`RunSettings`. *None* values are ignored.
    """
    overrides = {key: value for key, value in overrides.items()
            if value is not None}
    unknown = sorted(set(overrides) - RUN_KEYS)
    if unknown:
        raise ConfigError("run: unknown override%s %s" % (
            "s" if len(unknown) > 1 else "", ", ".join(unknown)))

    return experiment.copy(run=experiment.run.copy(**overrides))


def _check_functional_matches(experiment):
    functional = experiment.functional
    scenario = experiment.scenario
    if functional is None:
        return
    if (functional.num_sites != scenario.num_sites
            or functional.num_settings != scenario.num_settings):
        raise ConfigError(
                "functional: %s acts on %d sites with %d settings, scenario "
                "has %d sites with %d settings"
                % (functional.name, functional.num_sites,
                    functional.num_settings, scenario.num_sites,
                    scenario.num_settings))


def with_functional(experiment, functional):
    if not isinstance(functional, BellFunctional):
        raise ConfigError("functional: expected a Bell functional")
    result = experiment.copy(functional=functional)
    _check_functional_matches(result)
    return result

# }}}

# vim: foldmethod=marker
