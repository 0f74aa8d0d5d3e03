#! /usr/bin/env python

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
import sys

import numpy as np
import pytest

from lqhv.bell import ch
from lqhv.config import (
        ConfigError, export_config, load_config, parse_complex, parse_config,
        preset_config, with_functional, with_run_overrides)
from lqhv.model import build_scenario_distribution
from lqhv.qlinalg import SIGMA_X
from lqhv.report import render_report, run_report


def singlet_document(**overrides):
    document = {
            "scenario": {"observables": [["sz", "sx"], ["sz", "sx"]]},
            "state": {"kind": "singlet"},
            "functional": {"preset": "chsh"},
            "run": {"threads": 1},
            }
    document.update(overrides)
    return document


# {{{ parsing

def test_parse_singlet_document():
    experiment = parse_config(singlet_document())

    assert experiment.scenario.num_sites == 2
    assert experiment.scenario.num_settings == 2
    assert experiment.functional.name == "chsh"
    assert experiment.run.tol == 1e-9
    assert experiment.run.seed == 0
    assert experiment.run.optimize is None


def test_parse_explicit_observable():
    document = singlet_document(scenario={"observables": [
        [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]], "sx"],
        ["sz", "sx"]]})
    experiment = parse_config(document)
    assert np.array_equal(experiment.scenario.observable(1, 1).matrix, SIGMA_X)


def test_non_hermitian_observable():
    document = singlet_document(scenario={"observables": [
        [[[0, 1], [0, 0]], "sx"], ["sz", "sx"]]})

    with pytest.raises(ConfigError) as excinfo:
        parse_config(document)
    assert "(1, 2)" in str(excinfo.value)


@pytest.mark.parametrize("document", [
    singlet_document(extra={}),
    singlet_document(run={"tolerance": 1e-9}),
    singlet_document(state={"kind": "singlet", "seed": 3}),
    singlet_document(scenario={"observables": [["sz"], ["sq"]]}),
    singlet_document(scenario={"observables": [["sz", "sx"], ["sz", "sx"]],
        "num_sites": 3}),
    singlet_document(functional={"preset": "chsh", "name": "mine"}),
    singlet_document(functional={"preset": "mk3"}),
    singlet_document(run={"seed": -1}),
    singlet_document(run={"optimize": "annealing"}),
    ])
def test_invalid_documents(document):
    with pytest.raises(ConfigError):
        parse_config(document)


def test_parse_complex():
    assert parse_complex([1, 2], "x") == 1 + 2j
    assert parse_complex(0.5, "x") == 0.5

    with pytest.raises(ConfigError) as excinfo:
        parse_complex([1, 2, 3], "scenario.observables[0][0][1][1]")
    assert "scenario.observables[0][0][1][1]" in str(excinfo.value)


def test_functional_sections():
    experiment = parse_config(singlet_document(functional={
        "expression": "X1_1*X2_1 + X1_1*X2_2 + X1_2*X2_1 - X1_2*X2_2"}))
    assert len(experiment.functional.coefficients) == 4

    experiment = parse_config(singlet_document(functional={
        "form": "probability",
        "terms": [{"settings": [1, 1], "outcomes": [1, 1],
            "coefficient": 1.0}],
        "num_settings": 2,
        }))
    assert experiment.functional.form == "probability"

    with pytest.raises(ConfigError):
        parse_config(singlet_document(functional={
            "preset": "chsh", "expression": "X1_1*X2_1"}))
    with pytest.raises(ConfigError):
        parse_config(singlet_document(functional={
            "terms": [{"settings": [1, 1]}]}))


def test_load_config(tmp_path):
    filename = tmp_path / "singlet.json"
    filename.write_text(json.dumps(singlet_document()))
    experiment = load_config(str(filename))
    assert experiment.name == "singlet.json"

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(ConfigError):
        load_config(str(broken))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))


def test_default_threads(monkeypatch):
    monkeypatch.setenv("LQHV_THREADS", "3")
    experiment = parse_config(singlet_document(run={}))
    assert experiment.run.threads == 3

    monkeypatch.setenv("LQHV_THREADS", "many")
    with pytest.raises(ConfigError):
        parse_config(singlet_document(run={}))

# }}}


# {{{ presets and export

@pytest.mark.parametrize("name", ["singlet-chsh", "singlet-ch", "ghz2-mk2",
    "ghz3-mk3", "ghz4-mk4"])
def test_presets(name):
    experiment = preset_config(name)
    assert experiment.name == name
    assert experiment.functional.num_sites == experiment.scenario.num_sites


@pytest.mark.parametrize("name", ["ghz3-mk4", "ghz7-mk7", "bogus"])
def test_unknown_presets(name):
    with pytest.raises(ConfigError):
        preset_config(name)


def test_export_round_trip():
    experiment = preset_config("ghz3-mk3")
    document = json.loads(json.dumps(export_config(experiment)))
    again = parse_config(document, name="ghz3-mk3")

    nu = build_scenario_distribution(experiment.state, experiment.scenario)
    nu_again = build_scenario_distribution(again.state, again.scenario)
    assert np.max(np.abs(nu.values - nu_again.values)) < 1e-12
    assert abs(nu.tv_norm - nu_again.tv_norm) < 1e-12
    assert again.functional.coefficients == experiment.functional.coefficients

    report = render_report(run_report(experiment), fmt="json")
    assert render_report(run_report(again), fmt="json") == report


def test_overrides():
    experiment = preset_config("singlet-chsh")
    changed = with_run_overrides(experiment, tol=1e-6, seed=None)
    assert changed.run.tol == 1e-6
    assert changed.run.seed == experiment.run.seed

    with pytest.raises(ConfigError):
        with_run_overrides(experiment, colour="red")

    assert with_functional(experiment, ch()).functional.name == "ch"
    with pytest.raises(ConfigError):
        with_functional(preset_config("ghz3-mk3"), ch())

# }}}


if __name__ == "__main__":
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        from pytest import main
        main([__file__])

# vim: foldmethod=marker
