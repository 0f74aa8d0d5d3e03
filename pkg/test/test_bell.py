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

import sys

import numpy as np
import pytest
from pymbolic import parse

from lqhv.bell import (
        BellFunctional, DegenerateFunctionalError, StrategySpaceError, ch,
        chsh, chsh_optimal_settings, classical_bound,
        collect_correlation_terms, functional_from_coefficients,
        functional_from_expression, functional_preset,
        functional_to_expression, mermin_klyshko, mermin_klyshko_ghz_settings,
        quantum_value, random_dichotomic_settings, sandwich_check,
        seesaw_optimize, violation_ratio)
from lqhv.model import Scenario
from lqhv.qlinalg import SIGMA_X, SIGMA_Z, ValidationError, make_state

from utils import brute_force_classical_bound, random_state  # noqa


# {{{ functionals

def test_chsh_from_expression():
    functional = functional_from_expression(
            "X1_1*X2_1 + X1_1*X2_2 + X1_2*X2_1 - X1_2*X2_2", num_sites=2)
    assert functional.num_settings == 2
    assert functional.coefficients == chsh().coefficients


def test_expression_round_trip():
    functional = mermin_klyshko(3)
    again = functional_from_expression(functional_to_expression(functional),
            num_sites=3, num_settings=2)

    assert again.coefficients == pytest.approx(functional.coefficients)


def test_expression_arithmetic():
    functional = functional_from_expression("(X1_1*X2_1)/2", num_sites=2)
    assert functional.coefficients == {(1, 1): 0.5}

    terms = collect_correlation_terms(parse("(X1_1 + X1_2)*(X2_1 - X2_2)"))
    assert terms == {
            ((1, 1), (2, 1)): 1, ((1, 1), (2, 2)): -1,
            ((1, 2), (2, 1)): 1, ((1, 2), (2, 2)): -1}


@pytest.mark.parametrize("expr", [
    "X1_1*X1_2",
    "X1_1 + X1_1*X2_1",
    "Y1_1*X2_1",
    "X1_1*X2_1/X1_2",
    ])
def test_invalid_expressions(expr):
    with pytest.raises(ValidationError):
        functional_from_expression(expr, num_sites=2)


def test_functional_validation():
    with pytest.raises(ValidationError):
        BellFunctional("f", "correlation", 2, 2, {(1, 3): 1})
    with pytest.raises(ValidationError):
        BellFunctional("f", "correlation", 2, 2, {(1,): 1})
    with pytest.raises(ValidationError):
        BellFunctional("f", "probability", 2, 2, {((1, 1), (1, 0)): 1})
    with pytest.raises(ValidationError):
        BellFunctional("f", "tensor", 2, 2, {})


def test_mermin_klyshko_two_sites_is_half_chsh():
    assert mermin_klyshko(2).coefficients == pytest.approx(
            chsh().scaled(0.5).coefficients)


def test_mermin_klyshko_size_limits():
    with pytest.raises(ValidationError):
        mermin_klyshko(1)
    with pytest.raises(StrategySpaceError):
        mermin_klyshko(11)


def test_functional_preset():
    assert functional_preset("mk4").name == "mk4"
    assert functional_preset("ch").form == "probability"
    with pytest.raises(ValidationError):
        functional_preset("i3322")

# }}}


# {{{ classical bound

@pytest.mark.parametrize("functional", [chsh(), ch(), mermin_klyshko(2),
    mermin_klyshko(3), mermin_klyshko(4)])
def test_classical_bound_brute_force(functional, threads):
    value = classical_bound(functional, threads=threads)
    assert value == pytest.approx(brute_force_classical_bound(functional))
    assert value == pytest.approx(
            brute_force_classical_bound(functional, reverse=True))


def test_classical_bound_values():
    assert classical_bound(chsh()) == pytest.approx(2)
    assert classical_bound(ch()) == pytest.approx(0.5)
    for n in range(2, 6):
        assert classical_bound(mermin_klyshko(n)) == pytest.approx(1)


def test_classical_bound_random_functionals():
    rng = np.random.default_rng(44)
    for num_sites, num_settings in [(2, 3), (3, 2)]:
        settings = list(np.ndindex(*(num_settings,) * num_sites))
        functional = functional_from_coefficients("correlation",
                num_sites, num_settings,
                [(tuple(s + 1 for s in idx), rng.standard_normal())
                    for idx in settings])
        assert classical_bound(functional) == pytest.approx(
                brute_force_classical_bound(functional))

        functional = functional_from_coefficients("probability",
                num_sites, num_settings,
                [(tuple(s + 1 for s in idx), (1,) * num_sites,
                    rng.standard_normal()) for idx in settings])
        assert classical_bound(functional) == pytest.approx(
                brute_force_classical_bound(functional))


def test_classical_bound_degenerate_and_cap():
    zero = BellFunctional("zero", "correlation", 2, 2, {})
    assert classical_bound(zero) == 0
    with pytest.raises(DegenerateFunctionalError):
        violation_ratio(zero, make_state("singlet"), chsh_optimal_settings())

    with pytest.raises(StrategySpaceError):
        classical_bound(mermin_klyshko(4), max_strategies=100)


def test_scaling():
    functional = mermin_klyshko(3)
    assert classical_bound(functional.scaled(-3)) \
            == pytest.approx(3 * classical_bound(functional))

# }}}


# {{{ quantum values

def test_chsh_singlet(singlet, chsh_scenario):
    value = quantum_value(chsh(), singlet, chsh_optimal_settings())
    assert abs(value) == pytest.approx(2 * np.sqrt(2))

    result = violation_ratio(chsh(), singlet, chsh_scenario)
    assert result.ratio == pytest.approx(np.sqrt(2))
    assert result.combined_bound == pytest.approx(np.sqrt(2))


def test_ch_matches_chsh(singlet):
    settings = chsh_optimal_settings()
    assert quantum_value(ch(), singlet, settings) == pytest.approx(
            quantum_value(chsh(), singlet, settings) / 4)
    assert violation_ratio(ch(), singlet, settings).ratio \
            == pytest.approx(np.sqrt(2))


@pytest.mark.parametrize("num_sites", [2, 3, 4, 5])
def test_mermin_klyshko_ghz(num_sites):
    rho = make_state("ghz", num_sites=num_sites)
    result = violation_ratio(mermin_klyshko(num_sites), rho,
            mermin_klyshko_ghz_settings(num_sites))
    assert result.ratio == pytest.approx(2 ** ((num_sites - 1) / 2))


def test_product_state_does_not_violate():
    rng = np.random.default_rng(3)
    rho = make_state("pure", vector=np.kron([1, 0], [0.6, 0.8]))
    for _ in range(10):
        settings = random_dichotomic_settings(2, 2, 2, rng)
        assert violation_ratio(chsh(), rho, settings).ratio <= 1 + 1e-12


def test_correlator_range():
    rng = np.random.default_rng(5)
    single = BellFunctional("e11", "correlation", 2, 1, {(1,) * 2: 1})
    for _ in range(10):
        rho = random_state(rng, 2, 2)
        settings = random_dichotomic_settings(2, 1, 2, rng)
        assert abs(quantum_value(single, rho, settings)) <= 1 + 1e-12


def test_non_dichotomic_settings_rejected(singlet):
    settings = [[np.diag([1.0, 0.0]), SIGMA_X], [SIGMA_Z, SIGMA_X]]
    with pytest.raises(ValidationError):
        quantum_value(chsh(), singlet, settings)

    with pytest.raises(ValidationError):
        quantum_value(chsh(), singlet, [[SIGMA_Z, SIGMA_X]])


def test_probability_outcomes_must_cover_spectrum():
    functional = functional_from_coefficients("probability", 2, 2,
            [((1, 1), outcomes, 1.0)
                for outcomes in [(1, 1), (1, -1), (-1, 1), (-1, -1)]]
            + [((2, 2), outcomes, -1.0)
                for outcomes in [(1, 1), (1, -1), (-1, 1), (-1, -1)]]
            + [((1, 2), (1, 1), 0.01)])
    rho = make_state("explicit", matrix=np.eye(4) / 4)
    settings = [[SIGMA_Z, np.diag([1.0, 0.0])]] * 2

    with pytest.raises(ValidationError):
        quantum_value(functional, rho, settings)
    with pytest.raises(ValidationError):
        violation_ratio(functional, rho, settings)

    assert abs(quantum_value(functional, rho, [[SIGMA_Z, SIGMA_X]] * 2)) \
            <= classical_bound(functional) + 1e-12


def test_sandwich(singlet, chsh_scenario):
    check = sandwich_check(chsh(), singlet, chsh_scenario)
    assert check.ok
    assert check.ratio <= check.tv_norm + 1e-9
    assert check.tv_norm <= check.formula_bound + 1e-9

# }}}


# {{{ see-saw

def test_seesaw_chsh(singlet):
    rng = np.random.default_rng(0)
    initial = random_dichotomic_settings(2, 2, 2, rng)
    result = seesaw_optimize(chsh(), singlet, initial)

    assert result.quantum_value == pytest.approx(2 * np.sqrt(2), abs=1e-6)
    assert np.all(np.diff(result.trace) >= -1e-12)
    assert len(result.trace) <= 51


def test_seesaw_zero_iterations(singlet):
    settings = chsh_optimal_settings()
    result = seesaw_optimize(chsh(), singlet, settings, max_iters=0)

    assert result.trace == [pytest.approx(
        quantum_value(chsh(), singlet, settings))]


def test_seesaw_mermin_klyshko():
    rho = make_state("ghz", num_sites=3)
    functional = mermin_klyshko(3)
    best = 0
    for seed in range(10):
        rng = np.random.default_rng(seed)
        result = seesaw_optimize(functional, rho,
                random_dichotomic_settings(3, 2, 2, rng),
                max_iters=300, tol=1e-13)
        assert np.all(np.diff(result.trace) >= -1e-12)
        best = max(best, result.ratio)

    assert best == pytest.approx(2, abs=1e-5)


def test_seesaw_needs_correlation_form(singlet):
    with pytest.raises(ValidationError):
        seesaw_optimize(ch(), singlet, chsh_optimal_settings())


def test_seesaw_accepts_scenario(singlet):
    scenario = Scenario(chsh_optimal_settings())
    result = seesaw_optimize(chsh(), singlet, scenario, max_iters=5)
    assert result.ratio == pytest.approx(np.sqrt(2))

# }}}


if __name__ == "__main__":
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        from pytest import main
        main([__file__])

# vim: foldmethod=marker
