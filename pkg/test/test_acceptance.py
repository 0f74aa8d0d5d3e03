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
from itertools import product

import numpy as np
import numpy.linalg as la
import pytest

from lqhv.bell import (
        chsh, functional_from_coefficients,
        mermin_klyshko, mermin_klyshko_ghz_settings,
        random_dichotomic_settings, sandwich_check, seesaw_optimize,
        violation_ratio)
from lqhv.bounds import lqhv_norm_bound
from lqhv.model import (
        Scenario, build_scenario_distribution, chain_overlap_from_bases,
        check_moment_identity, max_marginal_deviation,
        scenario_chain_overlap_bound)
from lqhv.qlinalg import (
        hermitian_eig, make_state, pos_neg_parts, random_hermitian)

from utils import (  # noqa
        brute_force_classical_bound, random_scenario, random_state)


SIZES = list(product([2, 3], [2, 3], [1, 2, 3]))


# {{{ marginals and norms over random scenarios

@pytest.mark.parametrize("seed", range(50))
def test_random_scenario(seed):
    num_sites, local_dim, num_settings = SIZES[seed % len(SIZES)]
    rng = np.random.default_rng(seed)
    scenario = random_scenario(rng, num_sites, local_dim, num_settings)
    rho = random_state(rng, num_sites, local_dim)

    nu = build_scenario_distribution(rho, scenario)
    assert abs(nu.total() - 1) <= 1e-9
    assert max_marginal_deviation(nu, rho).max_deviation <= 1e-9

    bound = lqhv_norm_bound(num_sites, local_dim, num_settings)
    assert nu.tv_norm <= bound + 1e-9

    if num_sites == 2:
        chain = scenario_chain_overlap_bound(rho, scenario)
        assert nu.tv_norm <= chain + 1e-9
        assert chain <= local_dim ** (num_settings / 2) + 1e-9


@pytest.mark.parametrize(("num_sites", "local_dim", "num_settings"), SIZES)
def test_random_sandwich(num_sites, local_dim, num_settings):
    rng = np.random.default_rng(
            100 * num_sites + 10 * local_dim + num_settings)
    scenario = random_scenario(rng, num_sites, local_dim, num_settings,
            dichotomic=True)
    rho = random_state(rng, num_sites, local_dim)
    functional = functional_from_coefficients("correlation",
            num_sites, num_settings, [
                (tuple(s + 1 for s in idx), rng.standard_normal())
                for idx in np.ndindex(*(num_settings,) * num_sites)])

    check = sandwich_check(functional, rho, scenario)
    assert check.ratio <= check.tv_norm + 1e-6
    assert check.tv_norm <= check.formula_bound + 1e-9

# }}}


# {{{ moment identity

def test_moment_identity():
    rng = np.random.default_rng(2)
    max_deviation = 0
    for trial in range(100):
        local_dim = 2 if trial < 60 else 3
        rho = random_state(rng, 2, local_dim)
        m = 1 + trial % 3
        observables = [random_hermitian(local_dim**2, rng) for _ in range(m)]
        max_deviation = max(max_deviation,
                check_moment_identity(rho, [observables]))

    assert max_deviation <= 1e-9

# }}}


# {{{ attainability

def test_chsh_attains_bound(singlet, chsh_scenario):
    assert brute_force_classical_bound(chsh()) == 2

    result = violation_ratio(chsh(), singlet, chsh_scenario)
    assert result.classical_bound == 2
    assert abs(result.ratio - np.sqrt(2)) <= 1e-9
    assert abs(result.ratio - result.combined_bound) <= 1e-6

    check = sandwich_check(chsh(), singlet, chsh_scenario)
    assert check.ok


@pytest.mark.parametrize("num_sites", [3, 4])
def test_mermin_klyshko_attains_bound(num_sites):
    rho = make_state("ghz", num_sites=num_sites)
    scenario = Scenario(mermin_klyshko_ghz_settings(num_sites))
    functional = mermin_klyshko(num_sites)

    result = violation_ratio(functional, rho, scenario)
    assert abs(result.ratio - 2 ** ((num_sites - 1) / 2)) <= 1e-6
    assert abs(result.ratio - result.combined_bound) <= 1e-6

    nu = build_scenario_distribution(rho, scenario)
    assert result.ratio <= nu.tv_norm + 1e-6
    assert nu.tv_norm <= lqhv_norm_bound(num_sites, 2, 2) + 1e-9

# }}}


# {{{ see-saw

def test_seesaw_recovers_tsirelson(singlet):
    successes = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        result = seesaw_optimize(chsh(), singlet,
                random_dichotomic_settings(2, 2, 2, rng), max_iters=50)

        assert len(result.trace) <= 51
        assert np.all(np.diff(result.trace) >= -1e-12)
        if result.quantum_value >= 2 * np.sqrt(2) - 1e-6:
            successes += 1

    assert successes >= 18

# }}}


# {{{ property suites

def test_pos_neg_parts_identities():
    rng = np.random.default_rng(10)
    for i in range(100):
        z = random_hermitian(2 + i % 5, rng)
        parts = pos_neg_parts(z)
        pos = parts.positive_part
        neg = parts.negative_part

        assert la.norm(pos - neg - z) <= 1e-10
        assert la.norm(pos @ neg) <= 1e-10
        assert la.eigvalsh(pos)[0] >= -1e-10
        assert la.eigvalsh(neg)[0] >= -1e-10


def test_chain_overlap_phase_invariance():
    rng = np.random.default_rng(11)
    for i in range(100):
        local_dim = 2 + i % 2
        num_settings = 1 + i % 3
        rho = random_state(rng, 1, local_dim)
        bases = [hermitian_eig(random_hermitian(local_dim, rng))[1]
                for _ in range(num_settings)]
        phased = [basis * np.exp(2j * np.pi * rng.random(local_dim))
                for basis in bases]

        assert abs(chain_overlap_from_bases(rho, phased)
                - chain_overlap_from_bases(rho, bases)) <= 1e-10


def test_pivot_independence():
    rng = np.random.default_rng(12)
    for i in range(100):
        num_sites = 2 + i % 2
        scenario = random_scenario(rng, num_sites, 2, 2)
        rho = random_state(rng, num_sites, 2)

        tables = []
        for pivot in range(1, num_sites + 1):
            nu = build_scenario_distribution(rho, scenario.with_pivot(pivot))
            tables.append([nu.marginal_table(settings)
                for settings in scenario.settings_tuples()])

        for other in tables[1:]:
            for first, second in zip(tables[0], other):
                assert np.max(np.abs(first - second)) <= 1e-9


def test_identical_settings_positivity():
    rng = np.random.default_rng(13)
    for i in range(100):
        num_sites = 2 + i % 2
        pivot = int(rng.integers(1, num_sites + 1))
        observables = []
        for site in range(1, num_sites + 1):
            if site == pivot:
                observables.append(
                    [random_hermitian(2, rng), random_hermitian(2, rng)])
            else:
                obs = random_hermitian(2, rng)
                observables.append([obs, obs])
        scenario = Scenario(observables, pivot_site=pivot)
        rho = random_state(rng, num_sites, 2)

        nu = build_scenario_distribution(rho, scenario)
        assert nu.min_value() >= -1e-12
        assert abs(nu.tv_norm - 1) <= 1e-9

# }}}


if __name__ == "__main__":
    if len(sys.argv) > 1:
        exec(sys.argv[1])
    else:
        from pytest import main
        main([__file__])

# vim: foldmethod=marker
