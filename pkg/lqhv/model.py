"""Signed scenario distributions reproducing quantum joint probabilities"""

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

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from itertools import product

import numpy as np
from pytools import (
        ProcessLogger, Record, generate_nonnegative_integer_tuples_below,
        memoize_method)

from lqhv.qlinalg import (
        DEFAULT_CLUSTER_TOL, DensityMatrix, UnsupportedSizeError,
        ValidationError, as_observable, conditional_site_operator, hermitize,
        operator_sqrt, pos_neg_parts, site_tensor, sym_product,
        tensor_product)

logger = logging.getLogger(__name__)


__doc__ = """
Outcome tuples
^^^^^^^^^^^^^^

An outcome tuple assigns one eigenvalue to every (site, setting) pair. It is
stored as a tuple of eigenvalue *indices*, site-major and setting-minor, so
that coordinate ``(n - 1) * S + (s - 1)`` belongs to setting *s* of site *n*.
Index *k* refers to the *k*-th distinct eigenvalue in descending order.

.. autoexception:: ScenarioSizeError
.. autoexception:: UnsupportedCaseError

.. autoclass:: Scenario
.. autoclass:: WeightOperator
.. autoclass:: WeightOperatorTable
.. autoclass:: ConditionalWeightEntry
.. autoclass:: ConditionalWeights
.. autoclass:: SignedScenarioDistribution
.. autoclass:: MarginalDeviation

.. autofunction:: build_weight_operators
.. autofunction:: conditional_weights
.. autofunction:: build_scenario_distribution
.. autofunction:: marginal_joint_prob
.. autofunction:: quantum_joint_probability
.. autofunction:: quantum_joint_table
.. autofunction:: max_marginal_deviation
.. autofunction:: tv_norm

Moment measure
^^^^^^^^^^^^^^

.. autofunction:: moment_measure_value
.. autofunction:: check_moment_identity

Chain-overlap bound
^^^^^^^^^^^^^^^^^^^

.. autofunction:: chain_overlap_bound
.. autofunction:: chain_overlap_from_bases
.. autofunction:: scenario_chain_overlap_bound
"""


DEFAULT_MAX_OUTCOMES = 10**6
DEGENERATE_MASS_TOL = 1e-12
MIN_OVERLAP = 1e-14


class ScenarioSizeError(UnsupportedSizeError):
    pass


class UnsupportedCaseError(ValueError):
    pass


# {{{ scenario

class Scenario:
    """*num_sites* qudits of dimension *local_dim*, each measured with one of
    *num_settings* projective observables.

    .. attribute:: observables

        A tuple (one entry per site) of tuples (one entry per setting) of
        :class:`lqhv.qlinalg.Observable`.

    .. attribute:: num_sites
    .. attribute:: local_dim
    .. attribute:: num_settings
    .. attribute:: pivot_site

        The site receiving conditional weights in
        :func:`build_scenario_distribution`. 1-based.

    .. attribute:: radices

        Distinct-eigenvalue counts, site-major, setting-minor.

    .. automethod:: axis
    .. automethod:: observable
    .. automethod:: with_pivot
    """

    def __init__(self, observables, pivot_site=1,
            cluster_tol=DEFAULT_CLUSTER_TOL):
        observables = tuple(
                tuple(as_observable(obs,
                        name=f"observable {n + 1}.{s + 1}",
                        cluster_tol=cluster_tol)
                    for s, obs in enumerate(site_observables))
                for n, site_observables in enumerate(observables))

        if len(observables) < 2:
            raise ValidationError("a scenario needs at least two sites")

        num_settings = len(observables[0])
        if num_settings < 1:
            raise ValidationError("a scenario needs at least one setting")
        local_dim = observables[0][0].dim

        for n, site_observables in enumerate(observables):
            if len(site_observables) != num_settings:
                raise ValidationError(
                        f"site {n + 1} has {len(site_observables)} settings, "
                        f"expected {num_settings}")
            for s, obs in enumerate(site_observables):
                if obs.dim != local_dim:
                    raise ValidationError(
                            f"observable {n + 1}.{s + 1} has dimension "
                            f"{obs.dim}, expected {local_dim}")

        if not 1 <= pivot_site <= len(observables):
            raise ValidationError(
                    f"pivot site {pivot_site} outside 1..{len(observables)}")

        self.observables = observables
        self.num_sites = len(observables)
        self.num_settings = num_settings
        self.local_dim = local_dim
        self.pivot_site = pivot_site
        self.cluster_tol = cluster_tol

    def observable(self, site, setting):
        return self.observables[site - 1][setting - 1]

    def axis(self, site, setting):
        return (site - 1) * self.num_settings + (setting - 1)

    @property
    def radices(self):
        return tuple(len(obs.eigenvalues)
                for site_observables in self.observables
                for obs in site_observables)

    @property
    def spectra(self):
        return tuple(obs.eigenvalues
                for site_observables in self.observables
                for obs in site_observables)

    @property
    def num_outcomes(self):
        return int(np.prod(self.radices, dtype=np.int64))

    @property
    def conditioning_sites(self):
        return tuple(n for n in range(1, self.num_sites + 1)
                if n != self.pivot_site)

    @property
    def conditioning_axes(self):
        return tuple(self.axis(n, s)
                for n in self.conditioning_sites
                for s in range(1, self.num_settings + 1))

    @property
    def pivot_axes(self):
        return tuple(self.axis(self.pivot_site, s)
                for s in range(1, self.num_settings + 1))

    def settings_tuples(self):
        """Yield all 1-based setting tuples ``(s_1, ..., s_N)``."""
        for settings in generate_nonnegative_integer_tuples_below(
                self.num_settings, self.num_sites):
            yield tuple(s + 1 for s in settings)

    def with_pivot(self, pivot_site):
        return Scenario(self.observables, pivot_site=pivot_site,
                cluster_tol=self.cluster_tol)

    def __repr__(self):
        return "Scenario(N=%d, d=%d, S=%d, pivot=%d)" % (
                self.num_sites, self.local_dim, self.num_settings,
                self.pivot_site)

# }}}


# {{{ weight operators

class WeightOperator(Record):
    """
    .. attribute:: conditioning

        Outcome indices on the non-pivot sites, site-major.

    .. attribute:: operator

        The Hermitian weight operator acting on the non-pivot sites in
        increasing site order.

    .. attribute:: parts

        Its :class:`lqhv.qlinalg.PosNegParts`.
    """


class WeightOperatorTable(Record):
    """
    .. attribute:: conditioning_radices
    .. attribute:: entries

        A :class:`dict` mapping conditioning tuples to
        :class:`WeightOperator` instances.
    """

    def __getitem__(self, conditioning):
        return self.entries[tuple(conditioning)]

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def total(self):
        return sum(wop.operator for wop in self.entries.values())


def _site_weight_factor(site_observables, indices):
    return hermitize(reduce(np.matmul, [
        obs.spectral().projectors[k]
        for obs, k in zip(site_observables, indices)]))


def _split_conditioning(scenario, conditioning):
    S = scenario.num_settings
    return [conditioning[i*S:(i+1)*S]
            for i in range(len(scenario.conditioning_sites))]


def _weight_operator(scenario, conditioning):
    factors = [
            _site_weight_factor(scenario.observables[n - 1], indices)
            for n, indices in zip(
                scenario.conditioning_sites,
                _split_conditioning(scenario, conditioning))]

    operator = tensor_product(factors)
    return WeightOperator(
            conditioning=conditioning,
            operator=operator,
            parts=pos_neg_parts(operator))


def _conditioning_radices(scenario):
    radices = scenario.radices
    return tuple(radices[axis] for axis in scenario.conditioning_axes)


def _map_chunked(func, items, threads):
    if threads is None or threads <= 1 or len(items) < 2:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))


def build_weight_operators(scenario, threads=1):
    """Return a :class:`WeightOperatorTable` holding, for each outcome tuple
    on the non-pivot sites, the operator

    .. math::

        T = \\bigotimes_{n} \\frac{1}{2} \\left(
            P_n^{(1)} \\cdots P_n^{(S)} + \\text{h.c.} \\right)

    and its positive and negative parts. The operators sum to the identity.
    """
    radices = _conditioning_radices(scenario)
    conditionings = list(generate_nonnegative_integer_tuples_below(
        list(radices)))

    with ProcessLogger(logger,
            "building %d weight operators" % len(conditionings)):
        operators = _map_chunked(
                lambda cond: _weight_operator(scenario, cond),
                conditionings, threads)

    return WeightOperatorTable(
            conditioning_radices=radices,
            entries={wop.conditioning: wop for wop in operators})

# }}}


# {{{ conditional weights

class ConditionalWeightEntry(Record):
    """
    .. attribute:: conditioning
    .. attribute:: plus_mass

        ``tr[rho (I (x) T+)]``

    .. attribute:: minus_mass
    .. attribute:: plus

        A tuple (one entry per pivot setting) of probability vectors over the
        pivot observable's distinct eigenvalues.

    .. attribute:: minus
    """


class ConditionalWeights(Record):
    """
    .. attribute:: entries

        A :class:`dict` mapping conditioning tuples to
        :class:`ConditionalWeightEntry` instances.
    """

    def __getitem__(self, conditioning):
        return self.entries[tuple(conditioning)]

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self):
        return len(self.entries)


def _probability_vector(sigma, mass, observable):
    projectors = observable.spectral().projectors
    num_outcomes = len(projectors)

    if mass <= DEGENERATE_MASS_TOL:
        return np.full(num_outcomes, 1 / num_outcomes)

    weights = np.array([np.trace(proj @ sigma).real for proj in projectors])
    weights = np.clip(weights / mass, 0, None)
    total = weights.sum()
    if total <= 0:
        return np.full(num_outcomes, 1 / num_outcomes)
    return weights / total


def _conditional_entry(rho, scenario, wop):
    pivot_observables = scenario.observables[scenario.pivot_site - 1]

    result = {}
    for sign, part in [
            ("plus", wop.parts.positive_part),
            ("minus", wop.parts.negative_part)]:
        sigma = conditional_site_operator(rho, scenario.pivot_site, part)
        mass = float(np.trace(sigma).real)
        if mass <= DEGENERATE_MASS_TOL:
            logger.debug("conditioning %s: degenerate %s mass %.3e",
                    wop.conditioning, sign, mass)

        result[sign] = tuple(
                _probability_vector(sigma, mass, obs)
                for obs in pivot_observables)
        result[sign + "_mass"] = max(mass, 0.0)

    return ConditionalWeightEntry(conditioning=wop.conditioning, **result)


def _check_dimensions(rho, scenario):
    if (rho.num_sites != scenario.num_sites
            or rho.local_dim != scenario.local_dim):
        raise ValidationError(
                "state on %d sites of dimension %d does not match scenario "
                "with %d sites of dimension %d"
                % (rho.num_sites, rho.local_dim,
                    scenario.num_sites, scenario.local_dim))


def conditional_weights(rho, scenario, weight_ops, threads=1):
    """Return the :class:`ConditionalWeights` of *rho*:

    .. math::

        \\alpha^{(\\pm)}(x \\mid c) =
        \\frac{\\operatorname{tr}[\\rho (P(x) \\otimes T_c^{(\\pm)})]}
        {\\operatorname{tr}[\\rho (I \\otimes T_c^{(\\pm)})]}.

    A denominator at most ``1e-12`` yields the uniform vector.
    """
    _check_dimensions(rho, scenario)

    entries = _map_chunked(
            lambda wop: _conditional_entry(rho, scenario, wop),
            list(weight_ops), threads)

    return ConditionalWeights(
            entries={entry.conditioning: entry for entry in entries})

# }}}


# {{{ distribution

class SignedScenarioDistribution:
    """A real-valued, possibly negative, normalized table over the outcome
    tuples of :attr:`scenario`.

    .. attribute:: scenario
    .. attribute:: values

        A read-only :class:`numpy.ndarray` of shape ``scenario.radices``.

    .. attribute:: tv_norm

    .. automethod:: total
    .. automethod:: marginal_table
    .. automethod:: items
    """

    def __init__(self, scenario, values):
        values = np.array(values, dtype=np.float64)
        if values.shape != scenario.radices:
            raise ValidationError(
                    f"values of shape {values.shape} do not match scenario "
                    f"radices {scenario.radices}")
        values.setflags(write=False)

        self.scenario = scenario
        self.values = values

    @property
    @memoize_method
    def tv_norm(self):
        return tv_norm(self.values)

    def total(self):
        return float(np.sum(self.values.ravel()))

    def min_value(self):
        return float(self.values.min())

    def marginal_table(self, settings):
        """Return the table of ``sum nu(omega)`` over outcome tuples
        consistent with each outcome choice for *settings* (1-based, one per
        site). Axis *n* runs over the eigenvalue indices of site *n*.
        """
        scenario = self.scenario
        if len(settings) != scenario.num_sites:
            raise ValidationError(
                    f"expected {scenario.num_sites} settings, "
                    f"got {len(settings)}")
        for s in settings:
            if not 1 <= s <= scenario.num_settings:
                raise ValidationError(
                        f"setting {s} outside 1..{scenario.num_settings}")

        kept = {scenario.axis(n, s) for n, s in enumerate(settings, 1)}
        summed = tuple(axis for axis in range(self.values.ndim)
                if axis not in kept)
        return np.sum(self.values, axis=summed)

    def items(self):
        """Yield ``(outcomes, value)`` pairs in mixed-radix order, outcomes
        given as eigenvalues.
        """
        spectra = self.scenario.spectra
        for idx in np.ndindex(*self.values.shape):
            yield (tuple(spectra[axis][k] for axis, k in enumerate(idx)),
                    float(self.values[idx]))

    def __repr__(self):
        return "SignedScenarioDistribution(%r, tv_norm=%.12g)" % (
                self.scenario, self.tv_norm)


def _outer(vectors):
    return reduce(np.multiply.outer, vectors)


def build_scenario_distribution(rho, scenario, weight_ops=None,
        max_outcomes=DEFAULT_MAX_OUTCOMES, threads=1):
    """Return the :class:`SignedScenarioDistribution`

    .. math::

        \\nu(\\omega) = t_c^{(+)} \\prod_s \\alpha_s^{(+)}(x_s \\mid c)
            - t_c^{(-)} \\prod_s \\alpha_s^{(-)}(x_s \\mid c),

    where *c* is the restriction of *omega* to the non-pivot sites, *x_s*
    the pivot-site outcome for setting *s* and
    ``t_c = tr[rho (I (x) T_c)]``.

    :raises ScenarioSizeError: if the outcome space exceeds *max_outcomes*.
    """
    _check_dimensions(rho, scenario)

    if scenario.num_outcomes > max_outcomes:
        raise ScenarioSizeError(
                "outcome space of %d tuples exceeds cap of %d"
                % (scenario.num_outcomes, max_outcomes))

    if weight_ops is None:
        weight_ops = build_weight_operators(scenario, threads=threads)

    with ProcessLogger(logger,
            "building signed distribution over %d outcomes"
            % scenario.num_outcomes):
        weights = conditional_weights(rho, scenario, weight_ops,
                threads=threads)

        radices = scenario.radices
        cond_axes = scenario.conditioning_axes
        pivot_axes = scenario.pivot_axes
        work_shape = [radices[axis] for axis in cond_axes + pivot_axes]

        values = np.empty(work_shape, dtype=np.float64)
        for entry in weights:
            values[entry.conditioning] = (
                    entry.plus_mass * _outer(entry.plus)
                    - entry.minus_mass * _outer(entry.minus))

        values = values.transpose(np.argsort(cond_axes + pivot_axes))

    result = SignedScenarioDistribution(scenario, values)
    logger.info("%r: total %.15g", result, result.total())
    return result

# }}}


# {{{ marginals

def _outcome_indices(scenario, settings, outcomes):
    if len(outcomes) != scenario.num_sites:
        raise ValidationError(
                f"expected {scenario.num_sites} outcomes, got {len(outcomes)}")

    return tuple(
            scenario.observable(n, s).spectral().index_of(x)
            for n, (s, x) in enumerate(zip(settings, outcomes), 1))


def marginal_joint_prob(nu, settings, outcomes):
    """Return the sum of *nu* over all outcome tuples in which setting
    ``settings[n]`` of site *n* yields eigenvalue ``outcomes[n]``.
    """
    table = nu.marginal_table(settings)
    return float(table[_outcome_indices(nu.scenario, settings, outcomes)])


def quantum_joint_table(rho, scenario, settings):
    """Return ``tr[rho (P_1(x_1) (x) ... (x) P_N(x_N))]`` for every outcome
    index tuple, as an array with one axis per site.
    """
    _check_dimensions(rho, scenario)
    n = rho.num_sites

    args = [site_tensor(rho), list(range(2 * n))]
    for m, s in enumerate(settings):
        projectors = np.array(
                scenario.observables[m][s - 1].spectral().projectors)
        args.extend([projectors, [2 * n + m, n + m, m]])
    args.append([2 * n + m for m in range(n)])

    return np.einsum(*args).real


def quantum_joint_probability(rho, scenario, settings, outcomes):
    table = quantum_joint_table(rho, scenario, settings)
    return float(table[_outcome_indices(scenario, settings, outcomes)])


class MarginalDeviation(Record):
    """
    .. attribute:: max_deviation
    .. attribute:: settings

        The 1-based settings of the worst offender.

    .. attribute:: outcomes

        The eigenvalues of the worst offender.

    .. attribute:: model_value
    .. attribute:: quantum_value
    .. attribute:: num_checked
    """


def max_marginal_deviation(nu, rho):
    """Compare every marginal of *nu* against the quantum joint probabilities
    of *rho* and return a :class:`MarginalDeviation` describing the worst
    offender.
    """
    scenario = nu.scenario
    worst = None
    num_checked = 0

    with ProcessLogger(logger, "checking marginals of %r" % scenario):
        for settings in scenario.settings_tuples():
            model = nu.marginal_table(settings)
            quantum = quantum_joint_table(rho, scenario, settings)
            deviation = np.abs(model - quantum)
            num_checked += deviation.size

            idx = np.unravel_index(np.argmax(deviation), deviation.shape)
            if worst is None or deviation[idx] > worst.max_deviation:
                worst = MarginalDeviation(
                        max_deviation=float(deviation[idx]),
                        settings=settings,
                        outcomes=tuple(
                            scenario.observable(n, s).eigenvalues[k]
                            for n, (s, k) in enumerate(zip(settings, idx), 1)),
                        model_value=float(model[idx]),
                        quantum_value=float(quantum[idx]),
                        num_checked=None)

    return worst.copy(num_checked=num_checked)


def tv_norm(nu):
    """Return the sum of absolute values of *nu*, which may be a
    :class:`SignedScenarioDistribution` or any array of values. Summation is
    pairwise.
    """
    if isinstance(nu, SignedScenarioDistribution):
        return nu.tv_norm

    values = np.asarray(nu, dtype=np.float64).ravel()
    return float(np.sum(np.abs(values)))

# }}}


# {{{ moment measure

def _full_observables(rho, observables):
    result = []
    for i, obs in enumerate(observables):
        obs = as_observable(obs, name=f"observable {i + 1}")
        if obs.dim != rho.dim:
            raise ValidationError(
                    f"observable {i + 1} has dimension {obs.dim}, state has "
                    f"dimension {rho.dim}")
        result.append(obs)
    return result


def moment_measure_value(rho, observables, outcome_set=None):
    """Return the symmetrized moment measure of *outcome_set*,

    .. math::

        \\sum_{(x_1, \\dots, x_m) \\in F} \\frac{1}{m!} \\sum_\\sigma
        \\operatorname{tr}[\\rho P_{\\sigma(1)}(x_{\\sigma(1)}) \\cdots
        P_{\\sigma(m)}(x_{\\sigma(m)})].

    :arg observables: Hermitian matrices acting on the full space of *rho*.
    :arg outcome_set: an iterable of eigenvalue tuples. *None* stands for
        the product of all spectra, for which the result is 1.
    """
    observables = _full_observables(rho, observables)

    if outcome_set is None:
        outcome_set = product(*[obs.eigenvalues for obs in observables])

    total = 0
    for outcomes in outcome_set:
        if len(outcomes) != len(observables):
            raise ValidationError(
                    f"outcome tuple {outcomes} does not match "
                    f"{len(observables)} observables")
        projectors = [obs.projector(x)
                for obs, x in zip(observables, outcomes)]
        total += rho.expectation(sym_product(projectors))

    return float(total)


def check_moment_identity(rho, trials):
    """For each collection of observables in *trials*, compare the
    symmetrized moment ``tr[rho {X_1 ... X_m}_sym]`` against the first moment
    of the moment measure and return the largest absolute deviation.
    """
    max_deviation = 0.0

    for observables in trials:
        observables = _full_observables(rho, observables)
        direct = rho.expectation(
                sym_product([obs.matrix for obs in observables]))

        spectral = 0
        for idx in product(*[range(len(obs.eigenvalues))
                for obs in observables]):
            coefficient = np.prod([obs.eigenvalues[k]
                for obs, k in zip(observables, idx)])
            projectors = [obs.spectral().projectors[k]
                    for obs, k in zip(observables, idx)]
            spectral += coefficient * rho.expectation(sym_product(projectors))

        max_deviation = max(max_deviation, abs(direct - spectral))

    return max_deviation

# }}}


# {{{ chain-overlap bound

def chain_overlap_from_bases(reduced_state, bases):
    """Return

    .. math::

        \\frac{1}{2} \\sum_{k_1, \\dots, k_S} |\\beta| \\operatorname{tr}
        [\\tilde\\rho Q^{1/2}],
        \\quad
        Q = |\\phi_1\\rangle\\langle\\phi_1| + |\\phi_S\\rangle\\langle\\phi_S|
        + \\gamma |\\phi_1\\rangle\\langle\\phi_S| + \\text{h.c.},

    with ``beta = <phi_1|phi_2> ... <phi_{S-1}|phi_S>``,
    ``alpha = <phi_S|phi_1>`` and ``gamma = alpha beta^2 / |beta|^2``.

    :arg bases: a list of *S* unitary matrices whose columns are the
        eigenvectors ``phi_s`` of the observables.
    """
    rho = np.asarray(getattr(reduced_state, "entries", reduced_state))
    bases = [np.asarray(basis, dtype=np.complex128) for basis in bases]
    d = rho.shape[0]

    total = 0
    for ks in product(range(d), repeat=len(bases)):
        phis = [basis[:, k] for basis, k in zip(bases, ks)]

        beta = np.prod([np.vdot(phis[s], phis[s + 1])
            for s in range(len(phis) - 1)])
        if abs(beta) <= MIN_OVERLAP:
            continue
        alpha = np.vdot(phis[-1], phis[0])
        gamma = alpha * beta**2 / abs(beta)**2

        first = phis[0][:, np.newaxis]
        last = phis[-1][:, np.newaxis]
        coupling = gamma * (first @ last.conj().T)
        q = (first @ first.conj().T + last @ last.conj().T
                + coupling + coupling.conj().T)

        total += abs(beta) * np.trace(rho @ operator_sqrt(q)).real

    return float(total / 2)


def chain_overlap_bound(reduced_state, observables):
    """Return the chain-overlap bound on the total variation of the signed
    distribution built from a bipartite state whose non-pivot marginal is
    *reduced_state* and whose non-pivot observables are *observables*.

    :raises UnsupportedCaseError: if any observable has a degenerate
        spectrum.
    """
    observables = [as_observable(obs, name=f"observable {i + 1}")
            for i, obs in enumerate(observables)]
    if not observables:
        raise ValidationError("chain-overlap bound needs at least one "
                "observable")

    bases = []
    for i, obs in enumerate(observables):
        spectral = obs.spectral()
        if len(spectral) != obs.dim:
            raise UnsupportedCaseError(
                    f"observable {i + 1} has a degenerate spectrum "
                    f"({len(spectral)} distinct eigenvalues in dimension "
                    f"{obs.dim})")
        bases.append(np.hstack(spectral.eigenvectors))

    return chain_overlap_from_bases(reduced_state, bases)


def scenario_chain_overlap_bound(rho, scenario):
    """Return :func:`chain_overlap_bound` for the non-pivot site of a
    bipartite *scenario*.
    """
    _check_dimensions(rho, scenario)
    if scenario.num_sites != 2:
        raise UnsupportedCaseError(
                "chain-overlap bound is defined for two sites only, "
                f"got {scenario.num_sites}")

    (other,) = scenario.conditioning_sites
    reduced = DensityMatrix(
            hermitize(conditional_site_operator(rho, other)),
            num_sites=1, local_dim=rho.local_dim, name="reduced state")
    return chain_overlap_bound(reduced, scenario.observables[other - 1])

# }}}

# vim: foldmethod=marker
