"""Bell functionals, classical and quantum values, see-saw optimization"""

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
import re
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pymbolic import parse, var
from pymbolic.mapper import Mapper
from pymbolic.primitives import flattened_product, flattened_sum, is_constant
from pytools import (
        ProcessLogger, Record, generate_nonnegative_integer_tuples_below)

from lqhv.bounds import combined_bound, lqhv_norm_bound
from lqhv.qlinalg import (
        SIGMA_X, SIGMA_Y, SIGMA_Z, UnsupportedSizeError, ValidationError,
        as_observable, conditional_site_operator, hermitian_eig, hermitize,
        random_dichotomic, site_tensor, tensor_product)

logger = logging.getLogger(__name__)


__doc__ = """
Functionals
^^^^^^^^^^^

A correlation-form functional assigns a coefficient to every setting tuple
``(s_1, ..., s_N)`` (1-based) and is evaluated on the products of dichotomic
outcomes. A probability-form functional assigns a coefficient to pairs of
setting tuples and outcome tuples and is evaluated on joint probabilities.

.. autoexception:: DegenerateFunctionalError
.. autoexception:: StrategySpaceError
.. autoexception:: BoundViolationError

.. autoclass:: BellFunctional
.. autoclass:: ViolationResult
.. autoclass:: CorrelationTermCollector

.. autofunction:: chsh
.. autofunction:: ch
.. autofunction:: mermin_klyshko
.. autofunction:: functional_from_expression
.. autofunction:: functional_from_coefficients
.. autofunction:: functional_preset

Evaluation
^^^^^^^^^^

.. autofunction:: classical_bound
.. autofunction:: quantum_value
.. autofunction:: violation_ratio
.. autofunction:: seesaw_optimize
.. autofunction:: sandwich_check

Settings
^^^^^^^^

.. autofunction:: dichotomic_phase_observable
.. autofunction:: chsh_optimal_settings
.. autofunction:: mermin_klyshko_ghz_settings
.. autofunction:: random_dichotomic_settings
"""


MAX_STRATEGIES = 10**8
MAX_MERMIN_KLYSHKO_SITES = 10
CHUNK_ELEMENTS = 2**22
RATIO_SLACK = 1e-6
SIGN_ZERO_TOL = 1e-12

CORRELATION = "correlation"
PROBABILITY = "probability"


class DegenerateFunctionalError(ValueError):
    pass


class StrategySpaceError(UnsupportedSizeError):
    pass


class BoundViolationError(RuntimeError):
    pass


# {{{ functional

class BellFunctional(Record):
    """
    .. attribute:: name
    .. attribute:: form

        ``"correlation"`` or ``"probability"``.

    .. attribute:: num_sites
    .. attribute:: num_settings
    .. attribute:: outcomes

        The outcome alphabet shared by every (site, setting) pair. Always
        ``(1.0, -1.0)`` for the correlation form.

    .. attribute:: coefficients

        A :class:`dict`. Keys are 1-based setting tuples for the correlation
        form and pairs ``(settings, outcomes)`` for the probability form.

    .. automethod:: coefficient_tensor
    .. automethod:: scaled
    """

    def __init__(self, name, form, num_sites, num_settings, coefficients,
            outcomes=(1.0, -1.0)):
        if form not in (CORRELATION, PROBABILITY):
            raise ValidationError(f"unknown functional form '{form}'")
        if num_sites < 1 or num_settings < 1:
            raise ValidationError(
                    f"invalid functional size: num_sites={num_sites}, "
                    f"num_settings={num_settings}")

        outcomes = tuple(float(x) for x in outcomes)
        if form == CORRELATION:
            outcomes = (1.0, -1.0)
        if len(set(outcomes)) != len(outcomes) or not outcomes:
            raise ValidationError(f"invalid outcome alphabet {outcomes}")

        checked = {}
        for key, coeff in coefficients.items():
            if form == CORRELATION:
                settings = tuple(int(s) for s in key)
                key = settings
            else:
                settings, outs = key
                settings = tuple(int(s) for s in settings)
                outs = tuple(float(x) for x in outs)
                if len(outs) != num_sites:
                    raise ValidationError(
                            f"outcome tuple {outs} does not have "
                            f"{num_sites} entries")
                for x in outs:
                    if x not in outcomes:
                        raise ValidationError(
                                f"outcome {x} not in alphabet {outcomes}")
                key = (settings, outs)

            if len(settings) != num_sites:
                raise ValidationError(
                        f"setting tuple {settings} does not have "
                        f"{num_sites} entries")
            for s in settings:
                if not 1 <= s <= num_settings:
                    raise ValidationError(
                            f"setting {s} outside 1..{num_settings}")

            checked[key] = checked.get(key, 0.0) + float(coeff)

        super().__init__(name=name, form=form, num_sites=num_sites,
                num_settings=num_settings, outcomes=outcomes,
                coefficients=checked)

    @property
    def site_axes(self):
        """Shape of the coefficient tensor per site."""
        if self.form == CORRELATION:
            return (self.num_settings,)
        else:
            return (self.num_settings, len(self.outcomes))

    def coefficient_tensor(self):
        """Return the dense coefficient tensor with axes ``site_axes`` per
        site, sites in order.
        """
        shape = self.site_axes * self.num_sites
        result = np.zeros(shape)

        for key, coeff in self.coefficients.items():
            if self.form == CORRELATION:
                idx = tuple(s - 1 for s in key)
            else:
                settings, outs = key
                idx = tuple(i
                        for s, x in zip(settings, outs)
                        for i in (s - 1, self.outcomes.index(x)))
            result[idx] += coeff

        return result

    def scaled(self, factor):
        return BellFunctional(
                name=self.name, form=self.form, num_sites=self.num_sites,
                num_settings=self.num_settings, outcomes=self.outcomes,
                coefficients={
                    key: factor * coeff
                    for key, coeff in self.coefficients.items()})

    def __repr__(self):
        return "BellFunctional(%s, %s, N=%d, S=%d, %d terms)" % (
                self.name, self.form, self.num_sites, self.num_settings,
                len(self.coefficients))

# }}}


# {{{ expression collection

_SITE_SETTING_RE = re.compile(r"^X(\d+)_(\d+)$")


def observable_variable(site, setting):
    """Return the :mod:`pymbolic` variable standing for setting *setting*
    of site *site*.
    """
    return var(f"X{site}_{setting}")


class CorrelationTermCollector(Mapper):
    """Expand a polynomial in the variables ``X<site>_<setting>`` into a
    :class:`dict` mapping monomials to coefficients. A monomial is a sorted
    tuple of ``(site, setting)`` pairs.
    """

    def map_constant(self, expr):
        if expr == 0:
            return {}
        return {(): expr}

    def map_variable(self, expr):
        match = _SITE_SETTING_RE.match(expr.name)
        if match is None:
            raise ValidationError(
                    f"unknown variable '{expr.name}' in functional, "
                    "expected X<site>_<setting>")
        return {((int(match.group(1)), int(match.group(2))),): 1}

    def map_sum(self, expr):
        result = {}
        for child in expr.children:
            for monomial, coeff in self.rec(child).items():
                result[monomial] = result.get(monomial, 0) + coeff
        return result

    @staticmethod
    def _multiply(left, right):
        result = {}
        for lmono, lcoeff in left.items():
            for rmono, rcoeff in right.items():
                lsites = {site for site, _ in lmono}
                for site, _ in rmono:
                    if site in lsites:
                        raise ValidationError(
                                f"site {site} appears twice in one term")
                monomial = tuple(sorted(lmono + rmono))
                result[monomial] = (
                        result.get(monomial, 0) + lcoeff * rcoeff)
        return result

    def map_product(self, expr):
        result = {(): 1}
        for child in expr.children:
            result = self._multiply(result, self.rec(child))
        return result

    def map_quotient(self, expr):
        if not is_constant(expr.denominator):
            raise ValidationError("functional divides by a non-constant")
        return {monomial: coeff / expr.denominator
                for monomial, coeff in self.rec(expr.numerator).items()}

    def map_power(self, expr):
        exponent = expr.exponent
        if not (is_constant(exponent) and int(exponent) == exponent
                and exponent >= 0):
            raise ValidationError(
                    f"unsupported exponent {exponent} in functional")
        result = {(): 1}
        base = self.rec(expr.base)
        for _ in range(int(exponent)):
            result = self._multiply(result, base)
        return result


def collect_correlation_terms(expr):
    if isinstance(expr, str):
        expr = parse(expr)
    return CorrelationTermCollector()(expr)


def _terms_to_expression(terms):
    return flattened_sum([
        coeff * flattened_product([
            observable_variable(site, setting) for site, setting in monomial])
        for monomial, coeff in sorted(terms.items())
        if coeff != 0])


def functional_from_expression(expr, num_sites, num_settings=None,
        name="expression"):
    """Return a correlation-form :class:`BellFunctional` from a polynomial
    *expr* (a string or :mod:`pymbolic` expression) in which every term
    contains exactly one variable ``X<site>_<setting>`` for every site.
    """
    terms = collect_correlation_terms(expr)

    if num_settings is None:
        num_settings = max(
                (s for monomial in terms for _, s in monomial), default=1)

    coefficients = {}
    for monomial, coeff in terms.items():
        if coeff == 0:
            continue
        sites = [site for site, _ in monomial]
        if sites != list(range(1, num_sites + 1)):
            raise ValidationError(
                    "term %s does not contain every site 1..%d exactly once"
                    % (" * ".join("X%d_%d" % ms for ms in monomial) or "1",
                        num_sites))
        coefficients[tuple(s for _, s in monomial)] = float(coeff)

    return BellFunctional(name=name, form=CORRELATION, num_sites=num_sites,
            num_settings=num_settings, coefficients=coefficients)


def functional_to_expression(functional):
    """Return a :mod:`pymbolic` expression equivalent to the correlation-form
    *functional*.
    """
    if functional.form != CORRELATION:
        raise ValidationError("only correlation-form functionals have an "
                "expression form")

    return _terms_to_expression({
        tuple(enumerate(settings, 1)): coeff
        for settings, coeff in functional.coefficients.items()})


def functional_from_coefficients(form, num_sites, num_settings, terms,
        outcomes=(1.0, -1.0), name="coefficients"):
    """Return a :class:`BellFunctional` from an iterable *terms* of
    ``(settings, coefficient)`` pairs (correlation form) or
    ``(settings, outcomes, coefficient)`` triples (probability form).
    """
    coefficients = {}
    for term in terms:
        if form == CORRELATION:
            settings, coeff = term
            key = tuple(settings)
        else:
            settings, outs, coeff = term
            key = (tuple(settings), tuple(outs))
        coefficients[key] = coefficients.get(key, 0.0) + coeff

    return BellFunctional(name=name, form=form, num_sites=num_sites,
            num_settings=num_settings, coefficients=coefficients,
            outcomes=outcomes)

# }}}


# {{{ standard functionals

def chsh():
    """Return the CHSH functional ``E11 + E12 + E21 - E22``."""
    return BellFunctional(name="chsh", form=CORRELATION, num_sites=2,
            num_settings=2, coefficients={
                (1, 1): 1.0, (1, 2): 1.0, (2, 1): 1.0, (2, 2): -1.0})


def ch():
    """Return the Clauser-Horne functional shifted by 1/2,

    .. math::

        P(++|11) + P(++|12) + P(++|21) - P(++|22) - P_A(+|1) - P_B(+|1)
        + \\frac{1}{2},

    written with the marginals and the constant expanded into joint
    probabilities of the setting pair (1, 1). Its classical bound is 1/2.
    """
    return BellFunctional(name="ch", form=PROBABILITY, num_sites=2,
            num_settings=2, outcomes=(1.0, -1.0), coefficients={
                ((1, 1), (1, 1)): -0.5,
                ((1, 1), (1, -1)): -0.5,
                ((1, 1), (-1, 1)): -0.5,
                ((1, 1), (-1, -1)): 0.5,
                ((1, 2), (1, 1)): 1.0,
                ((2, 1), (1, 1)): 1.0,
                ((2, 2), (1, 1)): -1.0,
                })


def mermin_klyshko_expression(num_sites):
    """Return the Mermin-Klyshko polynomial on *num_sites* sites as a
    :mod:`pymbolic` expression in the variables ``X<site>_<setting>``.
    """
    b = observable_variable(1, 1)
    bp = observable_variable(1, 2)

    for n in range(2, num_sites + 1):
        a = observable_variable(n, 1)
        ap = observable_variable(n, 2)
        b, bp = (
                0.5 * b * (a + ap) + 0.5 * bp * (a - ap),
                0.5 * bp * (ap + a) + 0.5 * b * (ap - a))

        # flat sum of monomials
        b = _terms_to_expression(collect_correlation_terms(b))
        bp = _terms_to_expression(collect_correlation_terms(bp))

    return b


def mermin_klyshko(num_sites):
    """Return the Mermin-Klyshko functional on *num_sites* sites. Its
    classical bound is 1 and its maximal value on the GHZ state is
    ``2^((N-1)/2)``.
    """
    if num_sites < 2:
        raise ValidationError(
                f"Mermin-Klyshko functional needs at least two sites, "
                f"got {num_sites}")
    if num_sites > MAX_MERMIN_KLYSHKO_SITES:
        raise StrategySpaceError(
                f"Mermin-Klyshko functional on {num_sites} sites exceeds "
                f"{MAX_MERMIN_KLYSHKO_SITES}")

    return functional_from_expression(
            mermin_klyshko_expression(num_sites),
            num_sites=num_sites, num_settings=2, name=f"mk{num_sites}")


_FUNCTIONAL_PRESET_RE = re.compile(r"^mk(\d+)$")


def functional_preset(name):
    """Return the named functional: ``chsh``, ``ch`` or ``mk<N>``."""
    if name == "chsh":
        return chsh()
    elif name == "ch":
        return ch()

    match = _FUNCTIONAL_PRESET_RE.match(name)
    if match is not None:
        return mermin_klyshko(int(match.group(1)))

    raise ValidationError(f"unknown functional preset '{name}'")

# }}}


# {{{ settings

def dichotomic_phase_observable(phi):
    """Return ``cos(phi) sigma_x + sin(phi) sigma_y``."""
    return np.cos(phi) * SIGMA_X + np.sin(phi) * SIGMA_Y


def chsh_optimal_settings():
    """Return qubit settings reaching ``|CHSH| = 2 sqrt(2)`` on the
    singlet.
    """
    return [
            [SIGMA_Z, SIGMA_X],
            [(SIGMA_Z + SIGMA_X) / np.sqrt(2), (SIGMA_Z - SIGMA_X) / np.sqrt(2)],
            ]


def mermin_klyshko_ghz_settings(num_sites):
    """Return qubit settings on which :func:`mermin_klyshko` reaches
    ``2^((N-1)/2)`` on the GHZ state. Relies on
    ``<A(phi_1) (x) ... (x) A(phi_N)> = cos(phi_1 + ... + phi_N)`` for
    :func:`dichotomic_phase_observable`.
    """
    offset = np.pi * (num_sites - 1) / 4
    settings = [[
        dichotomic_phase_observable(offset),
        dichotomic_phase_observable(offset - np.pi / 2)]]
    for _ in range(2, num_sites + 1):
        settings.append([
            dichotomic_phase_observable(0),
            dichotomic_phase_observable(-np.pi / 2)])
    return settings


def random_dichotomic_settings(num_sites, num_settings, local_dim, rng):
    return [[random_dichotomic(local_dim, rng)
            for _ in range(num_settings)]
            for _ in range(num_sites)]


def _settings_observables(functional, settings, local_dim=None):
    observables = getattr(settings, "observables", settings)
    observables = [
            [as_observable(obs, name=f"setting {n + 1}.{s + 1}")
                for s, obs in enumerate(site_observables)]
            for n, site_observables in enumerate(observables)]

    if len(observables) != functional.num_sites:
        raise ValidationError(
                f"{functional.name} needs {functional.num_sites} sites of "
                f"settings, got {len(observables)}")

    for n, site_observables in enumerate(observables, 1):
        if len(site_observables) != functional.num_settings:
            raise ValidationError(
                    f"{functional.name} needs {functional.num_settings} "
                    f"settings at site {n}, got {len(site_observables)}")
        for s, obs in enumerate(site_observables, 1):
            if local_dim is not None and obs.dim != local_dim:
                raise ValidationError(
                        f"setting {n}.{s} has dimension {obs.dim}, "
                        f"expected {local_dim}")
            if functional.form == CORRELATION and not obs.is_dichotomic():
                raise ValidationError(
                        f"setting {n}.{s} is not dichotomic: spectrum "
                        "must lie in {-1, +1} for a correlation functional")
            if (functional.form == PROBABILITY
                    and not obs.spectrum_within(functional.outcomes)):
                raise ValidationError(
                        f"setting {n}.{s} has eigenvalues outside the "
                        f"outcomes {functional.outcomes} of {functional.name}")

    return observables

# }}}


# {{{ classical bound

def _site_responses(functional):
    """Return the per-site response tensor of shape
    ``(num_strategies,) + site_axes``.
    """
    S = functional.num_settings
    K = len(functional.outcomes)
    strategies = np.array(
            list(generate_nonnegative_integer_tuples_below(K, S)), dtype=int)

    if functional.form == CORRELATION:
        return np.array(functional.outcomes)[strategies]
    else:
        return np.eye(K)[strategies]


def _strategy_values(coefficients, responses, first_chunk):
    naxes = responses.ndim - 1
    site_axes = list(range(1, naxes + 1))

    values = np.tensordot(first_chunk, coefficients,
            axes=(site_axes, list(range(naxes))))
    for _ in range(1, coefficients.ndim // naxes):
        values = np.tensordot(values, responses, axes=(site_axes, site_axes))

    return values


def classical_bound(functional, threads=1, max_strategies=MAX_STRATEGIES):
    """Return the maximum of ``|f|`` over all deterministic local strategies,
    each of which assigns one outcome to every (site, setting) pair.

    :raises StrategySpaceError: if the number of strategies exceeds
        *max_strategies*.
    """
    responses = _site_responses(functional)
    per_site = responses.shape[0]
    total = per_site ** functional.num_sites
    if total > max_strategies:
        raise StrategySpaceError(
                f"{functional.name}: {total} deterministic strategies "
                f"exceed cap of {max_strategies}")

    coefficients = functional.coefficient_tensor()
    if not np.any(coefficients):
        return 0.0

    rest = total // per_site
    chunk = max(1, min(per_site, CHUNK_ELEMENTS // max(rest, 1)))
    chunks = [responses[i:i + chunk] for i in range(0, per_site, chunk)]

    def chunk_max(first_chunk):
        return float(np.max(np.abs(
            _strategy_values(coefficients, responses, first_chunk))))

    with ProcessLogger(logger,
            "enumerating %d strategies of %s" % (total, functional.name)):
        if threads is None or threads <= 1 or len(chunks) < 2:
            maxima = [chunk_max(c) for c in chunks]
        else:
            with ThreadPoolExecutor(max_workers=threads) as executor:
                maxima = list(executor.map(chunk_max, chunks))

    return max(maxima)

# }}}


# {{{ quantum value

def _site_operator_stack(functional, site_observables):
    if functional.form == CORRELATION:
        return np.array([obs.matrix for obs in site_observables])
    else:
        return np.array([
            [obs.projector_or_zero(x) for x in functional.outcomes]
            for obs in site_observables])


def quantum_value(functional, rho, settings):
    """Return the value of *functional* on the state *rho* measured with
    *settings*, a list (one entry per site) of lists (one entry per setting)
    of observables, or a :class:`lqhv.model.Scenario`.

    :raises ValidationError: if a correlation functional is evaluated on
        settings that are not dichotomic, or a probability functional on
        settings with eigenvalues outside its outcome alphabet.
    """
    observables = _settings_observables(functional, settings,
            local_dim=rho.local_dim)
    n = rho.num_sites
    if n != functional.num_sites:
        raise ValidationError(
                f"{functional.name} acts on {functional.num_sites} sites, "
                f"state has {n}")

    naxes = len(functional.site_axes)
    first_free = 2 * n

    args = [site_tensor(rho), list(range(2 * n))]
    output = []
    for m, site_observables in enumerate(observables):
        labels = list(range(first_free, first_free + naxes))
        first_free += naxes
        args.extend([
            _site_operator_stack(functional, site_observables),
            labels + [n + m, m]])
        output.extend(labels)
    args.append(output)

    expectations = np.einsum(*args).real
    return float(np.sum(functional.coefficient_tensor() * expectations))

# }}}


# {{{ violation ratio

class ViolationResult(Record):
    """
    .. attribute:: functional_name
    .. attribute:: classical_bound
    .. attribute:: quantum_value

        Signed.

    .. attribute:: ratio

        ``|quantum_value| / classical_bound``

    .. attribute:: combined_bound
    .. attribute:: settings

        A list of lists of Hermitian matrices.

    .. attribute:: trace

        Objective values, starting with the initial settings, one per
        optimizer iteration. Empty if no optimizer ran.
    """


def _check_ratio(functional, rho, ratio):
    bound, _ = combined_bound(
            functional.num_sites, max(rho.local_dim, 2),
            functional.num_settings)
    if ratio > bound + RATIO_SLACK:
        raise BoundViolationError(
                "%s: violation ratio %.12g exceeds combined bound %.12g"
                % (functional.name, ratio, bound))
    return bound


def _make_result(functional, rho, classical, value, observables, trace):
    ratio = abs(value) / classical
    bound = _check_ratio(functional, rho, ratio)

    return ViolationResult(
            functional_name=functional.name,
            classical_bound=classical,
            quantum_value=value,
            ratio=ratio,
            combined_bound=bound,
            settings=[[np.array(obs.matrix) for obs in site_observables]
                for site_observables in observables],
            trace=trace)


def violation_ratio(functional, rho, settings, threads=1):
    """Return a :class:`ViolationResult` for *functional* on *rho* with
    *settings*.

    :raises DegenerateFunctionalError: if the classical bound vanishes.
    :raises BoundViolationError: if the ratio exceeds the combined bound.
    """
    classical = classical_bound(functional, threads=threads)
    if classical <= 0:
        raise DegenerateFunctionalError(
                f"{functional.name} has classical bound zero")

    observables = _settings_observables(functional, settings,
            local_dim=rho.local_dim)
    value = quantum_value(functional, rho, observables)

    return _make_result(functional, rho, classical, value, observables, [])


class SandwichCheck(Record):
    """
    .. attribute:: ratio
    .. attribute:: tv_norm
    .. attribute:: formula_bound

        :func:`lqhv.bounds.lqhv_norm_bound` for the scenario size.

    .. attribute:: ok
    """


def sandwich_check(functional, rho, scenario, nu=None, threads=1):
    """Check ``ratio <= tv_norm(nu) <= lqhv_norm_bound`` for *functional*
    evaluated on *rho* with the observables of *scenario*, using the signed
    distribution *nu* (built if not given).
    """
    from lqhv.model import build_scenario_distribution

    if nu is None:
        nu = build_scenario_distribution(rho, scenario, threads=threads)

    result = violation_ratio(functional, rho, scenario, threads=threads)
    formula = lqhv_norm_bound(scenario.num_sites, max(scenario.local_dim, 2),
            scenario.num_settings)

    return SandwichCheck(
            ratio=result.ratio,
            tv_norm=nu.tv_norm,
            formula_bound=formula,
            ok=(result.ratio <= nu.tv_norm + RATIO_SLACK
                and nu.tv_norm <= formula + 1e-9))

# }}}


# {{{ see-saw

def _dichotomic_sign(operator):
    eigenvalues, eigenvectors = hermitian_eig(hermitize(operator))
    signs = np.where(eigenvalues >= -SIGN_ZERO_TOL, 1.0, -1.0)
    return (eigenvectors * signs) @ eigenvectors.conj().T


def _effective_operators(functional, rho, matrices, site):
    """Return, for every setting *s* of *site*, the operator *E* with
    ``f = sum_s tr[X_site^(s) E_s]`` at fixed observables elsewhere.
    """
    coefficients = functional.coefficient_tensor()
    others = [m for m in range(functional.num_sites) if m != site - 1]

    result = []
    for s in range(functional.num_settings):
        rest = 0
        for settings in np.ndindex(*coefficients.shape):
            coeff = coefficients[settings]
            if settings[site - 1] != s or coeff == 0:
                continue
            rest = rest + coeff * tensor_product(
                    [matrices[m][settings[m]] for m in others])

        if np.isscalar(rest):
            rest = np.zeros((rho.local_dim ** len(others),) * 2)
        result.append(conditional_site_operator(rho, site, rest))

    return result


def seesaw_optimize(functional, rho, settings, max_iters=50, tol=1e-10,
        threads=1):
    """Maximize the quantum value of the correlation-form *functional* on
    *rho* by coordinate ascent, starting from *settings*. Each iteration
    sweeps over all sites, replacing every observable of the site by the
    sign of its effective operator (with ``sgn(0) = +1``). Stops after
    *max_iters* iterations or when an iteration improves the value by less
    than *tol*.

    :returns: a :class:`ViolationResult` at the best settings found, whose
        trace records the value before the first and after every iteration.
    """
    if functional.form != CORRELATION:
        raise ValidationError("see-saw optimization needs a "
                "correlation-form functional")
    if max_iters < 0:
        raise ValidationError(f"max_iters must be nonnegative, got {max_iters}")

    classical = classical_bound(functional, threads=threads)
    if classical <= 0:
        raise DegenerateFunctionalError(
                f"{functional.name} has classical bound zero")

    observables = _settings_observables(functional, settings,
            local_dim=rho.local_dim)
    matrices = [[np.array(obs.matrix) for obs in site_observables]
            for site_observables in observables]

    value = quantum_value(functional, rho, matrices)
    trace = [value]

    with ProcessLogger(logger, "see-saw on %s" % functional.name):
        for iteration in range(max_iters):
            for site in range(1, functional.num_sites + 1):
                matrices[site - 1] = [
                        _dichotomic_sign(effective)
                        for effective in _effective_operators(
                            functional, rho, matrices, site)]

            new_value = quantum_value(functional, rho, matrices)
            trace.append(new_value)
            logger.debug("see-saw iteration %d: %.15g", iteration, new_value)

            improvement = new_value - value
            value = new_value
            if improvement < tol:
                break

    observables = [[as_observable(mat) for mat in site_matrices]
            for site_matrices in matrices]
    return _make_result(functional, rho, classical, value, observables, trace)

# }}}

# vim: foldmethod=marker
