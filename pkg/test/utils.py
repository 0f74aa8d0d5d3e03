"""Various usefulness"""

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

from itertools import product

import numpy as np

from lqhv.bell import CORRELATION
from lqhv.model import Scenario
from lqhv.qlinalg import make_state, random_dichotomic, random_hermitian


# {{{ random scenarios

def random_scenario(rng, num_sites, local_dim, num_settings, pivot_site=1,
        dichotomic=False):
    """Return a :class:`lqhv.model.Scenario` with random observables.
    Random Hermitian matrices have nondegenerate spectra almost surely.
    """
    make = random_dichotomic if dichotomic else random_hermitian
    return Scenario([
        [make(local_dim, rng) for _ in range(num_settings)]
        for _ in range(num_sites)], pivot_site=pivot_site)


def random_state(rng, num_sites, local_dim):
    return make_state("random_mixed", num_sites=num_sites,
            local_dim=local_dim, seed=int(rng.integers(2**32)))


def random_psd(rng, dim):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return z @ z.conj().T

# }}}


# {{{ brute-force classical bound

def brute_force_classical_bound(functional, reverse=False):
    """Enumerate deterministic strategies one at a time, in the opposite
    order of :func:`lqhv.bell.classical_bound` if *reverse* is set.
    """
    site_strategies = list(product(functional.outcomes,
        repeat=functional.num_settings))
    if reverse:
        site_strategies = site_strategies[::-1]

    best = 0.0
    for assignment in product(site_strategies, repeat=functional.num_sites):
        value = 0.0
        for key, coeff in functional.coefficients.items():
            if functional.form == CORRELATION:
                value += coeff * np.prod([
                    assignment[n][s - 1] for n, s in enumerate(key)])
            else:
                settings, outcomes = key
                if all(assignment[n][s - 1] == x
                        for n, (s, x) in enumerate(zip(settings, outcomes))):
                    value += coeff
        best = max(best, abs(value))

    return best

# }}}

# vim: foldmethod=marker
