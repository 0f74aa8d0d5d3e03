"""Dense Hermitian linear algebra for multi-qudit systems"""

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
from functools import reduce
from itertools import permutations
from math import factorial

import numpy as np
import numpy.linalg as la
from pytools import Record, memoize_method

logger = logging.getLogger(__name__)


__doc__ = """
Site ordering convention
^^^^^^^^^^^^^^^^^^^^^^^^

Site 1 is the leftmost (slowest-varying) tensor factor. Every operator on
``N`` qudits that is assembled from per-site pieces goes through
:func:`tensor_embed` or :func:`tensor_product`, so this convention lives
in exactly one place.

Errors
^^^^^^

.. autoexception:: ValidationError
.. autoexception:: UnsupportedSizeError

Matrices and states
^^^^^^^^^^^^^^^^^^^

.. autofunction:: as_hermitian
.. autofunction:: hermitize
.. autoclass:: SpectralDecomposition
.. autoclass:: PosNegParts
.. autoclass:: Observable
.. autoclass:: DensityMatrix

Operations
^^^^^^^^^^

.. autofunction:: hermitian_eig
.. autofunction:: spectral_measure
.. autofunction:: pos_neg_parts
.. autofunction:: operator_sqrt
.. autofunction:: tensor_embed
.. autofunction:: tensor_product
.. autofunction:: site_tensor
.. autofunction:: partial_trace
.. autofunction:: conditional_site_operator
.. autofunction:: product_expectation
.. autofunction:: sym_product

State constructors
^^^^^^^^^^^^^^^^^^

.. autofunction:: make_state
.. autofunction:: random_unitary
.. autofunction:: random_hermitian
.. autofunction:: random_dichotomic
"""


HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-10
DEFAULT_CLUSTER_TOL = 1e-9
ZERO_EIGENVALUE_TOL = 1e-12

MAX_TOTAL_DIM = 4096
MAX_SYM_FACTORS = 6


class ValidationError(ValueError):
    pass


class UnsupportedSizeError(ValueError):
    pass


def _frozen(ary):
    ary = np.array(ary, dtype=np.complex128)
    ary.setflags(write=False)
    return ary


IDENTITY_2 = _frozen(np.eye(2))
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])

PAULI = {
        "id": IDENTITY_2,
        "sx": SIGMA_X,
        "sy": SIGMA_Y,
        "sz": SIGMA_Z,
        }


# {{{ validation

def hermitize(mat):
    """Return ``(mat + mat^dagger) / 2``."""
    return 0.5 * (mat + mat.conj().T)


def as_hermitian(matrix, name="matrix", tol=HERMITIAN_TOL):
    """Return *matrix* as a complex :class:`numpy.ndarray` after checking that
    it is square and Hermitian within *tol* (absolute, entrywise).

    :raises ValidationError: naming the (1-based) entry of largest asymmetry.
    """
    try:
        mat = np.asarray(matrix, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} is not a numeric matrix: {exc}")

    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise ValidationError(
                f"{name} must be a nonempty square matrix, got shape {mat.shape}")

    if not np.all(np.isfinite(mat)):
        raise ValidationError(f"{name} has non-finite entries")

    asymmetry = np.abs(mat - mat.conj().T)
    i, j = np.unravel_index(np.argmax(asymmetry), asymmetry.shape)
    if asymmetry[i, j] > tol:
        raise ValidationError(
                "%s is not Hermitian: max asymmetry %.3e at entry (%d, %d)"
                % (name, asymmetry[i, j], i + 1, j + 1))

    return mat


def _site_count(total_dim, local_dim):
    num_sites = 0
    dim = 1
    while dim < total_dim:
        dim *= local_dim
        num_sites += 1

    if dim != total_dim:
        raise ValidationError(
                f"dimension {total_dim} is not a power of local dimension "
                f"{local_dim}")

    return num_sites


def _check_total_dim(local_dim, num_sites):
    if local_dim < 1 or num_sites < 1:
        raise ValidationError(
                f"invalid system size: local_dim={local_dim}, "
                f"num_sites={num_sites}")

    if local_dim ** num_sites > MAX_TOTAL_DIM:
        raise UnsupportedSizeError(
                f"total dimension {local_dim}^{num_sites} exceeds "
                f"{MAX_TOTAL_DIM}")

# }}}


# {{{ spectral data

class SpectralDecomposition(Record):
    """
    .. attribute:: eigenvalues

        A tuple of distinct real eigenvalues in descending order.

    .. attribute:: projectors

        A tuple of orthogonal projectors, one per entry of
        :attr:`eigenvalues`.

    .. attribute:: eigenvectors

        A tuple of matrices whose orthonormal columns span the range of the
        corresponding projector.

    .. attribute:: cluster_tol

    .. automethod:: index_of
    .. automethod:: projector
    .. automethod:: reconstruct
    """

    def __init__(self, eigenvalues, projectors, eigenvectors, cluster_tol):
        super().__init__(
                eigenvalues=tuple(eigenvalues),
                projectors=tuple(projectors),
                eigenvectors=tuple(eigenvectors),
                cluster_tol=cluster_tol)

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def is_degenerate(self):
        return any(vecs.shape[1] > 1 for vecs in self.eigenvectors)

    def find(self, value):
        """Return the position of the eigenvalue *value*, or *None*."""
        scale = max(1.0, max(abs(ev) for ev in self.eigenvalues))
        for i, ev in enumerate(self.eigenvalues):
            if abs(ev - value) <= self.cluster_tol * scale:
                return i
        return None

    def index_of(self, value):
        """Return the position of the eigenvalue *value*.

        :raises ValidationError: if *value* is not in the spectrum.
        """
        i = self.find(value)
        if i is not None:
            return i

        raise ValidationError(
                "outcome %r not in spectrum %s"
                % (value, ", ".join("%.12g" % ev for ev in self.eigenvalues)))

    def projector(self, value):
        return self.projectors[self.index_of(value)]

    def reconstruct(self):
        return sum(ev * proj
                for ev, proj in zip(self.eigenvalues, self.projectors))


class PosNegParts(Record):
    """
    .. attribute:: positive_part
    .. attribute:: negative_part
    .. attribute:: absolute_value

        Equal to ``positive_part + negative_part``.
    """

    def __init__(self, positive_part, negative_part):
        super().__init__(
                positive_part=positive_part,
                negative_part=negative_part,
                absolute_value=positive_part + negative_part)

    @property
    def is_positive(self):
        return not np.any(self.negative_part)

# }}}


# {{{ decompositions

def hermitian_eig(matrix):
    """Return ``(eigenvalues, eigenvectors)`` of the Hermitian *matrix*,
    eigenvalues in descending order, eigenvectors as columns.

    The input is symmetrized before calling :func:`numpy.linalg.eigh`.
    """
    mat = as_hermitian(matrix)
    eigenvalues, eigenvectors = la.eigh(hermitize(mat))
    return eigenvalues[::-1], eigenvectors[:, ::-1]


def spectral_measure(matrix, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Return the :class:`SpectralDecomposition` of *matrix*. Eigenvalues
    within ``cluster_tol * max(1, ||H||)`` of the largest eigenvalue of their
    group are merged into a single projector.
    """
    if cluster_tol <= 0:
        raise ValidationError(f"cluster_tol must be positive, got {cluster_tol}")

    eigenvalues, eigenvectors = hermitian_eig(matrix)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))

    groups = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[groups[-1][0]] - eigenvalues[i] <= cluster_tol * scale:
            groups[-1].append(i)
        else:
            groups.append([i])

    values = []
    projectors = []
    vectors = []
    for group in groups:
        vecs = eigenvectors[:, group]
        values.append(float(np.mean(eigenvalues[group])))
        projectors.append(hermitize(vecs @ vecs.conj().T))
        vectors.append(vecs)

    return SpectralDecomposition(values, projectors, vectors, cluster_tol)


def pos_neg_parts(matrix):
    """Return the :class:`PosNegParts` of the Hermitian *matrix*. Eigenvalues
    with ``|lambda| <= 1e-12 * max(1, ||Z||)`` contribute to neither part.
    """
    eigenvalues, eigenvectors = hermitian_eig(matrix)
    threshold = ZERO_EIGENVALUE_TOL * max(1.0, float(np.max(np.abs(eigenvalues))))

    pos = np.where(eigenvalues > threshold, eigenvalues, 0)
    neg = np.where(eigenvalues < -threshold, -eigenvalues, 0)

    def assemble(weights):
        if not np.any(weights):
            return np.zeros_like(eigenvectors)
        return hermitize((eigenvectors * weights) @ eigenvectors.conj().T)

    return PosNegParts(assemble(pos), assemble(neg))


def operator_sqrt(matrix):
    """Return the square root of the positive semidefinite *matrix*.
    Eigenvalues with ``lambda <= 1e-12 * max(1, ||Z||)`` are treated as zero.
    """
    eigenvalues, eigenvectors = hermitian_eig(matrix)
    threshold = ZERO_EIGENVALUE_TOL * max(1.0, float(np.max(np.abs(eigenvalues))))
    roots = np.sqrt(np.where(eigenvalues > threshold, eigenvalues, 0))
    return hermitize((eigenvectors * roots) @ eigenvectors.conj().T)

# }}}


# {{{ observables

class Observable:
    """A Hermitian matrix with a cached :class:`SpectralDecomposition`.

    .. attribute:: matrix
    .. attribute:: dim
    .. attribute:: cluster_tol

    .. automethod:: spectral
    .. automethod:: projector
    """

    def __init__(self, matrix, name="observable",
            cluster_tol=DEFAULT_CLUSTER_TOL):
        if isinstance(matrix, Observable):
            matrix = matrix.matrix

        self.matrix = _frozen(as_hermitian(matrix, name=name))
        self.name = name
        self.cluster_tol = cluster_tol

    @property
    def dim(self):
        return self.matrix.shape[0]

    @memoize_method
    def spectral(self):
        return spectral_measure(self.matrix, cluster_tol=self.cluster_tol)

    @property
    def eigenvalues(self):
        return self.spectral().eigenvalues

    def projector(self, value):
        return self.spectral().projector(value)

    def projector_or_zero(self, value):
        """Like :meth:`projector`, but return the zero matrix if *value* is
        not an eigenvalue.
        """
        try:
            return self.projector(value)
        except ValidationError:
            return np.zeros_like(self.matrix)

    def spectrum_within(self, values):
        """Return whether every eigenvalue matches one of *values*."""
        spectral = self.spectral()
        matched = {spectral.find(x) for x in values}
        return all(i in matched for i in range(len(spectral)))

    def is_dichotomic(self, tol=1e-10):
        eigenvalues, _ = hermitian_eig(self.matrix)
        return bool(np.all(np.minimum(
            np.abs(eigenvalues - 1), np.abs(eigenvalues + 1)) <= tol))

    def __repr__(self):
        return "Observable(%s, dim=%d)" % (self.name, self.dim)


def as_observable(obj, name="observable", cluster_tol=DEFAULT_CLUSTER_TOL):
    if isinstance(obj, Observable):
        return obj
    return Observable(obj, name=name, cluster_tol=cluster_tol)

# }}}


# {{{ states

class DensityMatrix:
    """A state of *num_sites* qudits of dimension *local_dim*.

    .. attribute:: entries
    .. attribute:: num_sites
    .. attribute:: local_dim
    .. attribute:: dim

    .. automethod:: expectation
    """

    def __init__(self, entries, num_sites=None, local_dim=2, name="state"):
        mat = as_hermitian(entries, name=name)

        if num_sites is None:
            num_sites = _site_count(mat.shape[0], local_dim)
        _check_total_dim(local_dim, num_sites)

        if mat.shape[0] != local_dim ** num_sites:
            raise ValidationError(
                    f"{name} has dimension {mat.shape[0]}, expected "
                    f"{local_dim}^{num_sites} = {local_dim ** num_sites}")

        trace = np.trace(mat)
        if abs(trace - 1) > TRACE_TOL:
            raise ValidationError(
                    f"{name} does not have unit trace: tr = {trace.real:.12g}")

        min_eigenvalue = la.eigvalsh(hermitize(mat))[0]
        if min_eigenvalue < PSD_FLOOR:
            raise ValidationError(
                    f"{name} is not positive semidefinite: minimum eigenvalue "
                    f"{min_eigenvalue:.3e}")

        self.entries = _frozen(mat)
        self.num_sites = num_sites
        self.local_dim = local_dim

    @property
    def dim(self):
        return self.entries.shape[0]

    def expectation(self, operator):
        """Return ``Re tr[rho * operator]``."""
        return float(np.trace(self.entries @ operator).real)

    def __repr__(self):
        return "DensityMatrix(num_sites=%d, local_dim=%d)" % (
                self.num_sites, self.local_dim)

# }}}


# {{{ tensor structure

def tensor_embed(matrix, site, num_sites, local_dim):
    """Return ``I^(site-1) (x) matrix (x) I^(num_sites-site)``."""
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.shape != (local_dim, local_dim):
        raise ValidationError(
                f"operator of shape {mat.shape} cannot act on a site of "
                f"dimension {local_dim}")
    if not 1 <= site <= num_sites:
        raise ValidationError(f"site {site} outside 1..{num_sites}")
    _check_total_dim(local_dim, num_sites)

    return reduce(np.kron, [
        np.eye(local_dim ** (site - 1)),
        mat,
        np.eye(local_dim ** (num_sites - site))])


def tensor_product(operators):
    """Return the tensor product of the per-site *operators*, site 1
    leftmost.
    """
    operators = [np.asarray(op, dtype=np.complex128) for op in operators]
    if not operators:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(np.kron, operators)


def site_tensor(rho):
    """Return the entries of *rho* as an array with ``2N`` axes of length
    *d*: the row index of site *n* on axis ``n - 1``, its column index on
    axis ``N + n - 1``.
    """
    d = rho.local_dim
    return rho.entries.reshape((d,) * (2 * rho.num_sites))


def partial_trace(rho, keep_sites):
    """Return the reduced :class:`DensityMatrix` on *keep_sites* (1-based),
    listed in increasing site order.
    """
    keep = sorted(set(keep_sites))
    if not keep:
        raise ValidationError("partial trace needs at least one site to keep")
    if keep[0] < 1 or keep[-1] > rho.num_sites:
        raise ValidationError(
                f"sites {keep} outside 1..{rho.num_sites}")

    n = rho.num_sites
    d = rho.local_dim
    traced = [m for m in range(1, n + 1) if m not in keep]

    axes = ([m - 1 for m in keep] + [m - 1 for m in traced]
            + [n + m - 1 for m in keep] + [n + m - 1 for m in traced])
    kept_dim = d ** len(keep)
    traced_dim = d ** len(traced)

    blocks = (site_tensor(rho).transpose(axes)
            .reshape(kept_dim, traced_dim, kept_dim, traced_dim))
    reduced = np.einsum("aibi->ab", blocks)

    return DensityMatrix(hermitize(reduced),
            num_sites=len(keep), local_dim=d, name="reduced state")


def conditional_site_operator(rho, site, rest_operator=None):
    """Return the ``d x d`` operator *sigma* satisfying

    .. math::

        \\operatorname{tr}[\\rho (A \\otimes T)] = \\operatorname{tr}[A \\sigma]

    for every *A* acting on *site* and *T* = *rest_operator* acting on the
    remaining sites in increasing site order. With *rest_operator* omitted,
    *sigma* is the reduced state of *site*.
    """
    n = rho.num_sites
    d = rho.local_dim
    rest = [m for m in range(n) if m != site - 1]
    rest_dim = d ** len(rest)

    axes = [site - 1] + rest + [n + site - 1] + [n + m for m in rest]
    blocks = site_tensor(rho).transpose(axes).reshape(d, rest_dim, d, rest_dim)

    if rest_operator is None:
        return np.einsum("aibi->ab", blocks)

    rest_operator = np.asarray(rest_operator)
    if rest_operator.shape != (rest_dim, rest_dim):
        raise ValidationError(
                f"operator of shape {rest_operator.shape} does not act on "
                f"{len(rest)} sites of dimension {d}")

    return np.einsum("aibj,ji->ab", blocks, rest_operator)


def product_expectation(rho, operators):
    """Return ``Re tr[rho (operators[0] (x) ... (x) operators[N-1])]``
    without forming the tensor product.
    """
    n = rho.num_sites
    if len(operators) != n:
        raise ValidationError(
                f"expected {n} site operators, got {len(operators)}")

    args = [site_tensor(rho), list(range(2 * n))]
    for m, op in enumerate(operators):
        args.extend([np.asarray(op), [n + m, m]])
    args.append([])

    return float(np.einsum(*args).real)


def sym_product(factors):
    """Return the permutation average
    ``(1/m!) sum_sigma Z_sigma(1) ... Z_sigma(m)`` of the *m* *factors*.
    """
    factors = [np.asarray(f, dtype=np.complex128) for f in factors]
    m = len(factors)
    if m == 0:
        raise ValidationError("symmetrized product needs at least one factor")
    if m > MAX_SYM_FACTORS:
        raise UnsupportedSizeError(
                f"symmetrized product of {m} factors needs {factorial(m)} "
                f"orderings; at most {MAX_SYM_FACTORS} factors are supported")

    shape = factors[0].shape
    if any(f.shape != shape or f.ndim != 2 or shape[0] != shape[1]
            for f in factors):
        raise ValidationError(
                "symmetrized product factors must be square matrices of "
                "equal dimension")

    total = sum(reduce(np.matmul, [factors[i] for i in order])
            for order in permutations(range(m)))
    return total / factorial(m)

# }}}


# {{{ state constructors

def _ket_to_state(ket, num_sites, local_dim, name):
    ket = np.asarray(ket, dtype=np.complex128).reshape(-1)
    norm = la.norm(ket)
    if norm == 0:
        raise ValidationError(f"{name}: zero state vector")
    ket = ket / norm
    return DensityMatrix(np.outer(ket, ket.conj()),
            num_sites=num_sites, local_dim=local_dim, name=name)


def make_state(kind, **kwargs):
    """Construct a :class:`DensityMatrix` from a descriptor.

    :arg kind: one of

        * ``"ghz"`` with *num_sites*, *local_dim*: the state
          ``sum_k |k...k> / sqrt(d)``;
        * ``"singlet"``: ``(|01> - |10>) / sqrt(2)``;
        * ``"pure"`` with *vector* (and optionally *local_dim*,
          *num_sites*);
        * ``"explicit"`` with *matrix* (and optionally *local_dim*,
          *num_sites*);
        * ``"random_mixed"`` with *num_sites*, *local_dim*, *seed* and an
          optional *rank*.
    """
    def pop(name, default=None, required=True):
        if name in kwargs:
            return kwargs.pop(name)
        if required and default is None:
            raise ValidationError(f"state '{kind}' requires '{name}'")
        return default

    if kind == "ghz":
        num_sites = pop("num_sites")
        local_dim = pop("local_dim", 2)
        _check_total_dim(local_dim, num_sites)
        dim = local_dim ** num_sites
        ket = np.zeros(dim, dtype=np.complex128)
        stride = sum(local_dim ** m for m in range(num_sites))
        ket[np.arange(local_dim) * stride] = 1
        result = _ket_to_state(ket, num_sites, local_dim, "ghz state")

    elif kind == "singlet":
        result = _ket_to_state([0, 1, -1, 0], 2, 2, "singlet")

    elif kind == "pure":
        vector = np.asarray(pop("vector"), dtype=np.complex128).reshape(-1)
        local_dim = pop("local_dim", 2)
        num_sites = pop("num_sites", required=False)
        if num_sites is None:
            num_sites = _site_count(vector.size, local_dim)
        result = _ket_to_state(vector, num_sites, local_dim, "pure state")

    elif kind == "explicit":
        matrix = pop("matrix")
        local_dim = pop("local_dim", 2)
        num_sites = pop("num_sites", required=False)
        result = DensityMatrix(matrix, num_sites=num_sites,
                local_dim=local_dim, name="explicit state")

    elif kind == "random_mixed":
        num_sites = pop("num_sites")
        local_dim = pop("local_dim", 2)
        seed = pop("seed", 0)
        _check_total_dim(local_dim, num_sites)
        dim = local_dim ** num_sites
        rank = pop("rank", dim)

        rng = np.random.default_rng(seed)
        ginibre = (rng.standard_normal((dim, rank))
                + 1j * rng.standard_normal((dim, rank)))
        mat = ginibre @ ginibre.conj().T
        result = DensityMatrix(hermitize(mat / np.trace(mat).real),
                num_sites=num_sites, local_dim=local_dim,
                name="random mixed state")

    else:
        raise ValidationError(f"unknown state kind '{kind}'")

    if kwargs:
        raise ValidationError(
                "unexpected arguments for state '%s': %s"
                % (kind, ", ".join(sorted(kwargs))))

    return result


def random_unitary(dim, rng):
    """Return a Haar-random unitary of size *dim*."""
    z = (rng.standard_normal((dim, dim))
            + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = la.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_hermitian(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitize(z)


def random_dichotomic(dim, rng):
    """Return a random observable with spectrum in ``{-1, +1}`` having both
    eigenvalues present whenever *dim* > 1.
    """
    signs = rng.choice([-1.0, 1.0], size=dim)
    if dim > 1:
        signs[0] = 1.0
        signs[-1] = -1.0
    u = random_unitary(dim, rng)
    return hermitize((u * signs) @ u.conj().T)

# }}}

# vim: foldmethod=marker
