"""Quantum states as density matrices or SU(N) Bloch vectors."""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import matops
from .errors import (BadRank, BadShape, DimensionTooSmall, DimMismatch,
                     InvalidState, NotPositive, ZeroVector)

TRACE_ATOL = 1e-10
BLOCH_NORM_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated N x N density matrix.

    Build instances with :func:`make_density` (or the other constructors in
    this module); the dataclass itself trusts its input.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class BlochState:
    """Bloch vector ``u`` of length N^2 - 1 for an N-level system."""

    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.coeffs, dtype=float)
        if u.shape != (self.dim ** 2 - 1,):
            raise BadShape(f"dim {self.dim} needs {self.dim ** 2 - 1} coefficients, got shape {u.shape}")
        norm = float(np.linalg.norm(u))
        if norm > 1.0 + BLOCH_NORM_SLACK:
            raise BadShape(f"Bloch vector norm {norm:.15g} exceeds 1")
        object.__setattr__(self, "coeffs", u)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


class GeneratorBasis(NamedTuple):
    dim: int
    generators: np.ndarray  # shape (N^2 - 1, N, N)


def _freeze(matrix):
    matrix.setflags(write=False)
    return DensityMatrix(matrix)


def make_density(matrix, trace_atol: float = TRACE_ATOL) -> DensityMatrix:
    """Validate ``matrix`` as a density matrix.

    The input is symmetrized and, when its trace is within ``trace_atol`` of
    one, renormalized to unit trace.

    Raises:
        InvalidState: with ``reason`` NonHermitian, TraceNotOne or NotPSD
            and the offending residual.
    """
    try:
        arr = matops.as_square(matrix)
    except ValueError as exc:
        raise InvalidState("NotSquare", message=str(exc)) from exc
    herm = matops.hermiticity_residual(arr)
    if herm > matops.HERMITIAN_ATOL:
        raise InvalidState("NonHermitian", herm)
    arr = 0.5 * (arr + arr.conj().T)
    tr = float(np.trace(arr).real)
    if abs(tr - 1.0) > trace_atol:
        raise InvalidState("TraceNotOne", abs(tr - 1.0))
    arr = arr / tr
    lo = float(matops.eigvalsh_desc(arr)[-1])
    if lo < -matops.PSD_ATOL:
        raise InvalidState("NotPSD", -lo)
    return _freeze(arr)


def as_matrix(state) -> np.ndarray:
    """Matrix of a :class:`DensityMatrix`, validating raw arrays on the way."""
    if isinstance(state, DensityMatrix):
        return state.matrix
    return make_density(state).matrix


def check_same_dim(*matrices):
    dims = {m.shape[0] for m in matrices}
    if len(dims) != 1:
        raise DimMismatch(f"states have different dimensions {sorted(dims)}")
    return dims.pop()


@lru_cache(maxsize=None)
def _gell_mann(dim):
    gens = []
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            gens.append(m)
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            gens.append(m)
    for l in range(1, dim):
        diag = np.zeros(dim)
        diag[:l] = 1.0
        diag[l] = -l
        gens.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * diag).astype(complex))
    out = np.array(gens)
    out.setflags(write=False)
    return out


def gell_mann_basis(dim: int) -> GeneratorBasis:
    """Generalized Gell-Mann generators, normalized so Tr(l_j l_k) = 2 delta_jk.

    Ordered as all symmetric generators, then antisymmetric, then diagonal,
    which for ``dim == 2`` gives the Pauli matrices (X, Y, Z).
    """
    if int(dim) != dim or dim < 2:
        raise DimensionTooSmall(f"need dim >= 2, got {dim}")
    return GeneratorBasis(int(dim), _gell_mann(int(dim)))


def _bloch_scale(dim):
    return np.sqrt(dim * (dim - 1) / 2.0)


def bloch_operator(b: BlochState) -> np.ndarray:
    """The Hermitian unit-trace operator (I + sqrt(N(N-1)/2) u.lambda)/N, unchecked."""
    n = b.dim
    gens = gell_mann_basis(n).generators
    op = np.eye(n, dtype=complex) + _bloch_scale(n) * np.tensordot(b.coeffs, gens, axes=1)
    return op / n


def bloch_to_density(b: BlochState) -> DensityMatrix:
    """Density matrix of a Bloch vector.

    Raises:
        NotPositive: if the operator has an eigenvalue below -1e-10, i.e.
            ``u`` lies inside the unit ball but outside the state set.
    """
    op = bloch_operator(b)
    op = 0.5 * (op + op.conj().T)
    lo = float(matops.eigvalsh_desc(op)[-1])
    if lo < -matops.PSD_ATOL:
        raise NotPositive(lo)
    return _freeze(op)


def density_to_bloch(rho) -> BlochState:
    m = as_matrix(rho)
    n = m.shape[0]
    gens = gell_mann_basis(n).generators
    expect = np.einsum("kij,ji->k", gens, m).real
    u = expect / np.sqrt(2.0 * (n - 1) / n)
    norm = np.linalg.norm(u)
    if norm > 1.0:
        # rounding on pure states only
        u = u / norm
    return BlochState(n, u)


def purity(rho) -> float:
    """Tr(rho^2)."""
    m = as_matrix(rho)
    return float(np.sum(np.abs(m) ** 2))


def random_density(dim: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """Random state A A^H / Tr(A A^H) with A a dim x rank complex Ginibre matrix.

    ``rank == dim`` samples the Hilbert-Schmidt measure and ``rank == 1``
    Haar-random pure states. ``seed`` may be an int or a ``numpy`` Generator.
    """
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise BadRank(f"rank must lie in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    a = (rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))) / np.sqrt(2)
    m = a @ a.conj().T
    m = 0.5 * (m + m.conj().T)
    return _freeze(m / np.trace(m).real)


def pure_from_vector(v) -> DensityMatrix:
    """Projector onto the normalized vector ``v``."""
    psi = np.asarray(v, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ZeroVector("cannot build a state from the zero vector")
    psi = psi / norm
    return _freeze(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return _freeze(np.eye(dim, dtype=complex) / dim)
