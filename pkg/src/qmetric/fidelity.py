"""Uhlmann-Jozsa fidelity, super-fidelity and the metrics built from it.

Functions take :class:`~qmetric.states.DensityMatrix` objects or raw arrays
(which are validated first).
"""

import numpy as np

from . import matops
from .errors import DimMismatch, NotPSD, NotQubit
from .states import BlochState, as_matrix, bloch_to_density, check_same_dim


# 1 - Tr(rho^2) on exactly pure states comes out as a few eps; under the
# square root that is ~1e-8, so values below this floor count as zero.
MIXEDNESS_FLOOR = 64 * np.finfo(float).eps


def _clip01(x):
    return min(1.0, max(0.0, x))


def _floored(x):
    x = _clip01(x)
    return 0.0 if x < MIXEDNESS_FLOOR else x


def mixedness(m) -> float:
    """1 - Tr(m^2) clamped to [0, 1], with rounding noise on pure states mapped to 0."""
    return _floored(1.0 - float(np.vdot(m, m).real))


def _infidelity(g):
    """1 - G clamped to [0, 1]; rounding noise at G = 1 maps to exactly 0."""
    return _floored(1.0 - g)


def _pair(rho, sigma):
    a, b = as_matrix(rho), as_matrix(sigma)
    check_same_dim(a, b)
    return a, b


def uhlmann_fidelity(rho, sigma) -> float:
    """F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    Computed as (sum_i sqrt(mu_i))^2 over the eigenvalues mu_i of
    sqrt(rho) sigma sqrt(rho). Eigenvalues in [-1e-10, 0) and those at
    rounding-noise level are clipped to 0.
    """
    a, b = _pair(rho, sigma)
    root = matops.psd_sqrt(a)
    inner = root @ b @ root
    mu = matops.eigvalsh_desc(0.5 * (inner + inner.conj().T))
    if mu[-1] < -matops.PSD_ATOL:
        raise NotPSD(f"sqrt(rho) sigma sqrt(rho) has eigenvalue {mu[-1]:.3e}")
    return _clip01(float(np.sum(np.sqrt(matops.clip_spectrum(mu)))) ** 2)


def qubit_fidelity_bloch(u: BlochState, v: BlochState) -> float:
    """Qubit fidelity from Bloch vectors: (1 + u.v + sqrt(1-|u|^2) sqrt(1-|v|^2)) / 2."""
    if u.dim != 2 or v.dim != 2:
        raise NotQubit(f"qubit formula needs dim 2, got {u.dim} and {v.dim}")
    ru = _floored(1.0 - float(u.coeffs @ u.coeffs))
    rv = _floored(1.0 - float(v.coeffs @ v.coeffs))
    return _clip01(0.5 * (1.0 + float(u.coeffs @ v.coeffs) + np.sqrt(ru * rv)))


def _super_fidelity_matrices(a, b):
    overlap = float(np.vdot(a, b).real)  # Tr(a b) for Hermitian a
    return overlap + np.sqrt(mixedness(a) * mixedness(b))


def super_fidelity(rho, sigma) -> float:
    """G(rho, sigma) = Tr(rho sigma) + sqrt((1 - Tr rho^2)(1 - Tr sigma^2)).

    Each ``1 - Tr(.)^2`` is clamped to [0, 1] before the product so
    numerically pure states never yield NaN, and values below
    ``MIXEDNESS_FLOOR`` are taken as exactly 0.
    """
    return _super_fidelity_matrices(*_pair(rho, sigma))


def super_fidelity_bloch(u: BlochState, v: BlochState) -> float:
    """Super-fidelity from Bloch vectors.

    G = [1 + (N-1) u.v + (N-1) sqrt((1-|u|^2)(1-|v|^2))] / N. Both vectors
    are converted to density matrices first so that points outside the
    state set raise :class:`~qmetric.errors.NotPositive`.
    """
    if u.dim != v.dim:
        raise DimMismatch(f"Bloch states have dims {u.dim} and {v.dim}")
    bloch_to_density(u)
    bloch_to_density(v)
    n = u.dim
    radicand = _floored(1.0 - float(u.coeffs @ u.coeffs)) * _floored(1.0 - float(v.coeffs @ v.coeffs))
    return (1.0 + (n - 1) * float(u.coeffs @ v.coeffs) + (n - 1) * np.sqrt(radicand)) / n


def metric_a(rho, sigma) -> float:
    """A = arccos(sqrt(G))."""
    return float(np.arccos(np.sqrt(1.0 - _infidelity(super_fidelity(rho, sigma)))))


def metric_b(rho, sigma) -> float:
    """B = sqrt(2 - 2 sqrt(G))."""
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * np.sqrt(1.0 - _infidelity(super_fidelity(rho, sigma))))))


def metric_c(rho, sigma) -> float:
    """C = sqrt(1 - G)."""
    return float(np.sqrt(_infidelity(super_fidelity(rho, sigma))))
