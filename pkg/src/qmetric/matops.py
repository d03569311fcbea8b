"""Dense Hermitian linear algebra with fixed numerical tolerances.

Everything downstream (states, fidelities, metrics, channels) funnels its
matrix work through these few functions so that the Hermiticity check,
symmetrization and negative-eigenvalue clipping happen in one place.
"""

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, NonHermitian, NotPSD

HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-10
TIE_ATOL = 1e-12
MAX_DIM = 64


class EigenSystem(NamedTuple):
    """Eigenvalues sorted descending, eigenvector ``k`` in column ``k``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_square(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {arr.shape[0]} exceeds the dense cap {MAX_DIM}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def hermiticity_residual(m) -> float:
    arr = np.asarray(m)
    return float(np.max(np.abs(arr - arr.conj().T), initial=0.0))


def symmetrize(m, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Return ``(M + M^H)/2`` after checking ``M`` is Hermitian within ``atol``."""
    arr = as_square(m)
    res = hermiticity_residual(arr)
    if res > atol:
        raise NonHermitian(f"max |M - M^H| = {res:.3e} exceeds {atol:g}")
    return 0.5 * (arr + arr.conj().T)


def _tie_key(column):
    nz = np.flatnonzero(np.abs(column) > TIE_ATOL)
    if nz.size == 0:
        return (0.0, 0.0)
    first = column[nz[0]]
    return (float(first.real), float(first.imag))


def hermitian_eig(m) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Columns belonging to numerically degenerate eigenvalues are ordered by
    the real, then imaginary part of their first nonzero entry, so the
    result is reproducible for a fixed input.

    Raises:
        NonHermitian: if ``max|M - M^H| > 1e-10``.
        ConvergenceFailure: if LAPACK does not converge.
    """
    h = symmetrize(m)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    w = w[::-1].copy()
    v = v[:, ::-1].copy()

    scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    start = 0
    n = w.size
    while start < n:
        stop = start + 1
        while stop < n and w[start] - w[stop] <= TIE_ATOL * scale:
            stop += 1
        if stop - start > 1:
            block = list(range(start, stop))
            block.sort(key=lambda k: _tie_key(v[:, k]))
            v[:, start:stop] = v[:, block]
        start = stop
    return EigenSystem(w, v)


def eigvalsh_desc(m) -> np.ndarray:
    """Eigenvalues only, sorted descending."""
    h = symmetrize(m)
    try:
        return np.linalg.eigvalsh(h)[::-1]
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def noise_floor(w) -> float:
    """Magnitude below which eigenvalues of a matrix with spectrum ``w`` are rounding noise."""
    return 16 * w.size * np.finfo(float).eps * max(1.0, float(np.max(np.abs(w), initial=0.0)))


def clip_spectrum(w) -> np.ndarray:
    """Zero out negative and noise-level eigenvalues.

    Square roots amplify noise: a 1e-17 eigenvalue becomes 3e-9.
    """
    return np.where(w > noise_floor(w), w, 0.0)


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` and positive ones at rounding-noise
    level are treated as zero; anything below -1e-10 raises :class:`NotPSD`.
    """
    w, v = hermitian_eig(m)
    if w.size and w[-1] < -PSD_ATOL:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} below -{PSD_ATOL:g}")
    root = np.sqrt(clip_spectrum(w))
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh_desc(m))))


def spectral_norm(m) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix."""
    return float(np.max(np.abs(eigvalsh_desc(m)), initial=0.0))


def frobenius(m) -> float:
    return float(np.linalg.norm(m))
