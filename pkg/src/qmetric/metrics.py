"""Distance measures: trace metric, PG-metric (spectral) and G-metric.

The G-metric is

    D_G(rho, sigma) = max_tau |G(rho, tau) - G(sigma, tau)|

over all density matrices ``tau``. With ``Delta = rho - sigma`` and
``c = sqrt(1 - Tr rho^2) - sqrt(1 - Tr sigma^2)`` the quantity inside the
absolute value is ``Tr(Delta tau) + c sqrt(1 - Tr tau^2)``. The second term
only sees the spectrum ``t`` of ``tau``; for fixed ``t`` the first is
largest (smallest) when ``tau`` shares the eigenbasis of ``Delta`` with
aligned (anti-aligned) ordering. So the maximization over ``tau`` is two
maximizations over the probability simplex, one per sign, handled by
:mod:`qmetric.simplex`.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import matops, simplex
from .errors import ConvergenceFailure
from .fidelity import MIXEDNESS_FLOOR, _infidelity, _super_fidelity_matrices, mixedness, super_fidelity
from .states import DensityMatrix, _freeze, as_matrix, check_same_dim


@dataclass
class OptimizerOptions:
    tolerance: float = 1e-8
    restarts: int = 16
    max_iter: int = 10_000
    seed: int = 0


@dataclass
class MetricReport:
    measure: str
    value: float
    witness: Optional[DensityMatrix] = None
    diagnostics: dict = field(default_factory=lambda: {"restarts": 0, "iterations": 0, "residual": 0.0})

    def __float__(self):
        return self.value


class SpectralSummary(NamedTuple):
    deltas: np.ndarray
    e_forward: float
    e_backward: float


def _pair(rho, sigma):
    a, b = as_matrix(rho), as_matrix(sigma)
    check_same_dim(a, b)
    return a, b


def spectral_summary(rho, sigma) -> SpectralSummary:
    """Descending eigenvalues of rho - sigma with E(rho, sigma) and E(sigma, rho)."""
    a, b = _pair(rho, sigma)
    d = matops.eigvalsh_desc(a - b)
    return SpectralSummary(d, float(d[0]), float(-d[-1]))


def trace_metric(rho, sigma) -> float:
    a, b = _pair(rho, sigma)
    return 0.5 * matops.trace_norm(a - b)


def e_value(rho, sigma) -> float:
    """Largest eigenvalue of rho - sigma, i.e. max over pure tau of Tr[tau (rho - sigma)]."""
    return spectral_summary(rho, sigma).e_forward


def g_difference(rho, sigma, tau) -> float:
    """|G(rho, tau) - G(sigma, tau)|."""
    return abs(super_fidelity(rho, tau) - super_fidelity(sigma, tau))


def pg_metric(rho, sigma) -> MetricReport:
    """PG-metric: the maximization restricted to pure tau, equal to the spectral norm of rho - sigma.

    The witness is the eigenprojector of the eigenvalue of largest modulus
    (the top one on ties).
    """
    a, b = _pair(rho, sigma)
    w, v = matops.hermitian_eig(a - b)
    k = 0 if w[0] >= -w[-1] else w.size - 1
    value = matops.spectral_norm(a - b)
    witness = _freeze(np.outer(v[:, k], v[:, k].conj()))
    check = abs(_super_fidelity_matrices(a, witness.matrix) - _super_fidelity_matrices(b, witness.matrix))
    return MetricReport("Dpg", value, witness,
                        {"restarts": 0, "iterations": 0, "residual": abs(check - value)})


def _g_coefficients(a, b):
    w, v = matops.hermitian_eig(a - b)
    c = np.sqrt(mixedness(a)) - np.sqrt(mixedness(b))
    return w, v, float(c)


def g_metric(rho, sigma, opts: Optional[OptimizerOptions] = None) -> MetricReport:
    """G-metric with a witness state attaining it.

    Both simplex branches are solved by multi-start projected gradient
    ascent; the larger wins and ties go to the ``Tr(Delta tau)``-maximizing
    branch.

    Raises:
        ConvergenceFailure: if the winning run's final gain exceeds
            ``opts.tolerance``.
    """
    opts = opts or OptimizerOptions()
    a, b = _pair(rho, sigma)
    n = a.shape[0]
    deltas, vecs, c = _g_coefficients(a, b)
    rng = np.random.default_rng(opts.seed)

    # forward branch rows first, so ties resolve to it
    starts, coef_a, coef_b = [], [], []
    for sign in (1.0, -1.0):
        pts = simplex.starting_points(n, opts.restarts, rng, sign * deltas, sign * c)
        starts.append(pts)
        coef_a.append(np.tile(sign * deltas, (len(pts), 1)))
        coef_b.append(np.full(len(pts), sign * c))
    best = simplex.maximize(np.vstack(coef_a), np.concatenate(coef_b), np.vstack(starts),
                            max_iter=opts.max_iter)
    if best.residual > opts.tolerance:
        raise ConvergenceFailure(
            f"G-metric residual {best.residual:.3e} above tolerance {opts.tolerance:g} "
            f"after {best.iterations} iterations")

    tau = (vecs * best.t) @ vecs.conj().T
    tau = _freeze(0.5 * (tau + tau.conj().T))
    value = max(best.value, 0.0)
    check = abs(_super_fidelity_matrices(a, tau.matrix) - _super_fidelity_matrices(b, tau.matrix))
    return MetricReport("Dg", value, tau, {
        "restarts": best.restarts,
        "iterations": best.iterations,
        "residual": best.residual + abs(check - value),
        "branch": "forward" if best.row < len(starts[0]) else "backward",
    })


def _random_mixed_batch(n, ranks, rng):
    count = len(ranks)
    g = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    g = g * (np.arange(n)[None, None, :] < ranks[:, None, None])
    m = g @ np.conj(np.swapaxes(g, 1, 2))
    return m / np.einsum("kii->k", m).real[:, None, None]


def _g_differences(a, b, taus):
    def g(x):
        overlap = np.einsum("ij,kji->k", x, taus).real
        rx = mixedness(x)
        rt = np.clip(1.0 - np.einsum("kij,kij->k", taus, taus.conj()).real, 0.0, 1.0)
        rt[rt < MIXEDNESS_FLOOR] = 0.0
        return overlap + np.sqrt(rx * rt)

    return np.abs(g(a) - g(b))


def g_metric_oracle(rho, sigma, samples: int = 10_000, seed=0, chunk: int = 4096) -> float:
    """Brute-force lower bound on the G-metric.

    Evaluates |G(rho, tau) - G(sigma, tau)| on ``samples`` random states
    whose ranks cycle through 1..N, on every eigenprojector of rho - sigma
    and on the maximally mixed state, and returns the largest value.
    Shares no code with the simplex optimizer.
    """
    a, b = _pair(rho, sigma)
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    _, v = np.linalg.eigh(a - b)
    fixed = np.concatenate([
        np.einsum("ik,jk->kij", v, v.conj()),
        (np.eye(n, dtype=complex) / n)[None],
    ])
    best = float(np.max(_g_differences(a, b, fixed)))
    ranks = 1 + np.arange(samples) % n
    for lo in range(0, samples, chunk):
        taus = _random_mixed_batch(n, ranks[lo:lo + chunk], rng)
        best = max(best, float(np.max(_g_differences(a, b, taus))))
    return best


def g_metric_bound(rho, sigma) -> float:
    """Upper bound sqrt(2(N-1)/N) * sqrt(1 - G(rho, sigma)) on the G-metric."""
    a, b = _pair(rho, sigma)
    n = a.shape[0]
    return float(np.sqrt(2.0 * (n - 1) / n) * np.sqrt(_infidelity(super_fidelity(a, b))))
