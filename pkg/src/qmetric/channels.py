"""Quantum channels in Kraus form."""

from dataclasses import dataclass

import numpy as np

from .errors import BadShape, DimMismatch, InvalidChannel
from .states import DensityMatrix, as_matrix, make_density

COMPLETENESS_ATOL = 1e-10
OUTPUT_TRACE_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPT map rho -> sum_j K_j rho K_j^H, each K_j of shape (out_dim, in_dim)."""

    kraus: tuple

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    def __call__(self, rho):
        return apply_channel(self, rho)

    def __repr__(self):
        return f"KrausChannel(in_dim={self.in_dim}, out_dim={self.out_dim}, kraus_count={len(self.kraus)})"


def completeness_residual(kraus) -> float:
    """Frobenius norm of sum_j K_j^H K_j - I."""
    n = kraus[0].shape[1]
    total = sum(k.conj().T @ k for k in kraus)
    return float(np.linalg.norm(total - np.eye(n)))


def make_channel(kraus, atol: float = COMPLETENESS_ATOL) -> KrausChannel:
    """Validate a list of Kraus operators.

    Raises:
        BadShape: empty list, non-2D or inconsistently shaped operators.
        InvalidChannel: completeness residual above ``atol``.
    """
    ops = [np.array(k, dtype=complex) for k in kraus]
    if not ops:
        raise BadShape("a channel needs at least one Kraus operator")
    shape = ops[0].shape
    if len(shape) != 2 or any(k.shape != shape for k in ops):
        raise BadShape(f"Kraus operators must share one 2D shape, got {[k.shape for k in ops]}")
    if not all(np.all(np.isfinite(k)) for k in ops):
        raise BadShape("Kraus operators have non-finite entries")
    res = completeness_residual(ops)
    if res > atol:
        raise InvalidChannel(res)
    for k in ops:
        k.setflags(write=False)
    return KrausChannel(tuple(ops))


def apply_channel(phi: KrausChannel, rho) -> DensityMatrix:
    """sum_j K_j rho K_j^H, revalidated with trace tolerance 1e-9."""
    m = as_matrix(rho)
    if m.shape[0] != phi.in_dim:
        raise DimMismatch(f"channel expects dim {phi.in_dim}, state has dim {m.shape[0]}")
    out = sum(k @ m @ k.conj().T for k in phi.kraus)
    return make_density(out, trace_atol=OUTPUT_TRACE_ATOL)


def adjoint_apply(phi: KrausChannel, x) -> np.ndarray:
    """Dual map sum_j K_j^H x K_j, so that Tr[phi(rho) x] = Tr[rho phi*(x)]."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (phi.out_dim, phi.out_dim):
        raise DimMismatch(f"adjoint expects a {phi.out_dim}x{phi.out_dim} operator, got {x.shape}")
    return sum(k.conj().T @ x @ k for k in phi.kraus)


def haar_isometry(rows, cols, rng):
    """Haar-random isometry (rows x cols, rows >= cols) via QR with phase fix."""
    z = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_channel(in_dim: int, out_dim: int | None = None, kraus_count: int = 1, seed=None) -> KrausChannel:
    """Random channel from a Haar isometry of C^in into C^(kraus_count * out).

    The isometry is cut into ``kraus_count`` blocks of ``out_dim`` rows,
    each a Kraus operator. ``kraus_count == 1`` with equal dims is a
    Haar-random unitary channel.
    """
    out_dim = in_dim if out_dim is None else out_dim
    if kraus_count < 1 or in_dim < 1 or out_dim < 1 or kraus_count * out_dim < in_dim:
        raise BadShape(f"need kraus_count * out_dim >= in_dim, got {kraus_count} * {out_dim} < {in_dim}")
    rng = np.random.default_rng(seed)
    v = haar_isometry(kraus_count * out_dim, in_dim, rng)
    return make_channel([v[j * out_dim:(j + 1) * out_dim] for j in range(kraus_count)])


def identity_channel(dim: int) -> KrausChannel:
    return make_channel([np.eye(dim)])


def example2_channel() -> KrausChannel:
    """The 4-level channel with Kraus operators A = |1><0| + |3><2| and B = |1><1| + |3><3|."""
    a = np.zeros((4, 4), dtype=complex)
    a[1, 0] = a[3, 2] = 1
    b = np.zeros((4, 4), dtype=complex)
    b[1, 1] = b[3, 3] = 1
    return make_channel([a, b])


def example2_states():
    """The two block-diagonal mixed states the example channel is applied to."""
    rho = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
    sigma = np.diag([0.0, 0.0, 0.5, 0.5]).astype(complex)
    return make_density(rho), make_density(sigma)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    return haar_isometry(dim, dim, np.random.default_rng(seed))
