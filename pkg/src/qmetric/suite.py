"""Registry of numerical property checks and the driver that runs them.

Every property is a function of a :class:`PropertyContext` that records
named checks into a :class:`Checks` object. A check's *slack* is the
margin by which an inequality holds (``rhs - lhs``) or ``-|a - b|`` for an
equality; it passes when ``slack >= -tolerance``. A property's verdict
carries the worst check, measured relative to its own tolerance.

Hard properties gate the exit status of a run. ``report`` properties are
numerical claims without proofs; their margins are recorded but never fail
a run.
"""

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import channels, fidelity, matops, metrics, states
from .cases import example1_states, example2_channel, example2_states
from .errors import BadConfig, NotPositive
from .io import channel_to_json, encode_matrix, state_to_json
from .metrics import OptimizerOptions

DEFAULT_SEED = 0x5EED

PASS, FAIL, REPORT_ONLY = "Pass", "Fail", "ReportOnly"


@dataclass
class RunConfig:
    """Settings for a verification run.

    ``dims`` and ``samples_per_property`` default to ``None``, meaning each
    property uses its own default budget; setting them overrides every
    property (qubit-only properties keep dim 2).
    """

    seed: int = DEFAULT_SEED
    dims: Optional[list] = None
    samples_per_property: Optional[int] = None
    optimizer: OptimizerOptions = field(default_factory=OptimizerOptions)
    output_path: str = "qmetric_report.json"
    only: Optional[list] = None

    def validate(self):
        if self.dims is not None:
            if not self.dims or any(int(d) != d or d < 2 for d in self.dims):
                raise BadConfig(f"dims must be integers >= 2, got {self.dims}")
        if self.samples_per_property is not None and self.samples_per_property < 1:
            raise BadConfig(f"samples_per_property must be >= 1, got {self.samples_per_property}")
        if self.optimizer.restarts < 0 or self.optimizer.max_iter < 1 or self.optimizer.tolerance <= 0:
            raise BadConfig(f"invalid optimizer options {self.optimizer}")
        if self.only is not None:
            unknown = sorted(set(self.only) - set(REGISTRY))
            if unknown:
                raise BadConfig(f"unknown property ids {unknown}")
        return self

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        opt = data.pop("optimizer", None) or {}
        unknown = set(data) - {"seed", "dims", "samples_per_property", "output_path", "only"}
        if unknown:
            raise BadConfig(f"unknown config keys {sorted(unknown)}")
        try:
            cfg = cls(optimizer=OptimizerOptions(**opt), **data)
        except TypeError as exc:
            raise BadConfig(str(exc)) from exc
        return cfg.validate()

    def to_dict(self):
        return asdict(self)


@dataclass
class PropertyVerdict:
    property_id: str
    samples: int
    worst_margin: float
    tolerance: float
    status: str
    counterexample: Optional[dict] = None
    checks: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self):
        return asdict(self)


class Checks:
    """Worst-case slack per named check, with the payload that produced it."""

    def __init__(self):
        self._checks = {}
        self.samples = 0
        self.extra = {}

    def record(self, name, slack, tol, payload: Optional[Callable[[], dict]] = None):
        slack = float(slack)
        entry = self._checks.get(name)
        if entry is None:
            entry = self._checks[name] = {"tolerance": tol, "worst": math.inf, "count": 0, "payload": None}
        entry["count"] += 1
        if slack < entry["worst"] or math.isnan(slack):
            entry["worst"] = slack
            if payload is not None:
                entry["payload"] = payload
        return slack

    def worst(self):
        """(name, entry) of the check with the most negative slack relative to its tolerance."""
        def ratio(item):
            e = item[1]
            if math.isnan(e["worst"]):
                return -math.inf
            if e["tolerance"] > 0:
                return e["worst"] / e["tolerance"]
            return -math.inf if e["worst"] < 0 else (0.0 if e["worst"] == 0 else math.inf)
        return min(self._checks.items(), key=ratio)

    def failed(self):
        return [n for n, e in self._checks.items()
                if math.isnan(e["worst"]) or e["worst"] < -e["tolerance"]]

    def summary(self):
        out = {n: {"worst_slack": _num(e["worst"]), "tolerance": e["tolerance"], "count": e["count"]}
               for n, e in self._checks.items()}
        out.update({k: v.item() if isinstance(v, np.generic) else v for k, v in self.extra.items()})
        return out


def _num(x):
    return None if x is None or (isinstance(x, float) and not math.isfinite(x)) else float(x)


@dataclass
class PropertyContext:
    rng: np.random.Generator
    samples: int
    dims: list
    opts: OptimizerOptions
    master_seed: int = DEFAULT_SEED


@dataclass
class Property:
    property_id: str
    func: Callable
    hard: bool
    samples: int
    dims: tuple
    qubit_only: bool = False


REGISTRY = {}


def register(property_id, *, samples, dims=(2, 3, 4), hard=True, qubit_only=False):
    def deco(func):
        if property_id in REGISTRY:
            raise ValueError(f"duplicate property id {property_id}")
        REGISTRY[property_id] = Property(property_id, func, hard, samples, tuple(dims), qubit_only)
        return func
    return deco


def sub_seed(master_seed, property_id):
    digest = hashlib.sha256(f"{int(master_seed)}:{property_id}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


# -- sampling helpers --------------------------------------------------------

def _rand_state(n, rng, rank=None):
    return states.random_density(n, int(rng.integers(1, n + 1)) if rank is None else rank, rng)


def _rand_hermitian(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def _rand_channel(n, rng, out_dim=None):
    out_dim = n if out_dim is None else out_dim
    lo = max(1, -(-n // out_dim))
    k = int(rng.integers(lo, max(lo, 4) + 1))
    return channels.random_channel(n, out_dim, k, rng)


def _payload(**items):
    def build():
        out = {}
        for key, val in items.items():
            if isinstance(val, states.DensityMatrix):
                out[key] = state_to_json(val)
            elif isinstance(val, channels.KrausChannel):
                out[key] = channel_to_json(val)
            elif isinstance(val, (list, tuple)) and val and isinstance(val[0], states.DensityMatrix):
                out[key] = [state_to_json(v) for v in val]
            elif isinstance(val, np.ndarray) and np.iscomplexobj(val):
                out[key] = encode_matrix(val)
            elif isinstance(val, np.ndarray):
                out[key] = val.tolist()
            else:
                out[key] = val
        return out
    return build


def _per_dim(ctx):
    for n in ctx.dims:
        for _ in range(ctx.samples):
            yield n


# -- matops ------------------------------------------------------------------

@register("matops.eig.reconstruction", samples=100, dims=(2, 3, 4, 5, 6))
def _eig_reconstruction(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        m = _rand_hermitian(n, ctx.rng)
        w, v = matops.hermitian_eig(m)
        scale = max(1.0, matops.frobenius(m))
        c.record("reconstruction", -matops.frobenius((v * w) @ v.conj().T - m) / scale, 1e-9)
        c.record("orthonormal", -matops.frobenius(v.conj().T @ v - np.eye(n)), 1e-10)
        c.record("descending", float(np.min(w[:-1] - w[1:], initial=0.0)), 0.0)


@register("matops.psd_sqrt.square", samples=100, dims=(2, 3, 4, 5, 6))
def _psd_sqrt(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        a = ctx.rng.standard_normal((n, n)) + 1j * ctx.rng.standard_normal((n, n))
        a = a[:, : int(ctx.rng.integers(1, n + 1))]
        m = a @ a.conj().T
        s = matops.psd_sqrt(m)
        c.record("square", -matops.frobenius(s @ s - m) / max(1.0, matops.frobenius(m)), 1e-8)
        c.record("psd", float(np.linalg.eigvalsh(s)[0]), 1e-10)


@register("matops.norms.ordering", samples=100, dims=(2, 3, 4, 5, 6))
def _norm_ordering(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        if i % 2:
            v = ctx.rng.standard_normal(n) + 1j * ctx.rng.standard_normal(n)
            m = ctx.rng.standard_normal() * np.outer(v, v.conj())
        else:
            m = _rand_hermitian(n, ctx.rng)
        tn, sn = matops.trace_norm(m), matops.spectral_norm(m)
        scale = max(1.0, tn)
        c.record("trace_ge_spectral", (tn - sn) / scale, 1e-12)
        c.record("spectral_nonneg", sn, 0.0)
        if i % 2:
            c.record("rank1_equal", -abs(tn - sn) / scale, 1e-12)


@register("matops.norms.unitary_invariance", samples=100, dims=(2, 3, 4, 5, 6))
def _norm_unitary(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        m = _rand_hermitian(n, ctx.rng)
        u = channels.haar_isometry(n, n, ctx.rng)
        mu = u @ m @ u.conj().T
        c.record("trace_norm", -abs(matops.trace_norm(m) - matops.trace_norm(mu)), 1e-9)
        c.record("spectral_norm", -abs(matops.spectral_norm(m) - matops.spectral_norm(mu)), 1e-9)


# -- states ------------------------------------------------------------------

@register("states.random_density.valid", samples=1000, dims=(2, 3, 4, 5, 6))
def _random_valid(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        rho = _rand_state(n, ctx.rng)
        m = rho.matrix
        c.record("hermitian", -matops.hermiticity_residual(m), 1e-10)
        c.record("trace", -abs(np.trace(m).real - 1.0), 1e-10)
        c.record("psd", float(np.linalg.eigvalsh(m)[0]), 1e-10, _payload(state=rho))
        states.make_density(m)


@register("states.bloch.roundtrip", samples=200, dims=(2, 3, 4))
def _bloch_roundtrip(ctx, c):
    for n in _per_dim(ctx):
        rho = _rand_state(n, ctx.rng)
        back = states.bloch_to_density(states.density_to_bloch(rho))
        c.record("roundtrip", -matops.frobenius(back.matrix - rho.matrix), 1e-10, _payload(state=rho))


@register("states.purity.pure_iff_max_eigenvalue_one", samples=200, dims=(2, 3, 4))
def _purity_iff(ctx, c):
    for n in _per_dim(ctx):
        rho = _rand_state(n, ctx.rng)
        p = states.purity(rho)
        top = matops.eigvalsh_desc(rho.matrix)[0]
        agree = (abs(p - 1.0) <= 1e-9) == (abs(top - 1.0) <= 1e-9)
        c.record("equivalence", 0.0 if agree else -1.0, 0.0, _payload(state=rho))
        c.record("purity_range", min(p - 1.0 / n, 1.0 - p), 1e-12)


@register("states.bloch.positivity", samples=200, dims=(2, 3))
def _bloch_positivity(ctx, c):
    for _ in range(ctx.samples):
        u = ctx.rng.standard_normal(3)
        u *= ctx.rng.uniform() ** (1 / 3) / np.linalg.norm(u)
        if ctx.rng.uniform() < 0.25:
            u /= np.linalg.norm(u)
        try:
            states.bloch_to_density(states.BlochState(2, u))
            c.record("qubit_ball_is_state_set", 0.0, 0.0)
        except NotPositive:
            c.record("qubit_ball_is_state_set", -1.0, 0.0, _payload(u=u))
    rejected = 0
    for k in range(8):
        u = np.zeros(8)
        u[k] = 1.0
        try:
            states.bloch_to_density(states.BlochState(3, u))
        except NotPositive:
            rejected += 1
    c.extra["qutrit_generator_directions_rejected"] = rejected
    c.record("qutrit_has_unit_vector_outside", 0.0 if rejected else -1.0, 0.0)


# -- fidelity ----------------------------------------------------------------

@register("fidelity.super_fidelity.upper_bounds_uhlmann", samples=500, dims=(2, 3, 4, 5), hard=False)
def _g_ge_f(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        c.record("G_minus_F", fidelity.super_fidelity(r, s) - fidelity.uhlmann_fidelity(r, s), 1e-8,
                 _payload(rho=r, sigma=s))


@register("fidelity.qubit.super_equals_uhlmann", samples=500, qubit_only=True)
def _qubit_g_f(ctx, c):
    for _ in range(ctx.samples):
        r, s = _rand_state(2, ctx.rng), _rand_state(2, ctx.rng)
        c.record("abs_diff", -abs(fidelity.super_fidelity(r, s) - fidelity.uhlmann_fidelity(r, s)), 1e-8,
                 _payload(rho=r, sigma=s))
        bf = fidelity.qubit_fidelity_bloch(states.density_to_bloch(r), states.density_to_bloch(s))
        c.record("bloch_formula", -abs(bf - fidelity.uhlmann_fidelity(r, s)), 1e-8, _payload(rho=r, sigma=s))


def _axioms(c, d, x, y, z, sym_tol, tri_tol, ident_tol=1e-9):
    dxy, dyx = d(x, y), d(y, x)
    dxz, dzy = d(x, z), d(z, y)
    pay = _payload(x=x, y=y, z=z)
    c.record("nonnegative", min(dxy, dyx, dxz, dzy), 0.0, pay)
    c.record("symmetry", -abs(dxy - dyx), sym_tol, pay)
    c.record("identity", -d(x, x), ident_tol, pay)
    c.record("triangle", dxz + dzy - dxy, tri_tol, pay)
    if matops.frobenius(x.matrix - y.matrix) > 1e-6:
        c.record("distinct_positive", 0.0 if dxy > 0 else -1.0, 0.0, pay)


@register("fidelity.C.metric_axioms", samples=500, dims=(2, 3, 4))
def _c_axioms(ctx, c):
    for n in _per_dim(ctx):
        x, y, z = (_rand_state(n, ctx.rng) for _ in range(3))
        _axioms(c, fidelity.metric_c, x, y, z, 1e-9, 1e-9)


@register("fidelity.unitary_invariance", samples=200, dims=(2, 3, 4))
def _fid_unitary(ctx, c):
    for n in _per_dim(ctx):
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        u = channels.haar_isometry(n, n, ctx.rng)
        ru = states.make_density(u @ r.matrix @ u.conj().T)
        su = states.make_density(u @ s.matrix @ u.conj().T)
        pay = _payload(rho=r, sigma=s, unitary=u)
        c.record("F", -abs(fidelity.uhlmann_fidelity(r, s) - fidelity.uhlmann_fidelity(ru, su)), 1e-9, pay)
        c.record("G", -abs(fidelity.super_fidelity(r, s) - fidelity.super_fidelity(ru, su)), 1e-9, pay)


@register("fidelity.F.cpt_expansivity", samples=200, dims=(2, 3, 4))
def _f_expansive(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        phi = _rand_channel(n, ctx.rng)
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        c.record("F_after_minus_before",
                 fidelity.uhlmann_fidelity(phi(r), phi(s)) - fidelity.uhlmann_fidelity(r, s), 1e-8,
                 _payload(channel=phi, rho=r, sigma=s))


# -- metrics -----------------------------------------------------------------

@register("metrics.pg.axioms", samples=300, dims=(2, 3, 4))
def _pg_axioms(ctx, c):
    d = lambda a, b: metrics.pg_metric(a, b).value  # noqa: E731
    for n in _per_dim(ctx):
        x, y, z = (_rand_state(n, ctx.rng) for _ in range(3))
        _axioms(c, d, x, y, z, 1e-9, 1e-8)


@register("metrics.g.axioms", samples=300, dims=(2, 3, 4))
def _g_axioms(ctx, c):
    d = lambda a, b: metrics.g_metric(a, b, ctx.opts).value  # noqa: E731
    for n in _per_dim(ctx):
        x, y, z = (_rand_state(n, ctx.rng) for _ in range(3))
        _axioms(c, d, x, y, z, 2 * ctx.opts.tolerance, 1e-5)


@register("metrics.ordering_chain", samples=300, dims=(2, 3, 4))
def _ordering(ctx, c):
    for n in _per_dim(ctx):
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        g = metrics.g_metric(r, s, ctx.opts).value
        pay = _payload(rho=r, sigma=s)
        c.record("g_ge_pg", g - metrics.pg_metric(r, s).value, 1e-9, pay)
        c.record("g_le_bound", metrics.g_metric_bound(r, s) - g, 1e-9, pay)


def haar_pure_overlaps(delta, samples, rng):
    """Tr[tau delta] for ``samples`` Haar-random pure states tau."""
    n = delta.shape[0]
    psi = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    return np.einsum("ki,ij,kj->k", psi.conj(), delta, psi).real


@register("metrics.pg.spectral_and_sampled", samples=200, dims=(2, 3, 4))
def _pg_spectral(ctx, c):
    for n in _per_dim(ctx):
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        pg = metrics.pg_metric(r, s).value
        delta = r.matrix - s.matrix
        pay = _payload(rho=r, sigma=s)
        c.record("equals_spectral_norm", -abs(pg - matops.spectral_norm(delta)), 0.0, pay)
        sampled = float(np.max(np.abs(haar_pure_overlaps(delta, 10_000, ctx.rng))))
        c.record("sampled_le_pg", pg - sampled, 1e-9, pay)


@register("metrics.pg.sampled_lower_gap", samples=200, dims=(2, 3, 4), hard=False)
def _pg_sampled_gap(ctx, c):
    # A Haar state lands within eps of the top eigenvector with probability
    # ~eps^(N-1), so 10^4 draws cannot reach 1e-2 reliably once N >= 4.
    for n in _per_dim(ctx):
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        pg = metrics.pg_metric(r, s).value
        sampled = float(np.max(np.abs(haar_pure_overlaps(r.matrix - s.matrix, 10_000, ctx.rng))))
        c.record(f"dim{n}", sampled - pg, 1e-2, _payload(rho=r, sigma=s))


@register("metrics.g.qubit_equals_c", samples=200, qubit_only=True)
def _qubit_g_c(ctx, c):
    for _ in range(ctx.samples):
        r, s = _rand_state(2, ctx.rng), _rand_state(2, ctx.rng)
        c.record("abs_diff", -abs(metrics.g_metric(r, s, ctx.opts).value - fidelity.metric_c(r, s)), 1e-6,
                 _payload(rho=r, sigma=s))


@register("metrics.pg.qubit_equals_trace", samples=200, qubit_only=True)
def _qubit_pg_trace(ctx, c):
    for _ in range(ctx.samples):
        r, s = _rand_state(2, ctx.rng), _rand_state(2, ctx.rng)
        c.record("abs_diff", -abs(metrics.pg_metric(r, s).value - metrics.trace_metric(r, s)), 1e-9,
                 _payload(rho=r, sigma=s))


def _mixture(ctx, n):
    k = int(ctx.rng.integers(2, 5))
    p = ctx.rng.dirichlet(np.ones(k))
    rhos = [_rand_state(n, ctx.rng) for _ in range(k)]
    sigmas = [_rand_state(n, ctx.rng) for _ in range(k)]
    mix = lambda xs: states.make_density(sum(w * x.matrix for w, x in zip(p, xs)))  # noqa: E731
    return p, rhos, sigmas, mix(rhos), mix(sigmas)


@register("metrics.pg.joint_convexity", samples=200, dims=(2, 3, 4))
def _pg_joint_convex(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        p, rhos, sigmas, rm, sm = _mixture(ctx, n)
        rhs = sum(w * metrics.pg_metric(a, b).value for w, a, b in zip(p, rhos, sigmas))
        c.record("slack", rhs - metrics.pg_metric(rm, sm).value, 1e-9,
                 _payload(weights=p, rhos=rhos, sigmas=sigmas))


@register("metrics.g.squared_convexity", samples=200, dims=(2, 3, 4), hard=False)
def _g_sq_convex(ctx, c):
    def d2(a, b):
        return metrics.g_metric(a, b, ctx.opts).value ** 2

    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        lam = float(ctx.rng.integers(1, 10)) / 10
        r1, r2, s = (_rand_state(n, ctx.rng) for _ in range(3))
        mixed = states.make_density(lam * r1.matrix + (1 - lam) * r2.matrix)
        c.record("first_argument", lam * d2(r1, s) + (1 - lam) * d2(r2, s) - d2(mixed, s), 1e-4,
                 _payload(weight=lam, rho1=r1, rho2=r2, sigma=s))
        s2 = _rand_state(n, ctx.rng)
        smix = states.make_density(lam * s.matrix + (1 - lam) * s2.matrix)
        c.record("joint", lam * d2(r1, s) + (1 - lam) * d2(r2, s2) - d2(mixed, smix), 1e-4,
                 _payload(weight=lam, rho1=r1, rho2=r2, sigma1=s, sigma2=s2))


@register("metrics.g.joint_convexity", samples=200, dims=(2, 3, 4), hard=False)
def _g_joint(ctx, c):
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        p, rhos, sigmas, rm, sm = _mixture(ctx, n)
        rhs = sum(w * metrics.g_metric(a, b, ctx.opts).value for w, a, b in zip(p, rhos, sigmas))
        c.record("slack", rhs - metrics.g_metric(rm, sm, ctx.opts).value, 1e-9,
                 _payload(weights=p, rhos=rhos, sigmas=sigmas))


@register("metrics.g.upper_bound", samples=500, dims=(2, 3, 4, 5))
def _g_upper_bound(ctx, c):
    for n in _per_dim(ctx):
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        g = metrics.g_metric(r, s, ctx.opts).value
        bound = metrics.g_metric_bound(r, s)
        pay = _payload(rho=r, sigma=s)
        c.record("below_bound", bound - g, 1e-9, pay)
        if n == 2:
            c.record("qubit_equality", -abs(bound - g), 1e-6, pay)


def soundness_pairs(ctx, per_dim):
    pairs = [example1_states(), example2_states()]
    for n in ctx.dims:
        for _ in range(per_dim):
            pairs.append((_rand_state(n, ctx.rng), _rand_state(n, ctx.rng)))
    return pairs


@register("metrics.g.optimizer_soundness", samples=30, dims=(2, 3, 4))
def _soundness(ctx, c):
    for r, s in soundness_pairs(ctx, ctx.samples):
        g = metrics.g_metric(r, s, ctx.opts).value
        oracle = metrics.g_metric_oracle(r, s, 10_000, seed=int(ctx.rng.integers(2 ** 32)))
        c.record("g_ge_oracle", g - oracle, 1e-6, _payload(rho=r, sigma=s))


@register("example1.regression", samples=1, dims=(4,))
def _example1(ctx, c):
    r, s = example1_states()
    g = metrics.g_metric(r, s, ctx.opts).value
    bound = metrics.g_metric_bound(r, s)
    c.record("Dg_half", -abs(g - 0.5), 1e-6)
    c.record("Dpg_half", -abs(metrics.pg_metric(r, s).value - 0.5), 1e-9)
    c.record("F_three_quarters", -abs(fidelity.uhlmann_fidelity(r, s) - 0.75), 1e-9)
    c.record("bound_sqrt_3_8", -abs(bound - math.sqrt(3 / 8)), 1e-12)
    c.record("strict_gap", bound - g - 0.11, 0.0)
    c.extra.update(Dg=g, bound=bound, gap=bound - g)


# -- channels ----------------------------------------------------------------

def channel_draws(rng, samples, dims):
    """(channel, rho, sigma) triples shared by the channel properties."""
    for i in range(samples):
        n = dims[i % len(dims)]
        out = int(rng.choice(dims))
        yield _rand_channel(n, rng, out), _rand_state(n, rng), _rand_state(n, rng)


@register("channels.pg.contractivity", samples=300, dims=(2, 3, 4))
def _pg_contractive(ctx, c):
    violations = 0
    for phi, r, s in channel_draws(ctx.rng, ctx.samples, ctx.dims):
        before = metrics.pg_metric(r, s).value
        after = metrics.pg_metric(phi(r), phi(s)).value
        slack = c.record("slack", before - after, 1e-9, _payload(channel=phi, rho=r, sigma=s))
        violations += slack < -1e-9
    c.extra["violations"] = violations


def _mixed_unitary_channel(n, rng):
    k = int(rng.integers(1, 4))
    p = rng.dirichlet(np.ones(k))
    return channels.make_channel([np.sqrt(pj) * channels.haar_isometry(n, n, rng) for pj in p])


@register("channels.pg.contractivity_unital", samples=300, dims=(2, 3, 4))
def _pg_contractive_unital(ctx, c):
    # unital channels map -|X| I <= X <= |X| I to the same sandwich, so the
    # spectral norm cannot grow; this isolates what the general claim needs
    for i in range(ctx.samples):
        n = ctx.dims[i % len(ctx.dims)]
        phi = _mixed_unitary_channel(n, ctx.rng)
        r, s = _rand_state(n, ctx.rng), _rand_state(n, ctx.rng)
        after = metrics.pg_metric(phi(r), phi(s)).value
        c.record("slack", metrics.pg_metric(r, s).value - after, 1e-9, _payload(channel=phi, rho=r, sigma=s))


@register("channels.F.expansivity", samples=300, dims=(2, 3, 4))
def _f_expansive_channels(ctx, c):
    # same seed stream as channels.pg.contractivity, so the same draws
    rng = np.random.default_rng(sub_seed(ctx.master_seed, "channels.pg.contractivity"))
    for phi, r, s in channel_draws(rng, ctx.samples, ctx.dims):
        c.record("slack", fidelity.uhlmann_fidelity(phi(r), phi(s)) - fidelity.uhlmann_fidelity(r, s), 1e-8,
                 _payload(channel=phi, rho=r, sigma=s))


@register("example2.G.expansivity.violation", samples=1, dims=(4,))
def _example2(ctx, c):
    phi = example2_channel()
    r, s = example2_states()
    pr, ps = phi(r), phi(s)
    g_before, g_after = fidelity.super_fidelity(r, s), fidelity.super_fidelity(pr, ps)
    c.record("completeness", -channels.completeness_residual(phi.kraus), 1e-12)
    c.record("image_rho", -matops.frobenius(pr.matrix - np.diag([0, 1, 0, 0])), 1e-12)
    c.record("image_sigma", -matops.frobenius(ps.matrix - np.diag([0, 0, 0, 1])), 1e-12)
    c.record("G_before_half", -abs(g_before - 0.5), 1e-12)
    c.record("G_after_zero", -abs(g_after), 1e-12)
    c.record("G_decreases", g_before - g_after, 0.0)
    c.record("C_increases", fidelity.metric_c(pr, ps) - fidelity.metric_c(r, s), 0.0)
    c.extra.update(G_before=g_before, G_after=g_after)


@register("channels.G.expansivity.random_violations", samples=300, dims=(2, 3, 4), hard=False)
def _g_expansive_random(ctx, c):
    violations = 0
    for phi, r, s in channel_draws(ctx.rng, ctx.samples, ctx.dims):
        slack = c.record("G_after_minus_before",
                         fidelity.super_fidelity(phi(r), phi(s)) - fidelity.super_fidelity(r, s), 1e-12,
                         _payload(channel=phi, rho=r, sigma=s))
        violations += slack < -1e-12
    c.extra["violations"] = violations


@register("channels.g.contractivity_search", samples=300, dims=(2, 3, 4), hard=False)
def _g_contractive(ctx, c):
    violations = 0
    for phi, r, s in channel_draws(ctx.rng, ctx.samples, ctx.dims):
        before = metrics.g_metric(r, s, ctx.opts).value
        after = metrics.g_metric(phi(r), phi(s), ctx.opts).value
        slack = c.record("before_minus_after", before - after, 1e-9, _payload(channel=phi, rho=r, sigma=s))
        violations += slack < -1e-9
    c.extra["violations"] = violations


# -- driver ------------------------------------------------------------------

def run_property(prop: Property, config: RunConfig) -> PropertyVerdict:
    samples = config.samples_per_property or prop.samples
    if prop.qubit_only:
        dims = [2]
    elif config.dims is not None and prop.samples > 1:
        dims = [int(d) for d in config.dims]
    else:
        dims = list(prop.dims)
    ctx = PropertyContext(np.random.default_rng(sub_seed(config.seed, prop.property_id)),
                          samples, dims, config.optimizer, config.seed)
    checks = Checks()
    start = time.perf_counter()
    prop.func(ctx, checks)
    elapsed = time.perf_counter() - start

    _, worst = checks.worst()
    failed = checks.failed()
    counterexample = None
    if failed or not prop.hard:
        bad = failed or [n for n, e in checks._checks.items() if e["worst"] < 0]
        if bad and checks._checks[bad[0]]["payload"] is not None:
            counterexample = {"check": bad[0], **checks._checks[bad[0]]["payload"]()}
        elif bad:
            counterexample = {"check": bad[0]}
    if not prop.hard:
        status = REPORT_ONLY
    else:
        status = FAIL if failed else PASS
    return PropertyVerdict(
        property_id=prop.property_id,
        samples=samples,
        worst_margin=_num(worst["worst"]),
        tolerance=worst["tolerance"],
        status=status,
        counterexample=counterexample,
        checks=checks.summary(),
        seconds=round(elapsed, 3),
    )


def run_suite(config: Optional[RunConfig] = None, progress: Optional[Callable] = None):
    config = (config or RunConfig()).validate()
    ids = config.only or list(REGISTRY)
    verdicts = []
    for pid in ids:
        verdict = run_property(REGISTRY[pid], config)
        if progress is not None:
            progress(verdict)
        verdicts.append(verdict)
    return verdicts


def summarize(verdicts):
    return {
        "pass": sum(v.status == PASS for v in verdicts),
        "fail": sum(v.status == FAIL for v in verdicts),
        "report_only": sum(v.status == REPORT_ONLY for v in verdicts),
    }


def build_report(verdicts, config: RunConfig):
    return {
        "summary": summarize(verdicts),
        "config": config.to_dict(),
        "verdicts": [v.to_dict() for v in verdicts],
    }


def report_json(report):
    return json.dumps(report, indent=2, allow_nan=False)
