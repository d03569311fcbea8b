"""Recompute the reference worked examples and qubit identities for ``qmetric reproduce``.

Each function returns a list of rows ``{"quantity", "claimed", "computed",
"deviation", "note"}``; ``claimed`` is ``None`` where only an inequality is expected.
"""

import math

import numpy as np

from . import fidelity, matops, metrics
from .cases import example1_states, example2_channel, example2_states
from .metrics import OptimizerOptions
from .suite import DEFAULT_SEED, _rand_state, haar_pure_overlaps, sub_seed


def _row(quantity, computed, claimed=None, note=""):
    dev = None if claimed is None else abs(computed - claimed)
    return {"quantity": quantity, "claimed": claimed, "computed": float(computed), "deviation": dev, "note": note}


def ex1(seed=DEFAULT_SEED, opts=None):
    rho, sigma = example1_states()
    dg = metrics.g_metric(rho, sigma, opts or OptimizerOptions()).value
    bound = metrics.g_metric_bound(rho, sigma)
    return [
        _row("Dg", dg, 0.5),
        _row("bound", bound, math.sqrt(3 / 8), "sqrt(2(N-1)/N) sqrt(1-G), N = 4"),
        _row("bound - Dg", bound - dg, math.sqrt(3 / 8) - 0.5, "strict gap"),
        _row("Dpg", metrics.pg_metric(rho, sigma).value, 0.5),
        _row("F", fidelity.uhlmann_fidelity(rho, sigma), 0.75),
        _row("G", fidelity.super_fidelity(rho, sigma), 0.75, "pure states: G = F"),
    ]


def ex2(seed=DEFAULT_SEED, opts=None):
    phi = example2_channel()
    rho, sigma = example2_states()
    prho, psigma = phi(rho), phi(sigma)
    dpg_before = metrics.pg_metric(rho, sigma).value
    dpg_after = metrics.pg_metric(prho, psigma).value
    return [
        _row("completeness residual", matops.frobenius(sum(k.conj().T @ k for k in phi.kraus) - np.eye(4)), 0.0),
        _row("G before", fidelity.super_fidelity(rho, sigma), 0.5),
        _row("G after", fidelity.super_fidelity(prho, psigma), 0.0, "G decreases under the channel"),
        _row("C before", fidelity.metric_c(rho, sigma), math.sqrt(0.5)),
        _row("C after", fidelity.metric_c(prho, psigma), 1.0, "C increases: not contractive"),
        _row("F before", fidelity.uhlmann_fidelity(rho, sigma), 0.0),
        _row("F after", fidelity.uhlmann_fidelity(prho, psigma), 0.0),
        _row("Dpg before", dpg_before, None, "spectral norm of diag(1/2, 1/2, -1/2, -1/2)"),
        _row("Dpg after", dpg_after, None,
             "spectral norm of diag(0, 1, 0, -1); exceeds Dpg before, so Dpg is not contractive here"),
        _row("Dtr before", metrics.trace_metric(rho, sigma), 1.0),
        _row("Dtr after", metrics.trace_metric(prho, psigma), 1.0),
    ]


def prop1(seed=DEFAULT_SEED, opts=None, samples=200):
    rng = np.random.default_rng(sub_seed(seed, "reproduce.prop1"))
    worst = 0.0
    for _ in range(samples):
        r, s = _rand_state(2, rng), _rand_state(2, rng)
        worst = max(worst, abs(metrics.pg_metric(r, s).value - metrics.trace_metric(r, s)))
    return [_row(f"max |Dpg - Dtr| over {samples} qubit pairs", worst, 0.0)]


def prop2(seed=DEFAULT_SEED, opts=None, samples=200):
    rng = np.random.default_rng(sub_seed(seed, "reproduce.prop2"))
    opts = opts or OptimizerOptions()
    worst = 0.0
    for _ in range(samples):
        r, s = _rand_state(2, rng), _rand_state(2, rng)
        worst = max(worst, abs(metrics.g_metric(r, s, opts).value - fidelity.metric_c(r, s)))
    return [_row(f"max |Dg - sqrt(1-G)| over {samples} qubit pairs", worst, 0.0)]


def prop3(seed=DEFAULT_SEED, opts=None, samples=200, dims=(2, 3, 4), draws=10_000):
    rng = np.random.default_rng(sub_seed(seed, "reproduce.prop3"))
    rows = []
    for n in dims:
        exact_dev = excess = 0.0
        shortfall = 0.0
        for _ in range(samples):
            r, s = _rand_state(n, rng), _rand_state(n, rng)
            pg = metrics.pg_metric(r, s).value
            delta = r.matrix - s.matrix
            exact_dev = max(exact_dev, abs(pg - matops.spectral_norm(delta)))
            sampled = float(np.max(np.abs(haar_pure_overlaps(delta, draws, rng))))
            excess = max(excess, sampled - pg)
            shortfall = max(shortfall, pg - sampled)
        rows.append(_row(f"dim {n}: max |Dpg - spectral norm|", exact_dev, 0.0))
        rows.append(_row(f"dim {n}: max (sampled pure max - Dpg)", excess, None, "must not exceed 0"))
        rows.append(_row(f"dim {n}: max (Dpg - sampled pure max)", shortfall, None, f"{draws} Haar draws"))
    return rows


def bound13(seed=DEFAULT_SEED, opts=None, samples=500, dims=(2, 3, 4, 5)):
    rng = np.random.default_rng(sub_seed(seed, "reproduce.bound13"))
    opts = opts or OptimizerOptions()
    rows = []
    for n in dims:
        over = -math.inf
        eq_dev = 0.0
        for _ in range(samples):
            r, s = _rand_state(n, rng), _rand_state(n, rng)
            g = metrics.g_metric(r, s, opts).value
            b = metrics.g_metric_bound(r, s)
            over = max(over, g - b)
            eq_dev = max(eq_dev, abs(g - b))
        rows.append(_row(f"dim {n}: max (Dg - bound)", over, None, "must not exceed 0"))
        if n == 2:
            rows.append(_row("dim 2: max |Dg - bound|", eq_dev, 0.0, "equality for qubits"))
    return rows


REPRODUCERS = {
    "ex1": ex1,
    "ex2": ex2,
    "prop1": prop1,
    "prop2": prop2,
    "prop3": prop3,
    "bound13": bound13,
}


def reproduce(example_id, seed=DEFAULT_SEED, opts=None):
    try:
        func = REPRODUCERS[example_id]
    except KeyError:
        raise ValueError(f"unknown id {example_id!r}; choose from {sorted(REPRODUCERS)}") from None
    return {"id": example_id, "rows": func(seed=seed, opts=opts)}
