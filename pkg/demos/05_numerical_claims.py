"""Searching for counterexamples to three plausible-looking properties.

1. The PG-metric does not grow under channels. It does hold for unital
   channels, but random non-unital channels occasionally break it.
2. The squared G-metric is convex in its first argument.
3. The G-metric does not grow under channels.

Each search prints the worst slack it found (negative means a violation)
and, for the worst case, the numbers that make it one.
"""

from qmetric import metrics, states
from qmetric.io import state_from_json
from qmetric.suite import REGISTRY, RunConfig, run_property

config = RunConfig()
for pid in ("channels.pg.contractivity_unital", "channels.pg.contractivity",
            "metrics.g.squared_convexity", "channels.g.contractivity_search"):
    v = run_property(REGISTRY[pid], config)
    print(f"{pid:<36} {v.status:<10} worst slack {v.worst_margin:+.6g} over {v.samples} draws")

# Replay the worst squared-convexity case from its counterexample payload.
v = run_property(REGISTRY["metrics.g.squared_convexity"], config)
ce = v.counterexample
if ce and ce["check"] == "first_argument":
    lam = ce["weight"]
    r1, r2, s = (state_from_json(ce[k]) for k in ("rho1", "rho2", "sigma"))
    mixed = states.make_density(lam * r1.matrix + (1 - lam) * r2.matrix)
    d2 = lambda a, b: metrics.g_metric(a, b).value ** 2  # noqa: E731
    print(f"\nlambda = {lam}")
    print(f"D^2(mix, sigma)              = {d2(mixed, s):.12g}")
    print(f"lambda D^2(r1) + (1-l) D^2(r2) = {lam * d2(r1, s) + (1 - lam) * d2(r2, s):.12g}")
    print(f"random-search D(mix, sigma)  = {metrics.g_metric_oracle(mixed, s, samples=20_000):.12g}")
    print(f"optimizer D(mix, sigma)      = {metrics.g_metric(mixed, s).value:.12g}")
