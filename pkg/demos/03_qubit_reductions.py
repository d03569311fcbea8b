"""On qubits the new metrics collapse to familiar ones.

For two-level systems super-fidelity equals Uhlmann fidelity, the PG-metric
equals the trace metric, and the G-metric equals sqrt(1 - G). This script
draws random qubit pairs and reports the largest deviation of each identity.
"""

import numpy as np

from qmetric import fidelity, metrics, random_density

rng = np.random.default_rng(7)
dev_f = dev_pg = dev_g = 0.0
for _ in range(200):
    rho, sigma = random_density(2, seed=rng), random_density(2, seed=rng)
    dev_f = max(dev_f, abs(fidelity.super_fidelity(rho, sigma) - fidelity.uhlmann_fidelity(rho, sigma)))
    dev_pg = max(dev_pg, abs(metrics.pg_metric(rho, sigma).value - metrics.trace_metric(rho, sigma)))
    dev_g = max(dev_g, abs(metrics.g_metric(rho, sigma).value - fidelity.metric_c(rho, sigma)))

print(f"max |G - F|              = {dev_f:.3g}")
print(f"max |Dpg - Dtr|          = {dev_pg:.3g}")
print(f"max |Dg - sqrt(1 - G)|   = {dev_g:.3g}")

# In higher dimension the identities stop holding.
rho, sigma = random_density(3, seed=rng), random_density(3, seed=rng)
print("\nqutrit pair:")
print(f"  G - F   = {fidelity.super_fidelity(rho, sigma) - fidelity.uhlmann_fidelity(rho, sigma):.6g}")
print(f"  Dtr     = {metrics.trace_metric(rho, sigma):.6g}, Dpg = {metrics.pg_metric(rho, sigma).value:.6g}")
print(f"  C       = {fidelity.metric_c(rho, sigma):.6g}, Dg = {metrics.g_metric(rho, sigma).value:.6g}, "
      f"bound = {metrics.g_metric_bound(rho, sigma):.6g}")
