"""Two entangled two-qubit pure states where the G-metric sits strictly below its upper bound.

The states are

    |psi> = sqrt(3)/2 |00> + 1/2 |11>
    |phi> = 1/2 |00> + sqrt(3)/2 |11>

Their overlap is sqrt(3)/2, so both fidelities equal 3/4 and the difference
rho - sigma has spectrum (1/2, 0, 0, -1/2). For qubits the G-metric always
meets the bound sqrt(2(N-1)/N) sqrt(1 - G); here, in dimension 4, it does not.
"""

import numpy as np

from qmetric import fidelity, matops, metrics, pure_from_vector

psi = np.array([np.sqrt(3) / 2, 0, 0, 0.5])
phi = np.array([0.5, 0, 0, np.sqrt(3) / 2])
rho, sigma = pure_from_vector(psi), pure_from_vector(phi)

print("spectrum of rho - sigma:", np.round(matops.eigvalsh_desc(rho.matrix - sigma.matrix), 12))
print(f"Uhlmann fidelity  F = {fidelity.uhlmann_fidelity(rho, sigma):.12g}")
print(f"super-fidelity    G = {fidelity.super_fidelity(rho, sigma):.12g}")
print(f"trace metric        = {metrics.trace_metric(rho, sigma):.12g}")

pg = metrics.pg_metric(rho, sigma)
print(f"PG-metric           = {pg.value:.12g}  (spectral norm of rho - sigma)")

g = metrics.g_metric(rho, sigma)
bound = metrics.g_metric_bound(rho, sigma)
print(f"G-metric            = {g.value:.12g}  via {g.diagnostics['restarts']} starts, "
      f"branch {g.diagnostics['branch']}")
print(f"upper bound         = {bound:.12g}  (sqrt(3/8) = {np.sqrt(3 / 8):.12g})")
print(f"gap                 = {bound - g.value:.12g}")

# The optimizer returns the state tau that attains the maximum; check it.
tau = g.witness
print(f"witness purity      = {np.trace(tau.matrix @ tau.matrix).real:.12g}")
print(f"|G(rho,tau) - G(sigma,tau)| at the witness = {metrics.g_difference(rho, sigma, tau):.12g}")

# A brute-force random search over mixed tau cannot beat the optimizer.
print(f"random-search value = {metrics.g_metric_oracle(rho, sigma, samples=20_000):.12g}")
