"""A four-level channel that lowers super-fidelity and raises the PG-metric.

The channel has Kraus operators A = |1><0| + |3><2| and B = |1><1| + |3><3|.
It sends the block states

    rho   = diag(1/2, 1/2, 0, 0)
    sigma = diag(0, 0, 1/2, 1/2)

to the pure states |1><1| and |3><3|. Uhlmann fidelity is 0 before and after,
but super-fidelity drops from 1/2 to 0, so super-fidelity is not monotone
under channels and sqrt(1 - G) is not contractive.

The same pair also breaks contractivity of the PG-metric: the spectral norm
of rho - sigma is 1/2 while that of the image difference is 1. A proof of
contractivity would need the adjoint channel to map the optimal pure state to
another state, but the adjoint of a non-unital channel need not preserve
trace. Here the adjoint sends |1><1| to |0><0| + |1><1|, which has trace 2.
"""

import numpy as np

from qmetric import fidelity, metrics
from qmetric.channels import adjoint_apply, example2_channel, example2_states

phi = example2_channel()
rho, sigma = example2_states()
out_rho, out_sigma = phi(rho), phi(sigma)

print("Phi(rho)   =", np.real(np.diag(out_rho.matrix)))
print("Phi(sigma) =", np.real(np.diag(out_sigma.matrix)))
print(f"is unital: {np.allclose(sum(k @ k.conj().T for k in phi.kraus), np.eye(4))}")

rows = [
    ("Uhlmann F", fidelity.uhlmann_fidelity),
    ("super-fidelity G", fidelity.super_fidelity),
    ("C = sqrt(1 - G)", fidelity.metric_c),
    ("trace metric", metrics.trace_metric),
    ("PG-metric", lambda a, b: metrics.pg_metric(a, b).value),
    ("G-metric", lambda a, b: metrics.g_metric(a, b).value),
]
print(f"\n{'quantity':<18}{'before':>16}{'after':>16}")
for name, f in rows:
    print(f"{name:<18}{f(rho, sigma):>16.12g}{f(out_rho, out_sigma):>16.12g}")

top = np.diag([0.0, 1.0, 0.0, 0.0])
pulled_back = adjoint_apply(phi, top)
print("\nadjoint image of |1><1|:", np.real(np.diag(pulled_back)),
      f"trace = {np.trace(pulled_back).real:g}")
