"""Distance measures between quantum states built on super-fidelity.

The package provides validated density matrices and Bloch vectors, the
Uhlmann and super-fidelities, the trace, projective-generalized (``D_PG``)
and super-fidelity-generalized (``D_G``) metrics, Kraus channels, and a
seeded numerical property suite.
"""

from .channels import KrausChannel, apply_channel, make_channel, random_channel
from .errors import (
    BadConfig,
    ConvergenceFailure,
    DimMismatch,
    InvalidChannel,
    InvalidState,
    NotPositive,
    QMetricError,
)
from .fidelity import (
    metric_a,
    metric_b,
    metric_c,
    qubit_fidelity_bloch,
    super_fidelity,
    super_fidelity_bloch,
    uhlmann_fidelity,
)
from .metrics import (
    MetricReport,
    OptimizerOptions,
    g_metric,
    g_metric_bound,
    g_metric_oracle,
    pg_metric,
    spectral_summary,
    trace_metric,
)
from .states import (
    BlochState,
    DensityMatrix,
    bloch_to_density,
    density_to_bloch,
    gell_mann_basis,
    make_density,
    maximally_mixed,
    pure_from_vector,
    purity,
    random_density,
)

__version__ = "0.1.0"

__all__ = [
    "BadConfig", "BlochState", "ConvergenceFailure", "DensityMatrix", "DimMismatch",
    "InvalidChannel", "InvalidState", "KrausChannel", "MetricReport", "NotPositive",
    "OptimizerOptions", "QMetricError", "apply_channel", "bloch_to_density",
    "density_to_bloch", "g_metric", "g_metric_bound", "g_metric_oracle", "gell_mann_basis",
    "make_channel", "make_density", "maximally_mixed", "metric_a", "metric_b", "metric_c",
    "pg_metric", "pure_from_vector", "purity", "qubit_fidelity_bloch", "random_channel",
    "random_density", "spectral_summary", "super_fidelity", "super_fidelity_bloch",
    "trace_metric", "uhlmann_fidelity",
]
