"""Exception types raised across the package.

All of them derive from :class:`QMetricError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class QMetricError(ValueError):
    pass


class NonHermitian(QMetricError):
    pass


class NotPSD(QMetricError):
    pass


class ConvergenceFailure(QMetricError):
    pass


class DimMismatch(QMetricError):
    pass


class InvalidState(QMetricError):
    """A matrix failed density-matrix validation.

    ``reason`` is one of ``"NonHermitian"``, ``"TraceNotOne"``, ``"NotPSD"``
    (or ``"NotSquare"`` / ``"NonFinite"`` for malformed input) and
    ``residual`` is the offending magnitude.
    """

    def __init__(self, reason, residual=float("nan"), message=None):
        self.reason = reason
        self.residual = residual
        super().__init__(message or f"{reason} (residual {residual:.3e})")


class DimensionTooSmall(QMetricError):
    pass


class NotPositive(QMetricError):
    """Bloch vector lies outside the set of valid states."""

    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"Bloch vector maps to an operator with eigenvalue {min_eigenvalue:.3e} < 0")


class BadRank(QMetricError):
    pass


class ZeroVector(QMetricError):
    pass


class NotQubit(QMetricError):
    pass


class BadShape(QMetricError):
    pass


class InvalidChannel(QMetricError):
    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"Kraus completeness residual {residual:.3e} exceeds tolerance")


class BadConfig(QMetricError):
    pass
