"""Exception types shared across the package."""


class TraceLocError(Exception):
    """Base class for all package-specific failures."""


class MeshError(TraceLocError):
    """Invalid mesh input or violated mesh invariant."""


class NotSPDError(TraceLocError):
    """A matrix expected to be symmetric positive definite is not.

    Carries the index of the offending Cholesky pivot.
    """

    def __init__(self, pivot, value):
        self.pivot = int(pivot)
        self.value = float(value)
        super().__init__(
            f"matrix is not positive definite: pivot {pivot} is {value:.3e}"
        )


class DivergentIntegralError(TraceLocError):
    """Weighted boundary integral did not decay: function is not in H^{1/2}_00."""


class QuadratureError(TraceLocError):
    """Non-finite integrand values or a failed adaptive refinement."""


class UnsupportedOperationError(TraceLocError):
    """Operation declared unavailable for this mesh dimension."""


class ConfigError(TraceLocError):
    """Invalid experiment configuration."""
