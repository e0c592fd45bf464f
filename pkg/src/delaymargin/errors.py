"""Exception types shared across the library."""


class DelayMarginError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomialError(DelayMarginError, ValueError):
    """Root finding requested for the identically zero polynomial."""


class NonConvergenceError(DelayMarginError, RuntimeError):
    """An iterative solver failed to meet its residual contract."""


class RetardedAssumptionError(DelayMarginError, ValueError):
    """deg P <= deg Q: the system is neutral or advanced, not retarded."""


class DegenerateCrossingError(DelayMarginError, ValueError):
    """Crossing-point preconditions (nonzero P, Q, lambda, omega) fail."""


class IdenticallyZeroError(DelayMarginError, ValueError):
    """The crossing polynomial vanishes identically: a continuum of crossings."""


class UnsupportedDescriptorError(DelayMarginError, ValueError):
    """Hole structure of a spectrum descriptor cannot be derived structurally."""


class SingularOnGridError(DelayMarginError, RuntimeError):
    """A boundary sample is numerically non-invertible.

    Raised by the boundary-norm estimator; certifies a crossing (instability)
    at the queried delay rather than an exact pole location.
    """

    def __init__(self, omega: float, norm: float, h: float):
        self.omega = omega
        self.norm = norm
        self.h = h
        super().__init__(
            f"boundary sample at omega={omega:.12g} is numerically singular "
            f"(norm >= {norm:.3g}) for delay h={h:.12g}"
        )


class DivergentIntegralError(DelayMarginError, ValueError):
    """A requested norm integral diverges."""


class DivergentWeightError(DelayMarginError, ValueError):
    """The weight integral diverges for some t > 0."""


class NotDoublingError(DelayMarginError, ValueError):
    """Doubling ratio exceeded the configured cap (heuristic evidence only)."""


class UnboundedSymbolError(DelayMarginError, ValueError):
    """Multiplier symbol has poles in the closed right half-plane."""
