"""Delay margins for operator-valued retarded delay systems.

The system (P(s)I + Q(s)e^{-sh}A)^{-1} is analyzed through the spectrum of A:
per-eigenvalue delay sweeps locate imaginary-axis crossings and their
directions, aggregate into stability windows and a delay margin, and an
independent boundary-norm certificate cross-checks the verdict.  A companion
subpackage verifies the weighted Hardy/Bergman function-space facts (Laplace
isometry, reproducing kernels, multiplier norms) that back the method.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateCrossingError,
    DelayMarginError,
    DivergentIntegralError,
    DivergentWeightError,
    IdenticallyZeroError,
    NonConvergenceError,
    NotDoublingError,
    RetardedAssumptionError,
    SingularOnGridError,
    UnboundedSymbolError,
    UnsupportedDescriptorError,
    ZeroPolynomialError,
)
from .poly import Polynomial, RootSet, derivative, evaluate, real_roots, roots
from .rational import RationalFunction, RationalMatrix, RationalVector
from .spectrum import (
    Annulus,
    Circle,
    ComplexMatrix,
    Disk,
    MatrixSpectrum,
    ModulusRange,
    Points,
    Union,
    candidates_for_modulus,
    contains,
    distance_to_set,
    eigenvalues,
    modulus_range,
    subnormal_bounds,
)
from .stability import (
    DelaySystem,
    GridConfig,
    HinfCertificate,
    StabilityReport,
    hinf_boundary_norm,
    neutral_demo,
    operator_margin,
    tail_radius,
    unbounded_a_demo,
)
from .walton_marshall import (
    CrossingEvent,
    LambdaStabilityResult,
    analyze_lambda,
    crossing_delays,
    crossing_direction,
    crossing_frequencies,
    first_crossing_delay,
    h0_rhp_count,
)
from .zen import (
    DensityPiece,
    IsometryCheck,
    Kernel,
    MeasureDescriptor,
    MultiplierCheck,
    QuadConfig,
    SignalTerm,
    TestSignal,
    Weight,
    doubling_constant,
    frequency_norm_sq,
    inner_product,
    kernel,
    kernel_transform,
    sup_norm_on_axis,
    time_norm_sq,
    verify_isometry,
    verify_multiplier,
    weight_from_measure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
