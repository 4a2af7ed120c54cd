"""pulsenest: nested composite pi-pulse sequences and their error suppression.

The package builds composite NOT gates from trains of pi pulses (the
recursively nested five-pulse family, the symmetric five-pulse sequence,
or user-supplied phase lists), transforms them between the applied and
toggling frames, and verifies their robustness three ways: closed-form
first/second-order error terms, numerically extracted Taylor series of the
error generator, and fitted infidelity scaling exponents.
"""

from .analysis import (
    GeneratorSeries,
    OrderEstimate,
    SweepResult,
    delta1,
    delta2,
    error_propagator,
    fidelity_sweep,
    generator_taylor,
    infidelity_order,
)
from .exceptions import (
    AmbiguousRotationError,
    EmptyWindowError,
    FrameError,
    MalformedPhaseFileError,
    PulsenestError,
    RouteMismatchError,
    StencilConditionError,
)
from .precision import DOUBLE_DIGITS, HIGH_DIGITS, working
from .sequences import (
    FamilySpec,
    Frame,
    PhaseSequence,
    dump_phase_file,
    fn_phases,
    from_toggling,
    is_antisymmetric,
    is_symmetric,
    load_phase_file,
    nest,
    normalize_phases,
    sequence_propagator,
    symmetric5_phases,
    to_toggling,
)
from .su2 import (
    AxisAngle,
    ErrorModel,
    Unitary2,
    compose,
    exp_generator,
    fidelity,
    make_pulse,
    make_rotation,
    principal_log,
)

__version__ = "0.1.0"

__all__ = [
    "AxisAngle",
    "AmbiguousRotationError",
    "DOUBLE_DIGITS",
    "EmptyWindowError",
    "ErrorModel",
    "FamilySpec",
    "Frame",
    "FrameError",
    "GeneratorSeries",
    "HIGH_DIGITS",
    "MalformedPhaseFileError",
    "OrderEstimate",
    "PhaseSequence",
    "PulsenestError",
    "RouteMismatchError",
    "StencilConditionError",
    "SweepResult",
    "Unitary2",
    "compose",
    "delta1",
    "delta2",
    "dump_phase_file",
    "error_propagator",
    "exp_generator",
    "fidelity",
    "fidelity_sweep",
    "fn_phases",
    "from_toggling",
    "generator_taylor",
    "infidelity_order",
    "is_antisymmetric",
    "is_symmetric",
    "load_phase_file",
    "make_pulse",
    "make_rotation",
    "nest",
    "normalize_phases",
    "principal_log",
    "sequence_propagator",
    "symmetric5_phases",
    "to_toggling",
    "working",
]
