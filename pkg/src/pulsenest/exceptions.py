"""Exception types raised by pulsenest."""


class PulsenestError(Exception):
    """Base class for all pulsenest-specific errors."""


class FrameError(PulsenestError, ValueError):
    """A phase sequence was supplied in the wrong frame for the operation."""


class AmbiguousRotationError(PulsenestError, ValueError):
    """Principal log requested for a rotation at exactly pi.

    The axis is still well defined but the sign of the generator is not;
    callers that need a value must perturb the input away from angle pi.
    """


class MalformedPhaseFileError(PulsenestError, ValueError):
    """A phase file is unreadable or violates the expected schema."""


class RouteMismatchError(PulsenestError, RuntimeError):
    """The two error-propagator construction routes disagree.

    They are algebraically identical for amplitude errors, so a mismatch
    beyond roundoff signals an internal consistency failure.
    """


class EmptyWindowError(PulsenestError, RuntimeError):
    """No infidelity samples landed inside the order-fit window.

    Raised when the working precision is too low for the sequence's
    suppression order; the message states the precision that was used and
    suggests a higher one.
    """


class StencilConditionError(PulsenestError, RuntimeError):
    """The Taylor-extraction stencil system is too ill-conditioned to solve."""
