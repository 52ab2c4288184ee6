"""Exception types shared across the package."""


class ConforkError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(ConforkError, ValueError):
    """A JSON document, rational literal or constructor argument is malformed."""


class NotRegularForkness(ConforkError):
    """Raised when an operation requires a regular forkness and the input is not one.

    The offending axiom report is attached as ``report``.
    """

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed()) or "unknown"
        super().__init__(f"relation is not a regular forkness (failed: {failed})")


class NotAQuotient(ConforkError):
    """The relation handed to the solver is not a quotient relation."""


class ConditioningOnNull(ConforkError):
    """Conditional probability requested with a conditioning event of mass zero."""


class TrivialEvent(ConforkError):
    """Correlation requested for an event of probability zero or one."""


class TrivialConditioner(ConforkError):
    """Conditional independence requested with a conditioner of probability zero or one."""


class InconsistentParameters(ConforkError):
    """Synthesis parameters do not match the quotient they are meant to serve."""


class MismatchedQuotient(ConforkError):
    """A lift was attempted from a space that does not represent the given quotient."""


class GroundSetTooLarge(ConforkError):
    """Refusing to synthesize a space with more than 2**max_ground_size atoms."""


class RoundTripError(ConforkError):
    """Internal error: a synthesized family failed to reproduce its input relation."""
