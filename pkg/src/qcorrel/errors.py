"""Exception hierarchy.

Everything that means "the input does not describe a valid object" derives
from :class:`ValidationError`, which carries the name of the violated
invariant and the measured violation so the CLI can report it verbatim.
"""


class QCorrelError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QCorrelError, ValueError):
    """An input violates a documented invariant.

    Attributes:
        invariant: short human-readable name, e.g. ``"unit trace"``.
        violation: the measured deviation, when one is meaningful.
    """

    def __init__(self, invariant, message="", violation=None):
        self.invariant = invariant
        self.violation = violation
        text = invariant
        if message:
            text = f"{invariant}: {message}"
        if violation is not None:
            text = f"{text} (violation {violation:.3e})"
        super().__init__(text)


class NonHermitianInput(ValidationError):
    def __init__(self, violation):
        super().__init__("Hermitian", "matrix is not Hermitian", violation)


class ConvergenceFailure(QCorrelError, ArithmeticError):
    """The eigensolver exhausted its sweep budget."""


class InvalidWeights(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class DuplicateTerm(ValidationError):
    pass


class DimensionMismatch(QCorrelError, ValueError):
    pass


class ZeroProbabilityOutcome(QCorrelError, ValueError):
    pass


class NotADistribution(ValidationError):
    pass


class MarginalsNotIdentical(QCorrelError, ValueError):
    pass


class CrossCheckFailure(QCorrelError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""


class SchemaError(QCorrelError, ValueError):
    """A state file is structurally malformed.

    Attributes:
        pointer: JSON pointer (RFC 6901) to the offending field.
    """

    def __init__(self, pointer, message):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")
