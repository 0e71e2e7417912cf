"""Exception hierarchy shared across the package."""


class TransitLocError(Exception):
    """Base class for every error raised by transitloc."""


class ValidationError(TransitLocError, ValueError):
    """Raised when raw instance data cannot be turned into an Instance."""

    field = "instance"


class EmptyPoints(ValidationError):
    field = "points"


class BadPoint(ValidationError):
    field = "points"


class NonPositiveWeight(ValidationError):
    field = "w"


class BadLength(ValidationError):
    field = "length"


class BadSpeedup(ValidationError):
    field = "k"


class EmptyInput(TransitLocError, ValueError):
    """Raised by the 1-D weighted median on empty or mismatched input."""


class NotCanonical(TransitLocError, ValueError):
    """The entrance is not up-right of the facility."""


class DegeneratePosition(TransitLocError, ValueError):
    """A demand coordinate ties a coordinate that must be generic."""


class LambdaTooLarge(TransitLocError, ValueError):
    pass


class BadAngles(TransitLocError, ValueError):
    pass


class EmptyDomain(TransitLocError, ValueError):
    pass


class BadResolution(TransitLocError, ValueError):
    pass


class ClassificationFailed(TransitLocError, RuntimeError):
    """A solver optimum matched none of the endpoint conditions."""
