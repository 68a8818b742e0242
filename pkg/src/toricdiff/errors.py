"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for every structured error raised by toricdiff."""


class NotAComplexError(ToricError):
    """A sequence of boundary maps does not compose to zero."""


class NotCompatibleError(ToricError):
    """A polyhedron's support function is not linear on some cone of the fan."""

    def __init__(self, message, cone=None):
        super().__init__(message)
        self.cone = cone


class UnboundedBelowError(ToricError):
    """The support function is -infinity in the requested direction."""


class NotCartierError(ToricError):
    """A divisor has no integral local equation on some maximal cone."""

    def __init__(self, message, cone=None):
        super().__init__(message)
        self.cone = cone


class NonSimplicialFanError(ToricError):
    pass


class NoAmpleGivenError(ToricError):
    pass


class UnboundedBoxError(ToricError):
    """No finite degree box is available for a bundle with non-trivial tail cone."""


class SamplingExhaustedError(ToricError):
    pass


class FanError(ToricError):
    pass
