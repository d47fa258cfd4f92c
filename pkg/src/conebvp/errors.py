"""Exception types raised by the library."""


class ConeBVPError(Exception):
    """Base class for all library errors."""


class ParameterError(ConeBVPError):
    """A problem parameter violates its admissible range.

    Carries the offending field name in ``field`` when known, so config
    loaders can point at the bad key.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DomainError(ConeBVPError):
    """A coefficient or nonlinearity sampled negative or non-finite."""


class RangeError(ConeBVPError):
    """Integration bounds are inverted or leave the carrier interval."""


class DegenerateError(ConeBVPError):
    """A threshold constant is undefined because its quadrature vanishes."""


class NonConvergenceError(ConeBVPError):
    """Fixed-point iteration ran out of iterations.

    ``defect`` holds the last sup-norm distance between the iterate and its
    image, so callers can judge how far off the iteration stalled and fall
    back to shooting.
    """

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class BlowupError(ConeBVPError):
    """An initial value integration exceeded the overflow guard."""


class ConfigError(ConeBVPError):
    """A problem configuration file is malformed.

    ``field`` names the offending key when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnknownExampleError(ConeBVPError):
    """Requested id is not in the built-in example registry."""
