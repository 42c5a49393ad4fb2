"""Exception hierarchy shared by all latfourier modules."""


class LatFourierError(ValueError):
    """Base class for every error raised by latfourier."""


class SingularGenerator(LatFourierError):
    pass


class TruncationOverflow(LatFourierError):
    pass


class DegenerateAxis(LatFourierError):
    pass


class InsufficientShiftRadius(LatFourierError):
    pass


class BandExceedsGrid(LatFourierError):
    pass


class BadExponent(LatFourierError):
    pass


class BadExponentPair(LatFourierError):
    pass


class MissingWeight(LatFourierError):
    pass


class ConfigError(LatFourierError):
    """Bad experiment configuration; the message names the offending key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
