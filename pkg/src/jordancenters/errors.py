"""Exception hierarchy shared by the library and the CLI."""


class JordanError(Exception):
    """Base class for every error raised by this package."""


class CurveError(JordanError, ValueError):
    """Invalid input for a Jordan curve."""


class TooFewSamples(CurveError):
    pass


class NonFinite(CurveError):
    pass


class SelfIntersecting(CurveError):
    pass


class PointNotInterior(JordanError, ValueError):
    pass


class ZeroDirection(JordanError, ValueError):
    pass


class OutOfDomain(JordanError, ValueError):
    pass


class NotConvex(JordanError, ValueError):
    pass


class OffsetTooLarge(JordanError, ValueError):
    pass


class DidNotConverge(JordanError, RuntimeError):
    """A numerical construction failed to reach its tolerance."""


class DegenerateVoronoi(DidNotConverge):
    pass


class InverseFailed(DidNotConverge):
    pass
