"""Exception hierarchy shared by the library and the command-line front end."""


class NupphError(Exception):
    """Base class for every error raised by this package."""


class GridError(NupphError, ValueError):
    """Invalid grid or stencil data."""


class NotStrictlyIncreasing(GridError):
    pass


class DegenerateSpacing(NotStrictlyIncreasing):
    """Consecutive abscissas are closer than the rejection threshold."""


class LengthMismatch(GridError):
    pass


class TooFewPoints(GridError):
    pass


class NonFiniteData(GridError):
    pass


class OutOfRange(GridError, IndexError):
    pass


class SamplerFailure(NupphError, ArithmeticError):
    """A sampling function returned a non-finite value."""


class NonPositiveSpacing(NupphError, ValueError):
    pass


class NotConvexData(NupphError, ValueError):
    """The second divided differences of a stencil do not share a strict sign."""


class ParseError(NupphError, ValueError):
    pass


class ConfigError(NupphError, ValueError):
    pass
