"""Exception hierarchy shared by all modules."""


class OptInterpError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OptInterpError, ValueError):
    """An argument lies outside the domain of a formula (e.g. gamma < 1)."""


class DimensionMismatch(OptInterpError, ValueError):
    pass


class DegenerateSimplex(DomainError):
    """The vertex matrix is singular to working precision."""


class UnsupportedBody(OptInterpError, TypeError):
    pass


class EmptyVertexSet(OptInterpError, ValueError):
    pass


class TooManySignVectors(OptInterpError, ValueError):
    pass


class SimplexNotInBody(DomainError):
    pass


class NotConstructible(OptInterpError):
    """No implemented construction produces the requested object."""


class UnknownName(OptInterpError, KeyError):
    pass


class DimensionTooLarge(OptInterpError, ValueError):
    pass
