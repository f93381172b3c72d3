"""Exception types shared across the package."""


class GSpanError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(GSpanError):
    """Input data fails a structural precondition (not a permutation, not based, ...)."""


class SizeLimitError(GSpanError):
    """A construction exceeded a configured size bound."""


class ShapeError(GSpanError):
    """Endpoints, arities or middle objects do not match."""


class DomainError(GSpanError):
    """Numeric argument outside the domain of a piecewise map."""


class NotFixedError(GSpanError):
    """The object is not fixed by the group action."""
