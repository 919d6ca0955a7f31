"""Exception taxonomy shared by the whole package.

The CLI maps these onto distinct exit statuses, so new failure modes should
reuse one of the classes below rather than raising bare ValueError.
"""


class DestabError(Exception):
    """Base class for all package errors."""


class SchemaError(DestabError):
    """An input document does not match its schema."""


class DimensionError(DestabError):
    """Vector/matrix sizes are incompatible."""


class DomainError(DestabError):
    """A value violates a structural constraint (blocks, determinants, ...)."""


class PreconditionError(DestabError):
    """An operation was called outside its stated precondition."""


class LimitMembershipError(PreconditionError):
    """A cocharacter does not admit a limit for the given point(s)."""


class UnsupportedError(DestabError):
    """The feature is deliberately out of scope for the given input."""


class UnsupportedRepresentationError(UnsupportedError):
    """Operation requires a different representation kind."""


class UnsupportedGroupError(UnsupportedError):
    """Operation requires a different group shape."""


class ModeError(UnsupportedError):
    """Input is incompatible with the requested operating mode."""


class InvariantViolation(DestabError):
    """A runtime self-check failed; the result cannot be trusted."""
