"""Exception hierarchy shared by the library and the CLI."""


class GDAError(Exception):
    """Base class for all library errors."""


class FormatError(GDAError):
    """Malformed input: a bad constructor string or a file that fails to parse or validate."""


class PreconditionError(GDAError):
    """A documented precondition or configured cap was violated."""


class TauShapeError(PreconditionError):
    """The degree map is not an antiautomorphism of order dividing 2."""


class CompatibilityError(GDAError):
    """A proposed (tau, mu) pair does not define an involution."""
