"""Exception hierarchy shared by all modules."""


class ZgError(ValueError):
    """Base class for domain errors raised by the library."""


class DomainError(ZgError):
    """An operation was called outside its precondition."""


class UltrafilterDependent(ZgError):
    """The answer differs between nonprincipal ultrafilters.

    Raised when two eventually-polynomial sequences disagree in kind on
    different residue classes, so no single verdict holds for every
    nonprincipal ultrafilter extending the cofinite filter.
    """


class ParseError(ZgError):
    """Syntax error in a DSL expression; ``pos`` is the 0-based offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
