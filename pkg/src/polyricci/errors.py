"""Exception hierarchy shared by all modules."""


class PolyRicciError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(PolyRicciError):
    """A face or simplex refers to edges that do not exist."""


class DuplicateFaceError(PolyRicciError):
    pass


class ParseError(PolyRicciError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(PolyRicciError):
    pass


class DegenerateWeightError(PolyRicciError):
    """Side lengths violate the strict triangle inequality."""


class MissingDataError(PolyRicciError):
    pass


class DomainError(PolyRicciError):
    """A weight that must be positive is not."""


class MisuseError(PolyRicciError):
    """An operation was called on a complex it does not apply to."""
