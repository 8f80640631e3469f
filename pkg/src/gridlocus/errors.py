"""Exception hierarchy shared by every gridlocus module."""


class GridlocusError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(GridlocusError, ValueError):
    """A numeric parameter is outside the supported range."""


class DomainError(GridlocusError, ValueError):
    """An argument violates an operation's precondition."""


class CapacityError(GridlocusError):
    """A computation would exceed a configured size or time budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotLocallyGridError(GridlocusError):
    """Raised when some vertex neighbourhood is not a rook grid."""

    def __init__(self, message, vertex):
        super().__init__(message)
        self.vertex = vertex


class NotDistanceRegularError(GridlocusError):
    """Raised when an intersection number depends on the chosen pair."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class ParseError(GridlocusError):
    """Malformed graph file or encoding."""


class HypothesisUnmetError(DomainError):
    """An audit's standing hypothesis fails on the given graph."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CertificateError(GridlocusError):
    """A search certificate came out with a result that should be impossible."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
