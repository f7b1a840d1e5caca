"""Exception types shared across the package."""


class QlrError(Exception):
    """Base class for all errors raised by :mod:`qlr`."""


class StructuralError(QlrError, TypeError):
    """An element or value does not have the shape its descriptor expects."""


class UnsupportedOperation(QlrError):
    """The operation is not defined for this kind of structure."""


class ContractError(QlrError, ValueError):
    """A precondition of an operation does not hold.

    ``witness`` carries the offending data when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainError(QlrError, ValueError):
    """A function was applied outside of its domain."""


class ParseError(QlrError, ValueError):
    """Source text is not in the term or type grammar."""

    def __init__(self, message, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class TypingError(QlrError, TypeError):
    """A term is ill-typed; ``span`` points at the offending subterm when known."""

    def __init__(self, message, span=None):
        where = f"{span.line}:{span.col}: " if span is not None else ""
        super().__init__(where + message)
        self.span = span
