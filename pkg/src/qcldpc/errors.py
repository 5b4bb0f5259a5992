"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class QcLdpcError(Exception):
    """Base class for all library errors."""


class ParameterError(QcLdpcError, ValueError):
    """Parameters outside the domain where a construction is defined."""


class NonexistentError(ParameterError):
    """The requested object provably does not exist."""


class SearchBudgetExceeded(QcLdpcError, RuntimeError):
    """A search ran out of nodes before finding (or refuting) a solution."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


class NotInvertibleError(QcLdpcError, ArithmeticError):
    """A circulant has no inverse modulo x^z - 1."""


class ParseError(QcLdpcError, ValueError):
    """Malformed matrix or family file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
