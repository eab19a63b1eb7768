"""Exception taxonomy shared across the library and the CLI exit codes."""


class DomainError(ValueError):
    """An argument is outside the operation's stated domain."""


class ParseError(ValueError):
    """A serialized artifact (family, matching, certificate) is malformed."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class BudgetError(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


class SolverError(RuntimeError):
    """A numeric solver failed to meet its convergence contract."""


class NotInImageError(ValueError):
    """A family is not the encoding of any induced matching."""


class VerificationError(RuntimeError):
    """An integrity certificate failed its independent audit."""
