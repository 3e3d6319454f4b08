"""Exception hierarchy.  The CLI maps each class onto a distinct exit code."""


class FactorLabError(Exception):
    """Base class for all factorlab errors."""


class ValidationError(FactorLabError):
    """Malformed data: operation tables, signatures, files, partitions."""


class FormulaSyntaxError(ValidationError):
    """Formula or term text that does not conform to the grammar."""

    def __init__(self, message: str, position: int = -1):
        if position >= 0:
            super().__init__(f"{message} (at position {position})")
        else:
            super().__init__(message)
        self.position = position


class EvalError(ValidationError):
    """Unbound variable, unknown symbol or arity mismatch during evaluation."""


class ResourceBoundError(FactorLabError):
    """A configured size bound, pair cap or closure budget was exceeded."""


class NoWitnessError(FactorLabError):
    """No disjunct admits a witness at the distinguished free-pair assignment.

    Carries the distinguished assignment so callers can show what was searched.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InternalCheckError(FactorLabError):
    """A re-verification that must hold by construction failed (a bug)."""
