"""Exception hierarchy shared by the library and mapped to CLI exit codes."""

from .perms import InvalidInput


class DomainError(ValueError):
    """Argument outside the region where the quantity is defined (exit 3)."""


class IntegrabilityError(DomainError):
    pass


class AccuracyError(RuntimeError):
    """Requested accuracy cannot be certified (exit 4)."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class EvaluationError(ArithmeticError):
    """An integrand was queried where it is not defined."""


class UnsupportedError(NotImplementedError):
    pass


__all__ = [
    "InvalidInput",
    "DomainError",
    "IntegrabilityError",
    "AccuracyError",
    "EvaluationError",
    "UnsupportedError",
]
