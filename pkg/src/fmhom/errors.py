"""Exception types shared across the package."""


class FmhomError(Exception):
    """Base class for all package errors."""


class ValidationError(FmhomError):
    """One or more type invariants are violated.

    Carries the full list of violations as ``(field_path, rule)`` pairs so a
    single failed construction reports every broken invariant at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [f"{path}: {rule}" for path, rule in self.violations]
        super().__init__("; ".join(lines))


class DomainError(FmhomError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigError(FmhomError):
    """Inconsistent configuration (mismatched lists, overlapping windows...)."""


class ParseError(FmhomError):
    """Unreadable input file; carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FitError(FmhomError):
    """Nonlinear fit diverged or hit singular normal equations.

    ``last_iterate`` holds the (baseline, visibility, sigma) triple at the
    point of failure.
    """

    def __init__(self, message, last_iterate=None):
        self.last_iterate = last_iterate
        super().__init__(message)
