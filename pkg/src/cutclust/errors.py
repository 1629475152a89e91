"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad input: malformed data, mismatched dimensions, out-of-range values."""


class ResourceLimitError(RuntimeError):
    """Instance exceeds a configured resource cap (e.g. qubit count)."""


class EvaluationError(RuntimeError):
    """An objective produced a non-finite value during optimization."""
