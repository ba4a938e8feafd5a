"""Exception hierarchy shared across the package."""


class PauliDiscrimError(Exception):
    """Base class for all errors raised by pauli_discrim."""


class ValidationError(PauliDiscrimError, ValueError):
    """An input violates a structural or numerical constraint."""


class DimensionError(ValidationError):
    """Operands have incompatible dimensions."""


class ConvergenceError(PauliDiscrimError, RuntimeError):
    """An iterative routine failed to converge."""
