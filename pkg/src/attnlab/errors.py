"""Exception types shared across the package."""


class StructuralError(ValueError):
    """An input violates a structural contract (shape, symmetry, labeling)."""


class DomainError(ValueError):
    """A value lies outside the mathematical domain of an operation."""


class NumericalError(RuntimeError):
    """An iterative computation diverged or failed to converge."""


class ConfigError(ValueError):
    """A run configuration or input document cannot be used."""
