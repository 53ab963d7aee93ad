class ConfigError(ValueError):
    """Invalid scenario, sweep or grid configuration."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (non-convergence, no crossing, ...)."""


class PoleSearchError(NumericalError):
    """Pole search stopped early; ``partial`` holds the poles already located."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
