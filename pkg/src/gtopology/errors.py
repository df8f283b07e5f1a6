"""Exception hierarchy shared by all modules."""


class GTopologyError(Exception):
    pass


class CarrierMismatchError(GTopologyError, ValueError):
    """Two operands live on different carriers."""


class PointError(GTopologyError, ValueError):
    """A point does not belong to the carrier."""


class HeterogeneousMapsError(GTopologyError, TypeError):
    pass


class BudgetExceededError(GTopologyError):
    """A size or search budget was exhausted."""


class WindowTooSmallError(GTopologyError):
    def __init__(self, step: int, message: str | None = None):
        self.step = step
        super().__init__(message or f"window too small at step {step}")


class HypothesisViolatedError(GTopologyError, ValueError):
    pass


class ConfigError(GTopologyError, ValueError):
    """Malformed run configuration. ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
