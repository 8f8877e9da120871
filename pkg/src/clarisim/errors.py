"""Exception types shared across the simulator."""


class ClariError(ValueError):
    """Base class for model and configuration errors."""


class RangeError(ClariError):
    """An input lies outside its permitted interval."""


class InfeasibleShapeError(ClariError):
    """Requested body dimensions are outside the reachable set."""


class InfeasiblePassageError(InfeasibleShapeError):
    """A clearance is narrower than the body can compress to."""


class ConfigError(ClariError):
    """Malformed or inconsistent scenario configuration."""
