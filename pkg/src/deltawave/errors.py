"""Exception hierarchy."""


class SimulatorError(Exception):
    """Base class for all errors raised by deltawave."""


class ConfigError(SimulatorError, ValueError):
    """Invalid parameters or malformed configuration input."""


class DomainError(SimulatorError, ValueError):
    """A closed-form expression was requested outside its regime of validity."""


class DegenerateSteadyState(SimulatorError):
    """The Liouvillian kernel is not one-dimensional."""


class NonPhysicalResult(SimulatorError):
    """A computed state violates Hermiticity, trace or positivity."""


class StepTooLarge(SimulatorError, ValueError):
    """Integrator step exceeds the stability bound."""
