"""Exception hierarchy shared by all modules."""


class NoiseTempError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NoiseTempError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(NoiseTempError, ValueError):
    """A state, spectrum or input file failed validation."""


class DivergenceError(NoiseTempError, ArithmeticError):
    """A partition sum does not converge at the requested temperature."""


class AccuracyError(NoiseTempError, ArithmeticError):
    """A numerical routine could not reach its tolerance."""


class SolverError(NoiseTempError, RuntimeError):
    """Root finding failed to bracket or converge."""


class UnattainableEntropyError(DomainError):
    """Requested entropy is at or above the spectrum's supremum."""

    def __init__(self, target, supremum):
        self.target = target
        self.supremum = supremum
        super().__init__(
            f"entropy {target!r} nats is unattainable; supremum is {supremum!r} nats"
        )
