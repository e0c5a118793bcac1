"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class InconsistencyError(ValueError):
    """Inputs are individually valid but do not come from one family member."""


class InadmissibleError(ValueError):
    """A curvature state violates one of the strict admissibility inequalities."""


class IntegrationError(RuntimeError):
    """The ODE integrator gave up; ``partial`` holds the profile computed so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
