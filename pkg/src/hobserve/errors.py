"""Exception hierarchy shared by the library and the CLI."""


class HObserveError(Exception):
    """Base class for all library errors."""


class SingularMatrixError(HObserveError):
    """Raised when elimination finds no usable pivot."""


class ConvergenceError(HObserveError):
    """Raised when the eigenvalue iteration does not converge."""


class NotObservableError(HObserveError):
    """Raised when a design step needs an observable pair and gets none."""


class NoncentralTargetError(HObserveError):
    """Raised when a formula that needs real coefficients gets quaternionic ones."""


class DegreeError(HObserveError):
    """Raised for degree mismatches and degree-budget violations."""


class UnsupportedRootsError(HObserveError):
    """Raised when a root set cannot be turned into a polynomial."""


class NotARootError(HObserveError):
    """Raised when a supposed right zero leaves a large residual."""


class DivergenceError(HObserveError):
    """Raised when a simulation produces non-finite states."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"non-finite state at step {step}")
