"""Exception types shared across the package."""


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size cap.

    Raised instead of silently truncating (e.g. Pauli-group enumeration
    above the hard cap, dense propagation above the dense-size cap).
    """


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
