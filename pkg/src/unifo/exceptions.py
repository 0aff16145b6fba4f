"""Exception types shared across the library."""


class UnifoError(Exception):
    """Base class for library errors."""


class CapabilityError(UnifoError):
    """A (feasible set, composite term, scaling) combination has no supported
    closed form or exact subroutine."""


class LineSearchError(UnifoError):
    """A backtracking line search exhausted its budget.

    Usually signals an inconsistent oracle (gradient not matching values) or a
    shrink factor too close to 1.
    """

    def __init__(self, message, iteration=None, backtracks=None):
        super().__init__(message)
        self.iteration = iteration
        self.backtracks = backtracks


class ProjectionError(UnifoError):
    """A projection subproblem failed numerically (ill-conditioned cut Gram
    matrix or non-converging active set)."""
