"""Exception types shared across the simulation modules."""


class SolverError(RuntimeError):
    """A run aborted: step underflow, domain violation, or truncation failure."""


class SolverCrossCheckError(RuntimeError):
    """Two independent computation routes disagreed beyond tolerance."""
