"""Exception types shared across the package.

Plain precondition violations (bad arguments, dimension mismatches) raise
ValueError; the classes below mark failures that callers may want to map to
distinct exit paths.
"""


class NearisoError(Exception):
    """Base class for structured failures raised by this package."""


class UnsupportedConstructionError(NearisoError):
    """No certifiable construction is available for the requested configuration."""


class ConvergenceError(NearisoError):
    """An iterative construction could not reach the requested tolerance."""
