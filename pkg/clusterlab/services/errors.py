"""Exception hierarchy shared by the clusterlab services."""


class ClusterLabError(Exception):
    """Base class for all clusterlab errors."""


class InputError(ClusterLabError):
    """Raised for malformed user input (maps to exit code 2)."""


class DefectError(ClusterLabError):
    """Raised when a mathematical invariant fails; signals a bug, not bad input."""
