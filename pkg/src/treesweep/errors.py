"""Exception types raised across the package."""


class TreesweepError(Exception):
    """Base class for all package-specific errors."""


class NotATreeError(TreesweepError):
    """Edge list does not describe a connected acyclic graph.

    The ``reason`` attribute is one of ``"disconnected"``, ``"cycle"``,
    ``"duplicate edge"``, ``"self-loop"`` or ``"bad node id"``.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"not a tree ({reason})" + (f": {detail}" if detail else ""))


class DimensionMismatchError(TreesweepError):
    """Vector or matrix dimensions inconsistent with the problem."""


class SharingViolatesTreeError(TreesweepError):
    """A physical variable is shared between nodes that are not tree neighbors."""


class ProtocolViolationError(TreesweepError):
    """A node received a message that its protocol state cannot accept."""


class RankDeficientCouplingError(TreesweepError):
    """Coupling matrix does not have full row rank."""


class SingularReducedSystemError(TreesweepError):
    """The reduced system of a sensitivity computation is singular."""


class SingularRecursionError(TreesweepError):
    """Closed-form partial minimization hit a singular factorization."""


class NoConvergenceError(TreesweepError):
    """Centralized reference solve failed to converge."""


class NodeNeverSolvedError(TreesweepError):
    """Tried to decode a solution before every node solved at least once."""


class NotRadialError(TreesweepError):
    """Power grid data is not a radial (tree) network."""


class ParseError(TreesweepError):
    """Malformed problem or grid file."""


class InsufficientDataError(TreesweepError):
    """Not enough converged sweeps to fit a convergence order."""


class BudgetExceededError(TreesweepError):
    """Internal marker; simulators normally flag the report instead of raising."""
