"""
Barnette Toolkit Exceptions

Custom exception hierarchy shared by every pipeline stage.
"""

from typing import Optional


class BarnetteError(Exception):
    """Base exception for all toolkit errors."""
    pass


class EmbeddingError(BarnetteError):
    """Raised when a rotation system is not a valid plane cubic embedding."""
    pass


class PlanarCodeError(BarnetteError):
    """Raised when a planar_code or edge-list stream cannot be decoded."""
    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class ReductionError(BarnetteError):
    """Raised when a reduction site does not match the requested reduction."""
    pass


class LiftError(BarnetteError):
    """Raised when a reduced cycle traverses a site in a way the lift table does not cover."""
    pass


class FactorInvalid(BarnetteError):
    """Raised when a grey-and-white coloring does not yield a usable 2-factor."""
    pass


class ClusterUnresolvable(BarnetteError):
    """Raised when the local search cannot repair the coloring inside a configuration."""
    def __init__(self, faces, budget: Optional[int] = None):
        self.faces = tuple(sorted(faces))
        self.budget = budget
        message = f"No valid extension inside configuration {list(self.faces)}"
        if budget is not None:
            message += f" within {budget} search nodes"
        super().__init__(message)


class NotApplicable(BarnetteError):
    """Raised when a parity operation's side conditions do not hold at a site."""
    pass


class CapExceeded(BarnetteError):
    """Raised when exact search is asked to handle a graph above its size cap."""
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"Graph with {n} vertices exceeds exact search cap {cap}")


class GlueError(BarnetteError):
    """Raised when the resonant-hexagon gluing loop cannot make progress."""
    def __init__(self, message: str, step: Optional[int] = None):
        self.step = step
        if step is not None:
            message = f"{message} (glue step {step})"
        super().__init__(message)
