"""
Exceptions raised by the deformed calculus and the distribution engine
"""
from typing import Optional


class DeformedError(Exception):
    """Base class for all engine errors"""


class DomainError(DeformedError, ValueError):
    """A precondition on indices, parameters or scheme was violated"""


class OutOfSupportError(DomainError):
    """A PMF, marginal or conditional was queried outside its support"""

    def __init__(self, family: str, point: tuple):
        self.family = family
        self.point = point
        super().__init__(f"{family}: point {point} is outside the support")


class TruncationError(DeformedError):
    """The truncation window search could not capture the required mass"""

    def __init__(self, message: str, bound: Optional[int] = None,
                 captured_mass: Optional[float] = None):
        self.bound = bound
        self.captured_mass = captured_mass
        super().__init__(message)
