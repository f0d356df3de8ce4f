"""
Compensated summation for series and oracle expectations
"""
import math
from typing import Iterable, Tuple

import numpy as np


def two_sum(u: float, v: float) -> Tuple[float, float]:
    """Error-free transformation: u + v == s + t exactly"""
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    return s, -(up + vpp)


class CompensatedSum:
    """Running sum carrying the rounding error of every addition"""

    def __init__(self, value: float = 0.0):
        self._sum = float(value)
        self._error = 0.0

    def add(self, value: float) -> 'CompensatedSum':
        self._sum, error = two_sum(self._sum, float(value))
        self._error += error
        return self

    def extend(self, values: Iterable[float]) -> 'CompensatedSum':
        for value in values:
            self.add(value)
        return self

    @property
    def value(self) -> float:
        return self._sum + self._error


def compensated_total(values) -> float:
    """Correctly rounded sum of an array in C order"""
    array = np.asarray(values, dtype=float).ravel()
    return math.fsum(array.tolist())
