"""
Deformed shifted factorials (u (+) v)^n and (u (-) v)^n
"""
import operator

import numpy as np

from deformed.errors import DomainError
from models.scheme import DeformationScheme


def _shifted(s: DeformationScheme, u: float, v: float, n: int, sign: float) -> float:
    n = operator.index(n)
    if n < 0:
        raise DomainError(f"shifted factorial order must be >= 0, got {n}")
    result = 1.0
    for i in range(n):
        result *= u * s.phi1 ** i + sign * v * s.phi2 ** i
    return result


def oplus_pow(s: DeformationScheme, u: float, v: float, n: int) -> float:
    """Product of (u phi1^(i-1) + v phi2^(i-1)) for i = 1..n"""
    return _shifted(s, u, v, n, 1.0)


def ominus_pow(s: DeformationScheme, u: float, v: float, n: int) -> float:
    """Product of (u phi1^(i-1) - v phi2^(i-1)) for i = 1..n"""
    return _shifted(s, u, v, n, -1.0)


def shifted_array(s: DeformationScheme, u: np.ndarray, v: np.ndarray, n: int,
                  sign: float = 1.0) -> np.ndarray:
    """Elementwise shifted factorial of order n over arrays of u and v"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    result = np.ones(np.broadcast(u, v).shape, dtype=float)
    for i in range(n):
        result = result * (u * s.phi1 ** i + sign * v * s.phi2 ** i)
    return result
