"""
Deformed numbers, factorials and coefficients on a two-basis scheme
"""
import operator
from functools import lru_cache

import numpy as np

from deformed.errors import DomainError
from models.scheme import DeformationScheme


def gbc2(x: int) -> int:
    """x(x-1)/2 extended to every integer"""
    x = operator.index(x)
    return x * (x - 1) // 2


@lru_cache(maxsize=65536)
def number(s: DeformationScheme, n: int) -> float:
    """Deformed number [n] = (phi1^n - phi2^n) / D"""
    n = operator.index(n)
    if n < 0:
        raise DomainError(f"deformed number needs n >= 0, got {n}")
    if n == 0:
        return 0.0
    if s.limit_mode:
        return n * s.phi1 ** (n - 1) / s.D
    return (s.phi1 ** n - s.phi2 ** n) / s.D


def number_table(s: DeformationScheme, upto: int) -> np.ndarray:
    """Array of [0], [1], ..., [upto]"""
    return np.array([number(s, k) for k in range(upto + 1)], dtype=float)


@lru_cache(maxsize=4096)
def factorial(s: DeformationScheme, n: int) -> float:
    """Deformed factorial [n]! = [1][2]...[n]"""
    n = operator.index(n)
    if n < 0:
        raise DomainError(f"deformed factorial needs n >= 0, got {n}")
    result = 1.0
    for k in range(1, n + 1):
        result *= number(s, k)
    return result


@lru_cache(maxsize=65536)
def binomial(s: DeformationScheme, n: int, k: int) -> float:
    """Deformed binomial coefficient [n]! / ([k]! [n-k]!)"""
    n, k = operator.index(n), operator.index(k)
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial needs 0 <= k <= n, got n={n}, k={k}")
    # product of ratios keeps every partial result near the coefficient's magnitude
    k = min(k, n - k)
    result = 1.0
    for i in range(1, k + 1):
        result *= number(s, n - k + i) / number(s, i)
    return result


def trinomial_coeff(s: DeformationScheme, n: int, y1: int, y2: int) -> float:
    """[n]! / ([y1]! [y2]! [n-y1-y2]!)"""
    if y1 < 0 or y2 < 0 or y1 + y2 > n:
        raise DomainError(f"trinomial coefficient needs y1, y2 >= 0 and y1 + y2 <= n, "
                          f"got n={n}, y=({y1}, {y2})")
    return binomial(s, n, y1) * binomial(s, n - y1, y2)


def negative_trinomial_coeff(s: DeformationScheme, n: int, w1: int, w2: int) -> float:
    """[n+w1+w2-1]! / ([w1]! [w2]! [n-1]!)"""
    if n < 1 or w1 < 0 or w2 < 0:
        raise DomainError(f"negative trinomial coefficient needs n >= 1 and w1, w2 >= 0, "
                          f"got n={n}, w=({w1}, {w2})")
    return binomial(s, n + w1 + w2 - 1, w1) * binomial(s, n + w2 - 1, w2)


def falling(s: DeformationScheme, u: int, r: int) -> float:
    """Falling factorial [u]_r = [u][u-1]...[u-r+1]"""
    u, r = operator.index(u), operator.index(r)
    if r < 0:
        raise DomainError(f"falling factorial order must be >= 0, got {r}")
    if u - r + 1 < 0:
        raise DomainError(f"falling factorial [{u}]_{r} uses a negative index")
    result = 1.0
    for i in range(r):
        result *= number(s, u - i)
    return result


def falling_or_zero(s: DeformationScheme, u: int, r: int) -> float:
    """Falling factorial of a count; zero when the count is below the order"""
    if u < 0:
        raise DomainError(f"count must be >= 0, got {u}")
    if u < r:
        return 0.0
    return falling(s, u, r)


def falling_array(s: DeformationScheme, counts: np.ndarray, r: int) -> np.ndarray:
    """Vectorized falling_or_zero over an array of nonnegative counts"""
    counts = np.asarray(counts, dtype=np.int64)
    result = np.ones(counts.shape, dtype=float)
    if r == 0:
        return result
    table = number_table(s, int(counts.max(initial=0)))
    for i in range(r):
        index = counts - i
        # a count below the order meets [0] before any negative index
        result *= np.where(index >= 0, table[np.clip(index, 0, None)], 1.0)
    return result
