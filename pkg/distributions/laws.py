"""
Univariate binomial and negative binomial laws of the first and second kind
"""
import math
from typing import Optional, Union

import numpy as np

from deformed.errors import DomainError, OutOfSupportError
from deformed.numbers import binomial, gbc2
from deformed.shifted import oplus_pow, ominus_pow
from models.distribution import PmfReading
from models.scheme import DeformationScheme


def _check_count(law: str, value: int, upper: Optional[int] = None):
    if value < 0 or (upper is not None and value > upper):
        raise OutOfSupportError(law, (value,))


def pmf_binomial1(s: DeformationScheme, n: int, alpha: float, y: int,
                  reading: PmfReading = PmfReading.NORMALIZED) -> float:
    """Binomial law of the first kind; both readings coincide"""
    _check_count("binomial1", y, n)
    return (binomial(s, n, y) * alpha ** y
            * s.phi1 ** gbc2(n - y) * s.phi2 ** gbc2(y)
            / oplus_pow(s, 1.0, alpha, n))


def pmf_binomial2(s: DeformationScheme, n: int, beta: float, x: int,
                  reading: PmfReading = PmfReading.NORMALIZED) -> float:
    """Binomial law of the second kind"""
    _check_count("binomial2", x, n)
    value = binomial(s, n, x) * beta ** x * ominus_pow(s, 1.0, beta, n - x)
    if PmfReading(reading) == PmfReading.NORMALIZED:
        value *= s.phi1 ** (gbc2(x) - gbc2(n))
    return value


def pmf_negbin1(s: DeformationScheme, n: int, alpha: float, u: int,
                reading: PmfReading = PmfReading.NORMALIZED) -> float:
    """Law of the success count before the n-th failure, first kind"""
    _check_count("negbin1", u)
    if PmfReading(reading) == PmfReading.NORMALIZED:
        phi1_power = gbc2(n) + u
    else:
        phi1_power = gbc2(n - u)
    return (binomial(s, n + u - 1, u) * alpha ** u
            * s.phi1 ** phi1_power * s.phi2 ** gbc2(u)
            / oplus_pow(s, 1.0, alpha, n + u))


def pmf_negbin2(s: DeformationScheme, n: int, beta: float, t: int,
                reading: PmfReading = PmfReading.NORMALIZED) -> float:
    """Negative binomial law of the second kind"""
    _check_count("negbin2", t)
    value = binomial(s, n + t - 1, t) * beta ** t * ominus_pow(s, 1.0, beta, n)
    if PmfReading(reading) == PmfReading.NORMALIZED:
        value *= s.phi1 ** (-t * (n - 1) - gbc2(n))
    return value


IntArray = Union[int, np.ndarray]


def _gbc2_array(x: IntArray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    return (x * (x - 1) // 2).astype(float)


class LogTables:
    """Log-space tables of deformed factorials and shifted factorials for one scheme

    Negative families need products of a few hundred factors; they are kept as
    sums of logs so the truncation search never overflows.
    """

    def __init__(self, s: DeformationScheme, upto: int):
        self.scheme = s
        self.upto = upto
        self.log_phi1 = math.log(s.phi1)
        self.log_phi2 = math.log(s.phi2)
        k = np.arange(upto + 1, dtype=float)
        log_number = np.full(upto + 1, -np.inf)
        if s.limit_mode:
            log_number[1:] = np.log(k[1:]) + (k[1:] - 1) * self.log_phi1 - math.log(abs(s.D))
            positive = s.D > 0
        else:
            hi, lo = max(self.log_phi1, self.log_phi2), min(self.log_phi1, self.log_phi2)
            log_number[1:] = (k[1:] * hi + np.log1p(-np.exp(k[1:] * (lo - hi)))
                              - math.log(abs(s.D)))
            positive = (s.phi1 > s.phi2) == (s.D > 0)
        if not positive:
            raise DomainError(f"{s.label}: deformed numbers are not positive")
        self.log_number = log_number
        self.log_factorial = np.concatenate(([0.0], np.cumsum(log_number[1:])))

    def log_binomial(self, n: IntArray, k: IntArray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        k = np.asarray(k, dtype=np.int64)
        return self.log_factorial[n] - self.log_factorial[k] - self.log_factorial[n - k]

    def log_oplus(self, v: float, upto: int) -> np.ndarray:
        """Cumulative log of (1 (+) v)^K for K = 0..upto"""
        i = np.arange(upto, dtype=float)
        factors = np.logaddexp(i * self.log_phi1, math.log(v) + i * self.log_phi2)
        return np.concatenate(([0.0], np.cumsum(factors)))

    def log_ominus(self, v: float, upto: int) -> np.ndarray:
        """Cumulative log of (1 (-) v)^K for K = 0..upto; every factor must be positive"""
        i = np.arange(upto, dtype=float)
        head = i * self.log_phi1
        tail = math.log(v) + i * self.log_phi2
        if np.any(tail >= head):
            first = int(np.argmax(tail >= head)) + 1
            raise DomainError(f"{self.scheme.label}: second-kind factor {first} of "
                              f"(1 - {v:g}) is not positive; the law is signed")
        factors = head + np.log1p(-np.exp(tail - head))
        return np.concatenate(([0.0], np.cumsum(factors)))

    def log_negbin1(self, n: IntArray, alpha: float, u: IntArray,
                    reading: PmfReading = PmfReading.NORMALIZED) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        u = np.asarray(u, dtype=np.int64)
        if PmfReading(reading) == PmfReading.NORMALIZED:
            phi1_power = _gbc2_array(n) + u
        else:
            phi1_power = _gbc2_array(n - u)
        oplus = self.log_oplus(alpha, int(np.max(n + u)))
        return (self.log_binomial(n + u - 1, u) + u * math.log(alpha)
                + phi1_power * self.log_phi1 + _gbc2_array(u) * self.log_phi2
                - oplus[n + u])

    def log_negbin2(self, n: IntArray, beta: float, t: IntArray,
                    reading: PmfReading = PmfReading.NORMALIZED) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        t = np.asarray(t, dtype=np.int64)
        ominus = self.log_ominus(beta, int(np.max(n)))
        value = self.log_binomial(n + t - 1, t) + t * math.log(beta) + ominus[n]
        if PmfReading(reading) == PmfReading.NORMALIZED:
            value = value + (-t * (n - 1) - _gbc2_array(n)) * self.log_phi1
        return value

    def log_negative_trinomial(self, n: int, w1: np.ndarray, w2: np.ndarray) -> np.ndarray:
        return (self.log_factorial[n + w1 + w2 - 1] - self.log_factorial[w1]
                - self.log_factorial[w2] - self.log_factorial[n - 1])


def log_nt1_grid(tables: LogTables, n: int, a1: float, a2: float, w1: np.ndarray,
                 w2: np.ndarray, reading: PmfReading = PmfReading.NORMALIZED) -> np.ndarray:
    """Log weights of the negative first-kind law on broadcast index arrays"""
    if PmfReading(reading) == PmfReading.NORMALIZED:
        return (tables.log_negbin1(n, a2, w2)
                + tables.log_negbin1(n + w2, a1, w1))
    upto = int(np.max(n + w1 + w2))
    oplus1 = tables.log_oplus(a1, upto)
    oplus2 = tables.log_oplus(a2, upto)
    return (tables.log_negative_trinomial(n, w1, w2)
            + w1 * math.log(a1) + w2 * math.log(a2)
            + (_gbc2_array(n - w1) + _gbc2_array(n - w2)) * tables.log_phi1
            + (_gbc2_array(w1) + _gbc2_array(w2)) * tables.log_phi2
            - oplus1[n + w1 + w2] - oplus2[n + w2])


def log_nt2_grid(tables: LogTables, n: int, b1: float, b2: float, v1: np.ndarray,
                 v2: np.ndarray, reading: PmfReading = PmfReading.NORMALIZED) -> np.ndarray:
    """Log weights of the negative second-kind law on broadcast index arrays"""
    if PmfReading(reading) == PmfReading.NORMALIZED:
        return (tables.log_negbin2(n, b2, v2)
                + tables.log_negbin2(n + v2, b1, v1))
    upto = int(np.max(n + v2))
    ominus1 = tables.log_ominus(b1, upto)
    ominus2 = tables.log_ominus(b2, n)
    return (tables.log_negative_trinomial(n, v1, v2)
            + v1 * math.log(b1) + v2 * math.log(b2)
            + ominus1[n + v2] + ominus2[n])
