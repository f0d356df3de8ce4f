"""
Joint PMFs of the four trinomial families with their marginals and conditionals
"""
import logging
import math
from typing import Callable

from deformed.errors import DomainError, OutOfSupportError, TruncationError
from deformed.numbers import gbc2, negative_trinomial_coeff, trinomial_coeff
from deformed.shifted import oplus_pow, ominus_pow
from deformed.summation import CompensatedSum
from distributions.laws import pmf_binomial1, pmf_binomial2, pmf_negbin1, pmf_negbin2
from models.distribution import DistributionSpec, Family, PmfReading

logger = logging.getLogger(__name__)

SERIES_TAIL_TOL = 1e-15
SERIES_MAX_TERMS = 10000


def _require(spec: DistributionSpec, family: Family):
    if spec.family != family:
        raise DomainError(f"expected a {family.value} spec, got {spec.family.value}")


def _check_point(spec: DistributionSpec, y1: int, y2: int):
    if y1 < 0 or y2 < 0 or (not spec.family.negative and y1 + y2 > spec.n):
        raise OutOfSupportError(spec.family.value, (y1, y2))


def pmf_t1(spec: DistributionSpec, y1: int, y2: int) -> float:
    """Trinomial law of the first kind"""
    _require(spec, Family.T1)
    _check_point(spec, y1, y2)
    s, n = spec.scheme, spec.n
    if spec.reading == PmfReading.NORMALIZED:
        return (pmf_binomial1(s, n, spec.a1, y1)
                * pmf_binomial1(s, n - y1, spec.a2, y2))
    return (trinomial_coeff(s, n, y1, y2) * spec.a1 ** y1 * spec.a2 ** y2
            * s.phi1 ** (gbc2(n - y1) + gbc2(n - y2))
            * s.phi2 ** (gbc2(y1) + gbc2(y2))
            / (oplus_pow(s, 1.0, spec.a1, n) * oplus_pow(s, 1.0, spec.a2, n - y1)))


def pmf_nt1(spec: DistributionSpec, w1: int, w2: int) -> float:
    """Negative trinomial law of the first kind (successes before the n-th failure)"""
    _require(spec, Family.NT1)
    _check_point(spec, w1, w2)
    s, n = spec.scheme, spec.n
    if spec.reading == PmfReading.NORMALIZED:
        return (pmf_negbin1(s, n, spec.a2, w2)
                * pmf_negbin1(s, n + w2, spec.a1, w1))
    return (negative_trinomial_coeff(s, n, w1, w2) * spec.a1 ** w1 * spec.a2 ** w2
            * s.phi1 ** (gbc2(n - w1) + gbc2(n - w2))
            * s.phi2 ** (gbc2(w1) + gbc2(w2))
            / (oplus_pow(s, 1.0, spec.a1, n + w1 + w2) * oplus_pow(s, 1.0, spec.a2, n + w2)))


def pmf_t2(spec: DistributionSpec, x1: int, x2: int) -> float:
    """Trinomial law of the second kind"""
    _require(spec, Family.T2)
    _check_point(spec, x1, x2)
    s, n = spec.scheme, spec.n
    if spec.reading == PmfReading.NORMALIZED:
        return (pmf_binomial2(s, n, spec.a1, x1)
                * pmf_binomial2(s, n - x1, spec.a2, x2))
    return (trinomial_coeff(s, n, x1, x2) * spec.a1 ** x1 * spec.a2 ** x2
            * ominus_pow(s, 1.0, spec.a1, n - x1)
            * ominus_pow(s, 1.0, spec.a2, n - x1 - x2))


def pmf_nt2(spec: DistributionSpec, v1: int, v2: int) -> float:
    """Negative trinomial law of the second kind"""
    _require(spec, Family.NT2)
    _check_point(spec, v1, v2)
    s, n = spec.scheme, spec.n
    if spec.reading == PmfReading.NORMALIZED:
        return (pmf_negbin2(s, n, spec.a2, v2)
                * pmf_negbin2(s, n + v2, spec.a1, v1))
    return (negative_trinomial_coeff(s, n, v1, v2) * spec.a1 ** v1 * spec.a2 ** v2
            * ominus_pow(s, 1.0, spec.a1, n + v2) * ominus_pow(s, 1.0, spec.a2, n))


_PMFS = {
    Family.T1: pmf_t1,
    Family.NT1: pmf_nt1,
    Family.T2: pmf_t2,
    Family.NT2: pmf_nt2,
}


def pmf(spec: DistributionSpec, y1: int, y2: int) -> float:
    """Joint PMF of any family"""
    return _PMFS[spec.family](spec, y1, y2)


def series_total(term: Callable[[int], float], label: str, tail_tol: float = SERIES_TAIL_TOL,
                 max_terms: int = SERIES_MAX_TERMS) -> float:
    """Sum term(0), term(1), ... until the partial sums settle"""
    total = CompensatedSum()
    k, quiet = 0, 0
    while quiet < 3:
        if k >= max_terms:
            raise TruncationError(f"{label}: series did not settle within {max_terms} terms",
                                  bound=k, captured_mass=total.value)
        value = term(k)
        if not math.isfinite(value):
            raise TruncationError(f"{label}: non-finite term at index {k}",
                                  bound=k, captured_mass=total.value)
        total.add(value)
        quiet = quiet + 1 if abs(value) <= tail_tol * max(abs(total.value), 1e-300) else 0
        k += 1
    logger.debug(f"{label}: series settled after {k} terms")
    return total.value


def marginal1(spec: DistributionSpec, y1: int) -> float:
    """Marginal law of the first coordinate"""
    if y1 < 0 or (not spec.family.negative and y1 > spec.n):
        raise OutOfSupportError(spec.family.value, (y1,))
    if spec.reading == PmfReading.NORMALIZED:
        if spec.family == Family.T1:
            return pmf_binomial1(spec.scheme, spec.n, spec.a1, y1)
        if spec.family == Family.T2:
            return pmf_binomial2(spec.scheme, spec.n, spec.a1, y1)
    if spec.family.negative:
        return series_total(lambda k: pmf(spec, y1, k), f"{spec.label} marginal1({y1})")
    return math.fsum(pmf(spec, y1, k) for k in range(spec.n - y1 + 1))


def marginal2(spec: DistributionSpec, y2: int) -> float:
    """Marginal law of the second coordinate"""
    if y2 < 0 or (not spec.family.negative and y2 > spec.n):
        raise OutOfSupportError(spec.family.value, (y2,))
    if spec.reading == PmfReading.NORMALIZED:
        if spec.family == Family.NT1:
            return pmf_negbin1(spec.scheme, spec.n, spec.a2, y2)
        if spec.family == Family.NT2:
            return pmf_negbin2(spec.scheme, spec.n, spec.a2, y2)
    if spec.family.negative:
        return series_total(lambda k: pmf(spec, k, y2), f"{spec.label} marginal2({y2})")
    return math.fsum(pmf(spec, k, y2) for k in range(spec.n - y2 + 1))


def conditional2(spec: DistributionSpec, y2: int, given_y1: int) -> float:
    """Law of the second coordinate given the first"""
    _check_point(spec, given_y1, y2)
    if spec.reading == PmfReading.NORMALIZED:
        s, n = spec.scheme, spec.n
        if spec.family == Family.T1:
            return pmf_binomial1(s, n - given_y1, spec.a2, y2)
        if spec.family == Family.T2:
            return pmf_binomial2(s, n - given_y1, spec.a2, y2)
    return pmf(spec, given_y1, y2) / marginal1(spec, given_y1)


def conditional1(spec: DistributionSpec, y1: int, given_y2: int) -> float:
    """Law of the first coordinate given the second"""
    _check_point(spec, y1, given_y2)
    if spec.reading == PmfReading.NORMALIZED:
        s, n = spec.scheme, spec.n
        if spec.family == Family.NT1:
            return pmf_negbin1(s, n + given_y2, spec.a1, y1)
        if spec.family == Family.NT2:
            return pmf_negbin2(s, n + given_y2, spec.a1, y1)
    return pmf(spec, y1, given_y2) / marginal2(spec, given_y2)
