"""
Brute-force expectations over exact or truncated supports
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from deformed.errors import TruncationError
from deformed.precise import precise, precise_sum
from deformed.summation import compensated_total
from distributions.support import (
    ORACLE_TAIL_TOL, conditional_weights, conditional_window, precise_conditional,
    precise_weights, weight_grid, window_grid,
)
from models.distribution import DistributionSpec
from verify.transforms import Transform, TransformKind, corollary_pair

logger = logging.getLogger(__name__)

# doublings past the mass bound allowed for an expectation to settle
SETTLE_DOUBLINGS = 4


@dataclass(frozen=True)
class ExpectationQuery:
    """E(g(Y1, Y2)) under spec, optionally conditioned on the leading coordinate

    The leading coordinate is Y1 for T1/T2 and W2/V2 (the second one) for NT1/NT2.
    """
    spec: DistributionSpec
    transform: Transform
    tail_tol: float = ORACLE_TAIL_TOL
    given: Optional[int] = None


@dataclass(frozen=True)
class OracleValue:
    value: float
    captured_mass: float
    truncated: bool
    bound: int

    def to_dict(self) -> Dict:
        return {
            'value': self.value,
            'captured_mass': self.captured_mass,
            'truncated': self.truncated,
            'bound': self.bound
        }


def _weighted_total(values: np.ndarray, weights: np.ndarray) -> float:
    with np.errstate(over='ignore', invalid='ignore'):
        terms = np.where(weights != 0.0, values * weights, 0.0)
    return compensated_total(terms)


def _settle(label: str, bound: int, total_at: Callable[[int], float],
            tail_tol: float) -> Tuple[int, float]:
    """Double the window past the mass bound until the expectation stops moving"""
    value = total_at(bound)
    for _ in range(SETTLE_DOUBLINGS):
        if not math.isfinite(value):
            raise TruncationError(f"{label}: expectation diverges (non-finite at bound {bound})",
                                  bound=bound)
        wider = 2 * bound
        wider_value = total_at(wider)
        if abs(wider_value - value) <= tail_tol * max(abs(wider_value), abs(value)):
            logger.debug(f"{label}: expectation settled at bound {wider}")
            return wider, wider_value
        bound, value = wider, wider_value
    raise TruncationError(f"{label}: expectation did not settle by bound {bound} "
                          f"(last value {value!r})", bound=bound)


def _precise_expectation(spec: DistributionSpec, transform: Transform,
                         given: Optional[int]) -> Tuple[object, object]:
    """E(g) and the captured mass of a finite family in extended precision"""
    exact = spec.with_scheme(precise(spec.scheme))
    if given is None:
        points, weights = precise_weights(spec)
        terms = [w * transform.value_at(exact, *point) for point, w in zip(points, weights)]
    else:
        values, weights = precise_conditional(spec, given)
        terms = [w * transform.value_at(exact, given, v) for v, w in zip(values, weights)]
    return precise_sum(terms), precise_sum(weights)


def evaluate_query(query: ExpectationQuery) -> OracleValue:
    """Sum g(y) * weight(y) over the support in a fixed order"""
    spec, transform, given = query.spec, query.transform, query.given
    label = f"{spec.label} E[{transform.label}] given {given}"
    if not spec.family.negative:
        total, mass = _precise_expectation(spec, transform, given)
        result = OracleValue(float(total), float(mass), False,
                             spec.n if given is None else spec.n - given)
    elif given is None:
        def total_at(bound: int) -> float:
            grid = window_grid(spec, bound)
            return _weighted_total(transform.evaluate(spec, grid.y1, grid.y2), grid.weights)

        start = weight_grid(spec, query.tail_tol).bound
        bound, total = _settle(label, start, total_at, query.tail_tol)
        result = OracleValue(total, window_grid(spec, bound).captured_mass, True, bound)
    else:
        def total_at(bound: int) -> float:
            law = conditional_window(spec, given, bound)
            leader = np.full(law.values.shape, given, dtype=np.int64)
            return _weighted_total(transform.evaluate(spec, law.values, leader), law.weights)

        start = conditional_weights(spec, given, query.tail_tol).bound
        bound, total = _settle(label, start, total_at, query.tail_tol)
        result = OracleValue(total, conditional_window(spec, given, bound).captured_mass,
                             True, bound)
    logger.debug(f"{label} = {result.value!r}")
    return result


def expect(query: ExpectationQuery) -> float:
    return evaluate_query(query).value


def expect_conditional(spec: DistributionSpec, transform: Transform, given: int,
                       tail_tol: float = ORACLE_TAIL_TOL) -> float:
    """E(g | leading coordinate = given)"""
    return expect(ExpectationQuery(spec, transform, tail_tol, given))


def oracle_covariance(spec: DistributionSpec, left: Transform, right: Transform,
                      tail_tol: float = ORACLE_TAIL_TOL) -> float:
    """E(LR) - E(L)E(R) from one weight table"""
    if not spec.family.negative:
        exact = spec.with_scheme(precise(spec.scheme))
        points, weights = precise_weights(spec)
        lv = [left.value_at(exact, *point) for point in points]
        rv = [right.value_at(exact, *point) for point in points]
        both = precise_sum(w * a * b for w, a, b in zip(weights, lv, rv))
        return float(both - precise_sum(w * a for w, a in zip(weights, lv))
                     * precise_sum(w * b for w, b in zip(weights, rv)))

    def total_at(bound: int) -> float:
        grid = window_grid(spec, bound)
        lv = left.evaluate(spec, grid.y1, grid.y2)
        rv = right.evaluate(spec, grid.y1, grid.y2)
        both = _weighted_total(lv * rv, grid.weights)
        return both - _weighted_total(lv, grid.weights) * _weighted_total(rv, grid.weights)

    label = f"{spec.label} Cov[{left.label}, {right.label}]"
    _, value = _settle(label, weight_grid(spec, tail_tol).bound, total_at, tail_tol)
    return value


def corollary_covariance(spec: DistributionSpec, kind: TransformKind,
                         tail_tol: float = ORACLE_TAIL_TOL) -> float:
    left, right = corollary_pair(kind)
    return oracle_covariance(spec, left, right, tail_tol)
