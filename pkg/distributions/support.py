"""
Support enumeration and truncation windows for the trinomial families
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from deformed.errors import DomainError, TruncationError
from deformed.precise import precise, precise_sum
from deformed.summation import compensated_total
from distributions.laws import LogTables, log_nt1_grid, log_nt2_grid
from distributions.pmf import pmf
from models.distribution import DistributionSpec, Family, PmfReading, PmfTable, Point
from models.scheme import DeformationScheme

logger = logging.getLogger(__name__)

TABLE_TAIL_TOL = 1e-8
ORACLE_TAIL_TOL = 1e-10
INITIAL_BOUND = 8
MAX_SUPPORT = 10000
# an increment below this share of the missing mass means the law is defective
STALL_RATIO = 0.01


@dataclass(frozen=True)
class WeightGrid:
    """Support points with (possibly signed) weights, in y1-major order"""
    y1: np.ndarray
    y2: np.ndarray
    weights: np.ndarray
    truncated: bool
    bound: int
    captured_mass: float


def _freeze(*arrays: np.ndarray):
    for array in arrays:
        array.setflags(write=False)


def _require_finite(spec: DistributionSpec):
    if spec.family.negative:
        raise DomainError(f"{spec.label}: extended-precision weights need a finite family")


@lru_cache(maxsize=1024)
def precise_weights(spec: DistributionSpec) -> Tuple[Tuple[Point, ...], tuple]:
    """Support of a finite family with its weights in extended precision

    Signed second-kind laws cancel heavily; the float weights and the captured
    mass are rounded from these values.
    """
    _require_finite(spec)
    exact = spec.with_scheme(precise(spec.scheme))
    points = tuple((y1, y2) for y1 in range(spec.n + 1) for y2 in range(spec.n - y1 + 1))
    return points, tuple(pmf(exact, *point) for point in points)


@lru_cache(maxsize=4096)
def precise_conditional(spec: DistributionSpec, given: int) -> Tuple[Tuple[int, ...], tuple]:
    """Second coordinate of a finite family given the first, in extended precision"""
    _require_finite(spec)
    exact = spec.with_scheme(precise(spec.scheme))
    values = tuple(range(spec.n - given + 1))
    joint = [pmf(exact, given, v) for v in values]
    total = precise_sum(joint)
    return values, tuple(w / total for w in joint)


def _finite_grid(spec: DistributionSpec) -> WeightGrid:
    points, exact = precise_weights(spec)
    y1 = np.array([point[0] for point in points], dtype=np.int64)
    y2 = np.array([point[1] for point in points], dtype=np.int64)
    weights = np.array([float(w) for w in exact], dtype=float)
    _freeze(y1, y2, weights)
    return WeightGrid(y1, y2, weights, False, spec.n, float(precise_sum(exact)))


def _log_weights(spec: DistributionSpec, tables: LogTables, w1: np.ndarray,
                 w2: np.ndarray) -> np.ndarray:
    if spec.family == Family.NT1:
        return log_nt1_grid(tables, spec.n, spec.a1, spec.a2, w1, w2, spec.reading)
    return log_nt2_grid(tables, spec.n, spec.a1, spec.a2, w1, w2, spec.reading)


@lru_cache(maxsize=8)
def window_grid(spec: DistributionSpec, bound: int) -> WeightGrid:
    """Weights of a negative family on the square window [0, bound]^2"""
    tables = LogTables(spec.scheme, spec.n + 2 * bound + 1)
    index = np.arange(bound + 1, dtype=np.int64)
    with np.errstate(over='ignore', invalid='ignore'):
        weights = np.exp(_log_weights(spec, tables, index[:, None], index[None, :]))
    y1 = np.repeat(index, bound + 1)
    y2 = np.tile(index, bound + 1)
    flat = np.ascontiguousarray(weights).ravel()
    _freeze(y1, y2, flat)
    return WeightGrid(y1, y2, flat, True, bound, compensated_total(flat))


def _search_bound(label: str, reading: PmfReading, evaluate: Callable[[int], np.ndarray],
                  tail_tol: float, max_support: int, initial_bound: int) -> Tuple[int, float]:
    """Double the window until the captured mass reaches 1 - tail_tol

    For the printed reading the target is unknown, so the search stops once
    doubling changes the mass by less than tail_tol.
    """
    bound = initial_bound
    previous: Optional[float] = None
    while True:
        if bound > max_support:
            raise TruncationError(f"{label}: truncation bound exceeded the cap {max_support}",
                                  bound=bound // 2, captured_mass=previous)
        mass = compensated_total(evaluate(bound))
        logger.debug(f"{label}: bound {bound} captures mass {mass!r}")
        if not math.isfinite(mass):
            raise TruncationError(f"{label}: series diverges (non-finite mass at bound {bound})",
                                  bound=bound, captured_mass=mass)
        if reading == PmfReading.PRINTED:
            if previous is not None and abs(mass - previous) <= tail_tol * max(1.0, abs(mass)):
                return bound, mass
        else:
            if mass > 1.0 + tail_tol:
                raise TruncationError(f"{label}: series diverges (mass {mass!r} exceeds 1)",
                                      bound=bound, captured_mass=mass)
            if mass >= 1.0 - tail_tol:
                return bound, mass
            if previous is not None and mass - previous < STALL_RATIO * (1.0 - tail_tol - mass):
                raise TruncationError(f"{label}: defective law, mass stalls at {mass!r}",
                                      bound=bound, captured_mass=mass)
        previous = mass
        bound *= 2


@lru_cache(maxsize=512)
def weight_grid(spec: DistributionSpec, tail_tol: float = ORACLE_TAIL_TOL,
                max_support: int = MAX_SUPPORT,
                initial_bound: int = INITIAL_BOUND) -> WeightGrid:
    """Exact support of finite families or a truncation window of negative ones"""
    if not spec.family.negative:
        return _finite_grid(spec)
    bound, _ = _search_bound(spec.label, spec.reading, lambda b: window_grid(spec, b).weights,
                             tail_tol, max_support, initial_bound)
    return window_grid(spec, bound)


def support(spec: DistributionSpec, tail_tol: float = TABLE_TAIL_TOL,
            max_support: int = MAX_SUPPORT, initial_bound: int = INITIAL_BOUND) -> PmfTable:
    """PMF table over the exact support or the smallest doubling window"""
    if not 0.0 < tail_tol <= 1e-2:
        raise DomainError(f"tail_tol must lie in (0, 1e-2], got {tail_tol}")
    grid = weight_grid(spec, tail_tol, max_support, initial_bound)
    if np.any(grid.weights < 0):
        raise DomainError(f"{spec.label}: weights are signed, not a probability law")
    entries = tuple(((int(a), int(b)), float(w))
                    for a, b, w in zip(grid.y1, grid.y2, grid.weights))
    return PmfTable(spec, entries, grid.truncated, grid.captured_mass, grid.bound,
                    tail_tol if grid.truncated else None)


@dataclass(frozen=True)
class ConditionalWeights:
    """Law of the follower coordinate given the leader"""
    values: np.ndarray
    weights: np.ndarray
    truncated: bool
    bound: int
    captured_mass: float


@lru_cache(maxsize=1024)
def _conditional_raw(spec: DistributionSpec, given: int, bound: int) -> np.ndarray:
    values = np.arange(bound + 1, dtype=np.int64)
    if spec.reading == PmfReading.NORMALIZED:
        tables = LogTables(spec.scheme, spec.n + given + bound + 1)
        if spec.family == Family.NT1:
            logs = tables.log_negbin1(spec.n + given, spec.a1, values)
        else:
            logs = tables.log_negbin2(spec.n + given, spec.a1, values)
        with np.errstate(over='ignore'):
            raw = np.exp(logs)
    else:
        raw = np.array([pmf(spec, int(v), given) for v in values], dtype=float)
    _freeze(raw)
    return raw


def conditional_window(spec: DistributionSpec, given: int, bound: int) -> ConditionalWeights:
    """First coordinate of a negative family given the second, on [0, bound]"""
    raw = _conditional_raw(spec, given, bound)
    weights, mass = raw, compensated_total(raw)
    if spec.reading == PmfReading.PRINTED:
        # the printed row is normalized by its own total
        weights, mass = raw / mass, 1.0
    values = np.arange(bound + 1, dtype=np.int64)
    _freeze(values, weights)
    return ConditionalWeights(values, weights, True, bound, mass)


@lru_cache(maxsize=4096)
def conditional_weights(spec: DistributionSpec, given: int,
                        tail_tol: float = ORACLE_TAIL_TOL, max_support: int = MAX_SUPPORT,
                        initial_bound: int = INITIAL_BOUND) -> ConditionalWeights:
    """Second coordinate given the first (T1, T2) or first given the second (NT1, NT2)"""
    if not spec.family.negative:
        values, exact = precise_conditional(spec, given)
        values = np.array(values, dtype=np.int64)
        weights = np.array([float(w) for w in exact], dtype=float)
        _freeze(values, weights)
        return ConditionalWeights(values, weights, False, spec.n - given,
                                  float(precise_sum(exact)))
    bound, _ = _search_bound(f"{spec.label} given {given}", spec.reading,
                             lambda b: _conditional_raw(spec, given, b),
                             tail_tol, max_support, initial_bound)
    return conditional_window(spec, given, bound)


_LOG_LAWS = {
    'negbin1': LogTables.log_negbin1,
    'negbin2': LogTables.log_negbin2,
}


def negbin_mass(s: DeformationScheme, n: int, param: float, law: str,
                reading: PmfReading = PmfReading.NORMALIZED,
                tail_tol: float = ORACLE_TAIL_TOL, max_support: int = MAX_SUPPORT,
                initial_bound: int = INITIAL_BOUND) -> float:
    """Total mass of a univariate negative binomial law, summed in log space"""
    log_law = _LOG_LAWS[law]
    reading = PmfReading(reading)

    def evaluate(bound: int) -> np.ndarray:
        tables = LogTables(s, n + bound + 1)
        with np.errstate(over='ignore', invalid='ignore'):
            return np.exp(log_law(tables, n, param, np.arange(bound + 1), reading))

    label = f"{law}[{s.label},n={n},param={param:g}] {reading.value}"
    _, mass = _search_bound(label, reading, evaluate, tail_tol, max_support, initial_bound)
    return mass
