"""
Monte-Carlo check of the first-kind negative binomial law

The process runs Bernoulli trials with success probability
p_i = a phi2^(i-1) / (phi1^(i-1) + a phi2^(i-1)) until the n-th failure and
counts the successes. Which index i the probability uses is resolved
empirically: the overall trial number or one plus the failures so far.
"""
import logging
import math
from typing import List, Tuple

import numpy as np
from scipy import stats

from deformed.errors import DomainError
from distributions.laws import LogTables
from models.distribution import PmfReading
from models.report import Convention, McResult
from models.scheme import DeformationScheme

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10000
MAX_TRIALS = 100000
# reference laws are tabulated this far past the largest observed count
REFERENCE_MARGIN = 64
MIN_EXPECTED = 5.0


def success_probability(s: DeformationScheme, alpha: float, index: np.ndarray) -> np.ndarray:
    """p_i for an array of 1-based indices, in logistic form"""
    log_ratio = math.log(s.phi1) - math.log(s.phi2)
    z = (np.asarray(index, dtype=float) - 1.0) * log_ratio - math.log(alpha)
    with np.errstate(over='ignore'):
        return 1.0 / (1.0 + np.exp(z))


def simulate_successes(s: DeformationScheme, n: int, alpha: float, samples: int,
                       convention: Convention, rng: np.random.Generator,
                       max_trials: int = MAX_TRIALS) -> Tuple[np.ndarray, int]:
    """Success counts of every chain; chains still running after max_trials are censored (-1)"""
    convention = Convention(convention)
    successes = np.zeros(samples, dtype=np.int64)
    failures = np.zeros(samples, dtype=np.int64)
    active = np.arange(samples)
    trial = 0
    while active.size and trial < max_trials:
        trial += 1
        if convention == Convention.TRIAL_INDEX:
            index = np.full(active.size, trial)
        else:
            index = failures[active] + 1
        hit = rng.random(active.size) < success_probability(s, alpha, index)
        successes[active[hit]] += 1
        failures[active[~hit]] += 1
        active = active[failures[active] < n]
    censored = int(active.size)
    if censored:
        logger.warning(f"{s.label}: {censored} of {samples} chains censored "
                       f"after {max_trials} trials")
        successes[active] = -1
    return successes, censored


def _reference(s: DeformationScheme, n: int, alpha: float, upper: int,
               reading: PmfReading) -> np.ndarray:
    tables = LogTables(s, n + upper + 1)
    u = np.arange(upper + 1, dtype=np.int64)
    with np.errstate(over='ignore'):
        return np.exp(tables.log_negbin1(n, alpha, u, reading))


def _cells(successes: np.ndarray, censored: int, reference: np.ndarray
           ) -> Tuple[np.ndarray, np.ndarray]:
    """Observed counts and expected probabilities; the last cell is 'no n-th failure'"""
    upper = reference.size - 1
    observed = np.bincount(successes[successes >= 0], minlength=upper + 1).astype(float)
    missing = max(0.0, 1.0 - math.fsum(reference.tolist()))
    return (np.append(observed, float(censored)), np.append(reference, missing))


def tv_distance(observed: np.ndarray, expected: np.ndarray) -> float:
    frequencies = observed / observed.sum()
    return min(1.0, 0.5 * math.fsum(np.abs(frequencies - expected).tolist()))


def pooled_chi_square(observed: np.ndarray, expected: np.ndarray) -> Tuple[float, float, int]:
    """Chi-square after pooling cells left to right until each expects at least 5"""
    total = observed.sum()
    counts = expected * total
    pooled_obs: List[float] = []
    pooled_exp: List[float] = []
    obs_acc = exp_acc = 0.0
    for o, e in zip(observed, counts):
        obs_acc += o
        exp_acc += e
        if exp_acc >= MIN_EXPECTED:
            pooled_obs.append(obs_acc)
            pooled_exp.append(exp_acc)
            obs_acc = exp_acc = 0.0
    if obs_acc or exp_acc:
        if pooled_obs:
            pooled_obs[-1] += obs_acc
            pooled_exp[-1] += exp_acc
        else:
            pooled_obs.append(obs_acc)
            pooled_exp.append(exp_acc)
    if len(pooled_obs) < 2:
        return 0.0, 1.0, 0
    f_obs = np.array(pooled_obs)
    f_exp = np.array(pooled_exp)
    f_exp = f_exp * (f_obs.sum() / f_exp.sum())
    result = stats.chisquare(f_obs, f_exp)
    return float(result.statistic), float(result.pvalue), len(pooled_obs) - 1


def mc_negbin1(s: DeformationScheme, n: int, alpha: float, samples: int = 200000,
               seed: int = 0, max_trials: int = MAX_TRIALS) -> List[McResult]:
    """Simulate both index conventions and compare each with the closed-form law"""
    if samples < MIN_SAMPLES:
        raise DomainError(f"at least {MIN_SAMPLES} samples are required, got {samples}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")

    children = np.random.SeedSequence(seed).spawn(len(Convention))
    results = []
    for convention, child in zip(Convention, children):
        rng = np.random.default_rng(child)
        successes, censored = simulate_successes(s, n, alpha, samples, convention, rng,
                                                 max_trials)
        upper = int(successes.max(initial=0)) + REFERENCE_MARGIN
        observed, expected = _cells(successes, censored,
                                    _reference(s, n, alpha, upper, PmfReading.NORMALIZED))
        printed_obs, printed = _cells(successes, censored,
                                      _reference(s, n, alpha, upper, PmfReading.PRINTED))
        chi_square, p_value, dof = pooled_chi_square(observed, expected)
        result = McResult(
            convention=convention,
            samples=samples,
            tv_distance=tv_distance(observed, expected),
            chi_square=chi_square,
            seed=seed,
            n=n,
            alpha=alpha,
            p_value=p_value,
            dof=dof,
            tv_printed=tv_distance(printed_obs, printed),
            censored=censored
        )
        logger.debug(f"{s.label}: {convention.value} TV {result.tv_distance:.6f}")
        results.append(result)

    best = min(results, key=lambda r: r.tv_distance)
    best.selected = True
    logger.info(f"{s.label}: n={n}, alpha={alpha:g}, selected {best.convention.value} "
                f"(TV {best.tv_distance:.6f})")
    return results
