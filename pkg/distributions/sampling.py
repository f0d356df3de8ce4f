"""
Seeded inverse-CDF sampling from enumerated PMF tables
"""
import logging

import numpy as np

from deformed.errors import DomainError
from distributions.support import TABLE_TAIL_TOL, support
from models.distribution import DistributionSpec, SampleBatch

logger = logging.getLogger(__name__)


def sample(spec: DistributionSpec, count: int, seed: int,
           tail_tol: float = TABLE_TAIL_TOL) -> SampleBatch:
    """Draw count points; truncated tables are renormalized over their window"""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    table = support(spec, tail_tol)
    y1, y2, prob = table.arrays()
    cdf = np.cumsum(prob)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    index = np.searchsorted(cdf, rng.random(count), side='right')
    index = np.minimum(index, cdf.size - 1)
    draws = tuple((int(y1[i]), int(y2[i])) for i in index)
    logger.debug(f"{spec.label}: drew {count} points with seed {seed}")
    return SampleBatch(spec, seed, draws, truncation_bound=table.truncation_bound,
                       captured_mass=table.captured_mass)
