"""
Extended-precision view of a scheme for finite sums of signed or large terms
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from mpmath.ctx_mp import MPContext

from deformed.schemes import inverse_scheme
from models.scheme import DeformationScheme

PRECISE_DPS = 60

# private context: its precision never changes, so worker threads can share it
mp = MPContext()
mp.dps = PRECISE_DPS


@dataclass(frozen=True)
class PreciseScheme:
    """Bases of a DeformationScheme carried as mpmath numbers

    The deformed calculus only uses the arithmetic operators, so every scalar
    function accepts this view in place of the float scheme.
    """
    source: DeformationScheme
    phi1: object
    phi2: object
    D: object
    limit_mode: bool

    @property
    def label(self) -> str:
        return self.source.label

    def inverse(self) -> 'PreciseScheme':
        return precise(inverse_scheme(self.source))


@lru_cache(maxsize=256)
def precise(s: DeformationScheme) -> PreciseScheme:
    return PreciseScheme(s, mp.mpf(s.phi1), mp.mpf(s.phi2), mp.mpf(s.D), s.limit_mode)


def precise_sum(values: Iterable) -> object:
    return mp.fsum(values)
