"""
Data models for trinomial distribution families, PMF tables and samples
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from deformed.errors import DomainError
from models.scheme import DeformationScheme

Point = Tuple[int, int]


class Family(str, Enum):
    """Bivariate trinomial families"""
    T1 = "t1"
    NT1 = "nt1"
    T2 = "t2"
    NT2 = "nt2"

    @property
    def negative(self) -> bool:
        return self in (Family.NT1, Family.NT2)


class PmfReading(str, Enum):
    """NORMALIZED is the process law; PRINTED evaluates the displayed formulas literally"""
    NORMALIZED = "normalized"
    PRINTED = "printed"


@dataclass(frozen=True)
class DistributionSpec:
    """Family tag with its scheme, n and the success parameters (a1, a2)"""
    family: Family
    scheme: DeformationScheme
    n: int
    a1: float
    a2: float
    reading: PmfReading = PmfReading.NORMALIZED

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        object.__setattr__(self, 'reading', PmfReading(self.reading))
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        for name in ('a1', 'a2'):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {value}")

    @property
    def label(self) -> str:
        return (f"{self.family.value}[{self.scheme.label},n={self.n},"
                f"a=({self.a1:g},{self.a2:g})]")

    def with_scheme(self, scheme: DeformationScheme) -> 'DistributionSpec':
        return DistributionSpec(self.family, scheme, self.n, self.a1, self.a2, self.reading)

    def with_reading(self, reading: PmfReading) -> 'DistributionSpec':
        return DistributionSpec(self.family, self.scheme, self.n, self.a1, self.a2, reading)

    def to_dict(self) -> Dict:
        return {
            'family': self.family.value,
            'scheme': self.scheme.to_dict(),
            'n': self.n,
            'a1': self.a1,
            'a2': self.a2,
            'reading': self.reading.value
        }

    @staticmethod
    def from_dict(data: Dict) -> 'DistributionSpec':
        return DistributionSpec(
            family=Family(data['family']),
            scheme=DeformationScheme.from_dict(data['scheme']),
            n=int(data['n']),
            a1=float(data['a1']),
            a2=float(data['a2']),
            reading=PmfReading(data.get('reading', PmfReading.NORMALIZED.value))
        )


@dataclass(frozen=True)
class PmfTable:
    """Enumerated support points with probabilities and truncation metadata"""
    spec: DistributionSpec
    entries: Tuple[Tuple[Point, float], ...]
    truncated: bool
    captured_mass: float
    truncation_bound: int
    tail_tol: Optional[float] = None

    def __len__(self) -> int:
        return len(self.entries)

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Columns (y1, y2, prob) in entry order"""
        y1 = np.array([point[0] for point, _ in self.entries], dtype=np.int64)
        y2 = np.array([point[1] for point, _ in self.entries], dtype=np.int64)
        prob = np.array([prob for _, prob in self.entries], dtype=float)
        return y1, y2, prob

    def probability(self, y1: int, y2: int) -> float:
        for point, prob in self.entries:
            if point == (y1, y2):
                return prob
        return 0.0

    def to_dict(self) -> Dict:
        return {
            'spec': self.spec.to_dict(),
            'truncated': self.truncated,
            'captured_mass': self.captured_mass,
            'truncation_bound': self.truncation_bound,
            'tail_tol': self.tail_tol,
            'entries': [{'y1': point[0], 'y2': point[1], 'prob': prob}
                        for point, prob in self.entries]
        }


@dataclass(frozen=True)
class SampleBatch:
    """Seeded draws from a family with the generating convention recorded"""
    spec: DistributionSpec
    seed: int
    draws: Tuple[Point, ...]
    convention: str = "inverse-cdf"
    truncation_bound: int = 0
    captured_mass: float = 1.0

    @property
    def count(self) -> int:
        return len(self.draws)

    def frequencies(self) -> Dict[Point, float]:
        counts: Dict[Point, int] = {}
        for point in self.draws:
            counts[point] = counts.get(point, 0) + 1
        return {point: value / self.count for point, value in counts.items()}

    def to_dict(self) -> Dict:
        return {
            'spec': self.spec.to_dict(),
            'seed': self.seed,
            'convention': self.convention,
            'truncation_bound': self.truncation_bound,
            'captured_mass': self.captured_mass,
            'draws': [list(point) for point in self.draws]
        }
