"""
Typed view of the YAML configuration
"""
from dataclasses import dataclass, field, asdict, fields
from typing import Dict, List, Optional


@dataclass
class NumericsSettings:
    limit_epsilon: float = 1e-12


@dataclass
class ToleranceSettings:
    identity: float = 1e-12
    binomial_formula: float = 1e-11
    normalization: float = 1e-10
    finite: float = 1e-9
    truncated: float = 1e-8
    specialization: float = 1e-10


@dataclass
class TruncationSettings:
    oracle_tail_tol: float = 1e-10
    table_tail_tol: float = 1e-8
    initial_bound: int = 8
    max_support: int = 10000


@dataclass
class AuditSettings:
    presets: List[str] = field(default_factory=lambda: ['bm', 'js', 'cj', 'quesne'])
    p: float = 0.9
    q: float = 0.5
    params: List[float] = field(default_factory=lambda: [0.2, 0.5, 0.8])
    max_n: int = 6
    max_order: int = 2
    workers: int = 1


@dataclass
class MonteCarloSettings:
    samples: int = 200000
    seed: int = 20240917
    max_trials: int = 100000


@dataclass
class OutputSettings:
    format: str = "csv"
    digits: int = 17


@dataclass
class LoggingSettings:
    level: str = "WARNING"
    console: bool = True
    file: Optional[str] = None
    max_bytes: int = 10485760
    backup_count: int = 5


def _section(cls, data: Optional[Dict]):
    """Build a section dataclass, ignoring keys it does not know"""
    data = data or {}
    known = {f.name for f in fields(cls)}
    return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class Settings:
    numerics: NumericsSettings = field(default_factory=NumericsSettings)
    tolerances: ToleranceSettings = field(default_factory=ToleranceSettings)
    truncation: TruncationSettings = field(default_factory=TruncationSettings)
    audit: AuditSettings = field(default_factory=AuditSettings)
    montecarlo: MonteCarloSettings = field(default_factory=MonteCarloSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)

    def to_dict(self) -> Dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: Optional[Dict]) -> 'Settings':
        """Merge the given sections over the defaults"""
        data = data or {}
        return Settings(
            numerics=_section(NumericsSettings, data.get('numerics')),
            tolerances=_section(ToleranceSettings, data.get('tolerances')),
            truncation=_section(TruncationSettings, data.get('truncation')),
            audit=_section(AuditSettings, data.get('audit')),
            montecarlo=_section(MonteCarloSettings, data.get('montecarlo')),
            output=_section(OutputSettings, data.get('output')),
            logging=_section(LoggingSettings, data.get('logging'))
        )
