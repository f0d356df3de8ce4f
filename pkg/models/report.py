"""
Data models for audit reports and Monte-Carlo results
"""
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Dict, List, Optional


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SUSPECTED_TYPO = "SUSPECTED_TYPO"


ROW_FIELDS = ('label', 'closed_form', 'oracle', 'rel_err', 'verdict')
OPTIONAL_ROW_FIELDS = ('alternate', 'alternate_oracle', 'alternate_rel_err', 'note')


@dataclass
class AuditRow:
    """One closed form compared with its oracle value"""
    label: str
    closed_form: float
    oracle: float
    rel_err: float
    verdict: Verdict
    alternate: Optional[float] = None
    alternate_oracle: Optional[float] = None
    alternate_rel_err: Optional[float] = None
    note: Optional[str] = None

    def to_dict(self) -> Dict:
        data = {
            'label': self.label,
            'closed_form': self.closed_form,
            'oracle': self.oracle,
            'rel_err': self.rel_err,
            'verdict': Verdict(self.verdict).value
        }
        for name in OPTIONAL_ROW_FIELDS:
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        return data

    @staticmethod
    def from_dict(data: Dict) -> 'AuditRow':
        return AuditRow(
            label=data['label'],
            closed_form=float(data['closed_form']),
            oracle=float(data['oracle']),
            rel_err=float(data['rel_err']),
            verdict=Verdict(data['verdict']),
            alternate=data.get('alternate'),
            alternate_oracle=data.get('alternate_oracle'),
            alternate_rel_err=data.get('alternate_rel_err'),
            note=data.get('note')
        )


@dataclass
class AuditReport:
    """Rows of one audit suite with the scheme, parameters and tolerances used"""
    suite: str
    rows: List[AuditRow] = field(default_factory=list)
    schemes: List[Dict] = field(default_factory=list)
    params: List[Any] = field(default_factory=list)
    tolerances: Dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rows)

    def summary(self) -> Dict[str, int]:
        """Verdict counts, every verdict present"""
        counts = {verdict.value: 0 for verdict in Verdict}
        for row in self.rows:
            counts[Verdict(row.verdict).value] += 1
        return counts

    def by_verdict(self, verdict: Verdict) -> List[AuditRow]:
        return [row for row in self.rows if row.verdict == verdict]

    def find(self, prefix: str) -> List[AuditRow]:
        """Rows whose label starts with prefix"""
        return [row for row in self.rows if row.label.startswith(prefix)]

    @property
    def failed(self) -> bool:
        return any(row.verdict == Verdict.FAIL for row in self.rows)

    def merge(self, other: 'AuditReport', suite: Optional[str] = None) -> 'AuditReport':
        """Concatenate two reports; scheme echoes are de-duplicated"""
        schemes = list(self.schemes)
        for scheme in other.schemes:
            if scheme not in schemes:
                schemes.append(scheme)
        tolerances = dict(self.tolerances)
        tolerances.update(other.tolerances)
        return AuditReport(
            suite=suite or f"{self.suite}+{other.suite}",
            rows=self.rows + other.rows,
            schemes=schemes,
            params=self.params + [p for p in other.params if p not in self.params],
            tolerances=tolerances
        )

    def to_dict(self) -> Dict:
        return {
            'suite': self.suite,
            'schemes': self.schemes,
            'params': self.params,
            'tolerances': self.tolerances,
            'summary': self.summary(),
            'rows': [row.to_dict() for row in self.rows]
        }

    @staticmethod
    def from_dict(data: Dict) -> 'AuditReport':
        return AuditReport(
            suite=data['suite'],
            rows=[AuditRow.from_dict(row) for row in data.get('rows', [])],
            schemes=list(data.get('schemes', [])),
            params=list(data.get('params', [])),
            tolerances=dict(data.get('tolerances', {}))
        )


class Convention(str, Enum):
    """Index of the success probability p_i in the simulated Bernoulli process"""
    TRIAL_INDEX = "trial_index"
    FAILURE_COUNT = "failure_count"


@dataclass
class McResult:
    """Empirical law of the success count before the n-th failure against the closed form"""
    convention: Convention
    samples: int
    tv_distance: float
    chi_square: float
    seed: int
    n: int
    alpha: float
    p_value: float
    dof: int
    tv_printed: float
    censored: int = 0
    selected: bool = False

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['convention'] = Convention(self.convention).value
        return data
