"""
Data models for deformation schemes
"""
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Dict, Optional

from deformed.errors import DomainError

LIMIT_EPSILON = 1e-12
RECIPROCAL = "reciprocal"


class Preset(str, Enum):
    """Named two-basis deformations"""
    BM = "bm"
    JS = "js"
    CJ = "cj"
    QUESNE = "quesne"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DeformationScheme:
    """Two-basis deformation (phi1, phi2) with scale denominator D"""
    preset: Preset
    p: float
    q: float
    phi1: float
    phi2: float
    D: float
    limit_mode: bool = False
    inversion: Optional[str] = None

    @property
    def ratio(self) -> float:
        """Base ratio phi2 / phi1 that drives the Bernoulli processes"""
        return self.phi2 / self.phi1

    @property
    def label(self) -> str:
        if self.preset == Preset.CUSTOM:
            return f"custom(phi1={self.phi1:g},phi2={self.phi2:g},D={self.D:g})"
        if self.preset == Preset.BM:
            return f"bm(q={self.q:g})"
        return f"{self.preset.value}(p={self.p:g},q={self.q:g})"

    @classmethod
    def from_preset(cls, preset: Preset, p: Optional[float] = None,
                    q: Optional[float] = None, strict: bool = True,
                    epsilon: float = LIMIT_EPSILON,
                    D: Optional[float] = None) -> 'DeformationScheme':
        """Build a preset scheme from (p, q)

        D is honored only in limit mode (phi1 = phi2), where the preset rule gives
        zero; it defaults to 1.
        """
        preset = Preset(preset)
        if preset == Preset.CUSTOM:
            raise DomainError("custom schemes are built with DeformationScheme.custom()")
        if q is None or q <= 0:
            raise DomainError(f"{preset.value}: q must be positive, got {q}")
        if preset == Preset.BM:
            # p plays no role in the q-deformation; it is echoed for reporting only
            p = q if p is None else p
        if p is None or p <= 0:
            raise DomainError(f"{preset.value}: p must be positive, got {p}")
        if preset == Preset.JS and strict and not 0 < q < p < 1:
            raise DomainError(f"js: parameters must satisfy 0 < q < p < 1, got p={p}, q={q}")

        if preset == Preset.BM:
            phi1, phi2, D_rule = q, 1.0 / q, q - 1.0 / q
        elif preset == Preset.JS:
            phi1, phi2, D_rule = p, q, p - q
        elif preset == Preset.CJ:
            phi1, phi2, D_rule = 1.0 / p, q, 1.0 / p - q
        else:
            phi1, phi2, D_rule = p, 1.0 / q, q - 1.0 / p

        limit_mode = abs(phi1 - phi2) < epsilon
        if limit_mode:
            scale = 1.0 if D is None else D
            if scale == 0:
                raise DomainError(f"{preset.value}: scale denominator D must be nonzero")
            return cls(preset, p, q, phi1, phi2, scale, limit_mode)
        return cls(preset, p, q, phi1, phi2, D_rule, limit_mode)

    @classmethod
    def custom(cls, phi1: float, phi2: float, D: Optional[float] = None,
               inversion: Optional[str] = None,
               epsilon: float = LIMIT_EPSILON) -> 'DeformationScheme':
        """Build a scheme directly from its bases"""
        if phi1 <= 0 or phi2 <= 0:
            raise DomainError(f"custom: bases must be positive, got phi1={phi1}, phi2={phi2}")
        if inversion not in (None, RECIPROCAL):
            raise DomainError(f"custom: unknown inversion rule {inversion!r}")
        limit_mode = abs(phi1 - phi2) < epsilon
        if D is None:
            D = 1.0 if limit_mode else phi1 - phi2
        if D == 0:
            raise DomainError("custom: scale denominator D must be nonzero")
        return cls(Preset.CUSTOM, phi1, phi2, phi1, phi2, D, limit_mode, inversion)

    @classmethod
    def classical(cls) -> 'DeformationScheme':
        """Undeformed scheme phi1 = phi2 = 1"""
        return cls.custom(1.0, 1.0, 1.0, inversion=RECIPROCAL)

    def with_scale(self, factor: float) -> 'DeformationScheme':
        """Same bases with D multiplied by factor"""
        return DeformationScheme(self.preset, self.p, self.q, self.phi1, self.phi2,
                                 self.D * factor, self.limit_mode, self.inversion)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['preset'] = self.preset.value
        return data

    @staticmethod
    def from_dict(data: Dict) -> 'DeformationScheme':
        """Create a DeformationScheme from a dictionary"""
        return DeformationScheme(
            preset=Preset(data['preset']),
            p=float(data['p']),
            q=float(data['q']),
            phi1=float(data['phi1']),
            phi2=float(data['phi2']),
            D=float(data['D']),
            limit_mode=bool(data.get('limit_mode', False)),
            inversion=data.get('inversion')
        )
