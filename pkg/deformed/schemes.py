"""
Scheme transformations: parameter inversion and the q-slice
"""
import logging
import math

from deformed.errors import DomainError
from models.scheme import DeformationScheme, Preset, RECIPROCAL, LIMIT_EPSILON

logger = logging.getLogger(__name__)


def inverse_scheme(s: DeformationScheme) -> DeformationScheme:
    """Scheme at (1/p, 1/q) with bases recomputed by the preset rule"""
    if s.preset == Preset.CUSTOM:
        if s.inversion != RECIPROCAL:
            raise DomainError(f"{s.label}: no inversion rule for this custom scheme")
        if s.limit_mode:
            return DeformationScheme.custom(1.0 / s.phi1, 1.0 / s.phi2, s.D,
                                            inversion=RECIPROCAL)
        return DeformationScheme.custom(1.0 / s.phi1, 1.0 / s.phi2,
                                        1.0 / s.phi1 - 1.0 / s.phi2,
                                        inversion=RECIPROCAL)
    # inverted parameters leave the JS regime, so no strict validation here
    return DeformationScheme.from_preset(s.preset, 1.0 / s.p, 1.0 / s.q, strict=False,
                                         D=s.D if s.limit_mode else None)


def q_slice(s: DeformationScheme, epsilon: float = LIMIT_EPSILON) -> DeformationScheme:
    """Scheme (1, Q, 1 - Q) with Q = phi2 / phi1"""
    ratio = s.ratio
    if abs(1.0 - ratio) < epsilon:
        return DeformationScheme.custom(1.0, 1.0, 1.0, inversion=RECIPROCAL, epsilon=epsilon)
    return DeformationScheme.custom(1.0, ratio, 1.0 - ratio, inversion=RECIPROCAL,
                                    epsilon=epsilon)


def on_q_slice(s: DeformationScheme, epsilon: float = LIMIT_EPSILON) -> bool:
    return math.isclose(s.phi1, 1.0, rel_tol=0.0, abs_tol=epsilon)
