"""
Named expectation transforms: falling factorials, ratio weights and corollary pairs
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from deformed.numbers import falling_array, falling_or_zero
from deformed.precise import PreciseScheme
from deformed.schemes import inverse_scheme
from deformed.shifted import ominus_pow, oplus_pow, shifted_array
from models.distribution import DistributionSpec


class TransformKind(str, Enum):
    CONSTANT = "constant"
    FALLING_Y1 = "falling_y1"
    FALLING_Y2 = "falling_y2"
    FALLING_PRODUCT = "falling_product"
    INV_FALLING_W1 = "inv_falling_w1"
    INV_FALLING_W2 = "inv_falling_w2"
    OPLUS_WEIGHTED = "oplus_weighted"
    OMINUS_WEIGHTED = "ominus_weighted"
    COROLLARY_T1 = "corollary_t1"
    COROLLARY_NT1_A = "corollary_nt1_a"
    COROLLARY_NT1_B = "corollary_nt1_b"
    COROLLARY_T2 = "corollary_t2"
    COROLLARY_NT2_A = "corollary_nt2_a"
    COROLLARY_NT2_B = "corollary_nt2_b"


@dataclass(frozen=True)
class Weight:
    """Shifted factorial (phi1^k (+/-) c phi2^k)^order with k = n + offset + k1 y1 + k2 y2

    c is a1 or a2 of the distribution (param 1 or 2). The transform value is divided
    by the weight, or multiplied when divide is False.
    """
    param: int
    order: int
    sign: float = 1.0
    offset: int = 0
    k1: int = 0
    k2: int = 0
    divide: bool = True

    def values(self, spec: DistributionSpec, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        s = spec.scheme
        k = spec.n + self.offset + self.k1 * np.asarray(y1) + self.k2 * np.asarray(y2)
        k = np.asarray(k, dtype=float)
        c = spec.a1 if self.param == 1 else spec.a2
        return shifted_array(s, s.phi1 ** k, c * s.phi2 ** k, self.order, self.sign)

    def value_at(self, spec: DistributionSpec, y1: int, y2: int):
        """Scalar weight at one support point, in the arithmetic of spec.scheme"""
        s = spec.scheme
        k = spec.n + self.offset + self.k1 * y1 + self.k2 * y2
        c = spec.a1 if self.param == 1 else spec.a2
        shifted = oplus_pow if self.sign > 0 else ominus_pow
        return shifted(s, s.phi1 ** k, c * s.phi2 ** k, self.order)

    def apply(self, spec: DistributionSpec, y1: np.ndarray, y2: np.ndarray,
              values: np.ndarray) -> np.ndarray:
        weights = self.values(spec, y1, y2)
        if not self.divide:
            return values * weights
        with np.errstate(divide='ignore', invalid='ignore'):
            # a zero falling factorial stays zero whatever the weight
            return np.where(values == 0.0, 0.0, values / weights)

    def apply_at(self, spec: DistributionSpec, y1: int, y2: int, value):
        weight = self.value_at(spec, y1, y2)
        if not self.divide:
            return value * weight
        return 0.0 if value == 0 else value / weight

    @property
    def label(self) -> str:
        op = "+" if self.sign > 0 else "-"
        shift = f"n{self.offset:+d}" if self.offset else "n"
        if self.k1:
            shift += f"{self.k1:+d}y1"
        if self.k2:
            shift += f"{self.k2:+d}y2"
        power = self.order if self.divide else -self.order
        return f"(phi1^k {op} a{self.param} phi2^k)^{power},k={shift}"


def _transform_scheme(scheme, inverse: bool):
    if not inverse:
        return scheme
    if isinstance(scheme, PreciseScheme):
        return scheme.inverse()
    return inverse_scheme(scheme)


@dataclass(frozen=True)
class Transform:
    """g(y1, y2) = [y1]_m1 [y2]_m2 (inverse scheme if inverse) with an optional weight"""
    kind: TransformKind
    m1: int = 0
    m2: int = 0
    inverse: bool = False
    weight: Optional[Weight] = None

    def evaluate(self, spec: DistributionSpec, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
        y1 = np.asarray(y1, dtype=np.int64)
        y2 = np.asarray(y2, dtype=np.int64)
        scheme = _transform_scheme(spec.scheme, self.inverse)
        values = np.ones(np.broadcast(y1, y2).shape, dtype=float)
        if self.m1:
            values = values * falling_array(scheme, y1, self.m1)
        if self.m2:
            values = values * falling_array(scheme, y2, self.m2)
        if self.weight is not None:
            values = self.weight.apply(spec, y1, y2, values)
        return values

    def value_at(self, spec: DistributionSpec, y1: int, y2: int):
        """Scalar g(y1, y2); extended precision when spec carries a PreciseScheme"""
        scheme = _transform_scheme(spec.scheme, self.inverse)
        value = falling_or_zero(scheme, y1, self.m1) * falling_or_zero(scheme, y2, self.m2)
        if self.weight is not None:
            value = self.weight.apply_at(spec, y1, y2, value)
        return value

    @property
    def label(self) -> str:
        text = f"{self.kind.value}(m1={self.m1},m2={self.m2})"
        if self.weight is not None:
            text += f"/{self.weight.label}"
        return text


def constant() -> Transform:
    return Transform(TransformKind.CONSTANT)


def falling_y1(m1: int) -> Transform:
    return Transform(TransformKind.FALLING_Y1, m1=m1)


def falling_y2(m2: int) -> Transform:
    return Transform(TransformKind.FALLING_Y2, m2=m2)


def falling_product(m1: int, m2: int) -> Transform:
    return Transform(TransformKind.FALLING_PRODUCT, m1=m1, m2=m2)


def inv_falling_w1(m1: int) -> Transform:
    return Transform(TransformKind.INV_FALLING_W1, m1=m1, inverse=True)


def inv_falling_w2(m2: int) -> Transform:
    return Transform(TransformKind.INV_FALLING_W2, m2=m2, inverse=True)


def oplus_weighted(m1: int, m2: int = 0) -> Transform:
    """[W1]'_m1 [W2]'_m2 / (phi1^(n+W2) (+) a2 phi2^(n+W2))^m1"""
    return Transform(TransformKind.OPLUS_WEIGHTED, m1=m1, m2=m2, inverse=True,
                     weight=Weight(param=2, order=m1, k2=1))


def t2_weighted(m1: int, m2: int) -> Transform:
    """[X1]_m1 [X2]_m2 / (phi1^(n-m2-X1) (-) b1 phi2^(n-m2-X1))^m2"""
    return Transform(TransformKind.OMINUS_WEIGHTED, m1=m1, m2=m2,
                     weight=Weight(param=1, order=m2, sign=-1.0, offset=-m2, k1=-1))


def nt2_weighted(m1: int, m2: int = 0, order: Optional[int] = None) -> Transform:
    """[V1]_m1 [V2]_m2 (phi1^(n+V2) (-) b1 phi2^(n+V2))^order, order defaulting to m1"""
    order = m1 if order is None else order
    return Transform(TransformKind.OMINUS_WEIGHTED, m1=m1, m2=m2,
                     weight=Weight(param=1, order=order, sign=-1.0, k2=1, divide=False))


_COROLLARIES: Dict[TransformKind, Tuple[Transform, Transform]] = {
    TransformKind.COROLLARY_T1: (falling_y1(1), falling_y2(1)),
    TransformKind.COROLLARY_NT1_A: (
        Transform(TransformKind.OPLUS_WEIGHTED, m1=1, inverse=True,
                  weight=Weight(param=2, order=1, k2=1)),
        inv_falling_w2(1)),
    # minus-sign weight of the (1/p, q) display
    TransformKind.COROLLARY_NT1_B: (
        Transform(TransformKind.OPLUS_WEIGHTED, m1=1, inverse=True,
                  weight=Weight(param=2, order=1, sign=-1.0, k2=1)),
        inv_falling_w2(1)),
    TransformKind.COROLLARY_T2: (
        falling_y1(1),
        Transform(TransformKind.OMINUS_WEIGHTED, m2=1,
                  weight=Weight(param=1, order=1, sign=-1.0, offset=-1, k1=-1))),
    # displayed weight carries b2
    TransformKind.COROLLARY_NT2_A: (
        Transform(TransformKind.OMINUS_WEIGHTED, m1=1,
                  weight=Weight(param=2, order=1, sign=-1.0, k2=1, divide=False)),
        falling_y2(1)),
    # weight of the joint theorem, with b1
    TransformKind.COROLLARY_NT2_B: (
        Transform(TransformKind.OMINUS_WEIGHTED, m1=1,
                  weight=Weight(param=1, order=1, sign=-1.0, k2=1, divide=False)),
        falling_y2(1)),
}


def corollary_pair(kind: TransformKind) -> Tuple[Transform, Transform]:
    """The two transformed variables whose covariance a corollary states"""
    return _COROLLARIES[TransformKind(kind)]
