"""
Per-algebra displays of the moment formulas, evaluated literally against the general engine

Each preset prints the two-basis powers phi1^k, phi2^k as explicit powers of p
and q. PrintedAtoms records, formula by formula, which powers the display
uses; the general engine always uses the scheme's own bases.
"""
import logging
from dataclasses import dataclass
from functools import partial
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from deformed.errors import DomainError
from deformed.numbers import falling, negative_trinomial_coeff, number, trinomial_coeff
from deformed.shifted import oplus_pow, ominus_pow
from distributions import moments
from distributions.pmf import pmf
from models.distribution import DistributionSpec, Family, PmfReading
from models.report import AuditReport
from models.scheme import DeformationScheme, Preset
from models.settings import ToleranceSettings
from verify.audit import Check, run_checks
from verify.transforms import (
    TransformKind, corollary_pair, nt2_weighted, oplus_weighted, t2_weighted,
)

logger = logging.getLogger(__name__)

Atom = Callable[[float, float, float], float]
AtomPair = Tuple[Atom, Atom]


def p_pow(p: float, q: float, k: float) -> float:
    return p ** k


def p_inv(p: float, q: float, k: float) -> float:
    return p ** -k


def q_pow(p: float, q: float, k: float) -> float:
    return q ** k


def q_inv(p: float, q: float, k: float) -> float:
    return q ** -k


PLAIN: AtomPair = (p_pow, q_pow)


@dataclass(frozen=True)
class PrintedAtoms:
    """Powers printed in place of (phi1^k, phi2^k), per formula"""
    moment: AtomPair
    tfk_weight: AtomPair
    cov_t1_weight: AtomPair
    ntfk3_weight: AtomPair
    ntfk4_weight: AtomPair
    cov_nt1_weight: AtomPair
    tsk_weight: AtomPair
    cov_t2_weight: AtomPair
    ntsk_weight: AtomPair
    cov_nt2_weight: AtomPair
    cov_nt2_head: AtomPair
    cov_nt1_sign: float = 1.0
    # tfk3 displayed wholly in (p, q) notation
    tfk3_plain: bool = False
    # ntfk3 right-hand side bracket without the algebra mark
    ntfk3_rhs_plain: bool = False
    typos: FrozenSet[str] = frozenset()


_SHIFT_TYPOS = frozenset({
    'tfk3', 'tfk4', 'ntfk3.weight', 'ntfk4.weight', 'tsk4.weight', 'tsk5.weight',
    'ntsk2', 'ntsk3', 'ntsk4.weight', 'ntsk4.rhs', 'ntsk5.rhs',
})

CATALOG = {
    Preset.BM: PrintedAtoms(
        moment=(q_pow, q_inv), tfk_weight=PLAIN, cov_t1_weight=(q_pow, q_inv),
        ntfk3_weight=(p_pow, q_inv), ntfk4_weight=PLAIN, cov_nt1_weight=(q_pow, q_inv),
        tsk_weight=PLAIN, cov_t2_weight=(q_pow, q_inv), ntsk_weight=PLAIN,
        cov_nt2_weight=(q_pow, q_inv), cov_nt2_head=(q_pow, q_inv),
        tfk3_plain=True, typos=_SHIFT_TYPOS),
    Preset.JS: PrintedAtoms(
        moment=PLAIN, tfk_weight=PLAIN, cov_t1_weight=PLAIN, ntfk3_weight=PLAIN,
        ntfk4_weight=PLAIN, cov_nt1_weight=PLAIN, tsk_weight=PLAIN, cov_t2_weight=PLAIN,
        ntsk_weight=PLAIN, cov_nt2_weight=PLAIN, cov_nt2_head=PLAIN),
    Preset.CJ: PrintedAtoms(
        moment=(p_inv, q_pow), tfk_weight=PLAIN, cov_t1_weight=(p_inv, q_pow),
        ntfk3_weight=PLAIN, ntfk4_weight=PLAIN, cov_nt1_weight=(p_inv, q_pow),
        tsk_weight=PLAIN, cov_t2_weight=(p_inv, q_pow), ntsk_weight=PLAIN,
        cov_nt2_weight=(p_inv, q_pow), cov_nt2_head=(p_inv, q_pow), cov_nt1_sign=-1.0,
        typos=_SHIFT_TYPOS | {'cov_nt1.weight'}),
    Preset.QUESNE: PrintedAtoms(
        moment=(p_pow, q_inv), tfk_weight=PLAIN, cov_t1_weight=(p_pow, q_inv),
        ntfk3_weight=PLAIN, ntfk4_weight=PLAIN, cov_nt1_weight=PLAIN,
        tsk_weight=PLAIN, cov_t2_weight=(p_pow, q_inv), ntsk_weight=PLAIN,
        cov_nt2_weight=PLAIN, cov_nt2_head=PLAIN, ntfk3_rhs_plain=True,
        typos=_SHIFT_TYPOS | {'cov_nt1.weight', 'ntfk3.rhs', 'cov_nt2.weight',
                              'cov_nt2.value'}),
}

T_POINTS = ((0, 0), (1, 2), (2, 1), (0, 3))
NT_POINTS = ((0, 0), (1, 2), (3, 1))
ORDER_PAIRS = ((1, 1), (2, 1), (1, 2))


class _Display:
    """Literal evaluation of one preset's displays at fixed (p, q)"""

    def __init__(self, preset: Preset, p: float, q: float):
        self.atoms = CATALOG[preset]
        self.p, self.q = p, q
        self.scheme = DeformationScheme.from_preset(preset, p, q)
        self.plain = DeformationScheme.from_preset(Preset.JS, p, q, strict=False)

    def pair(self, atoms: AtomPair, k: float) -> Tuple[float, float]:
        return atoms[0](self.p, self.q, k), atoms[1](self.p, self.q, k)

    def pmf_t1(self, n: int, a1: float, a2: float, y1: int, y2: int) -> float:
        s = self.scheme
        head, tail = self.atoms.moment
        return (trinomial_coeff(s, n, y1, y2) * a1 ** y1 * a2 ** y2
                * head(self.p, self.q, _c2(n - y1) + _c2(n - y2))
                * tail(self.p, self.q, _c2(y1) + _c2(y2))
                / (oplus_pow(s, 1.0, a1, n) * oplus_pow(s, 1.0, a2, n - y1)))

    def pmf_nt1(self, n: int, a1: float, a2: float, w1: int, w2: int) -> float:
        s = self.scheme
        head, tail = self.atoms.moment
        return (negative_trinomial_coeff(s, n, w1, w2) * a1 ** w1 * a2 ** w2
                * head(self.p, self.q, _c2(n - w1) + _c2(n - w2))
                * tail(self.p, self.q, _c2(w1) + _c2(w2))
                / (oplus_pow(s, 1.0, a1, n + w1 + w2) * oplus_pow(s, 1.0, a2, n + w2)))

    def pmf_t2(self, n: int, b1: float, b2: float, x1: int, x2: int) -> float:
        s = self.scheme
        return (trinomial_coeff(s, n, x1, x2) * b1 ** x1 * b2 ** x2
                * ominus_pow(s, 1.0, b1, n - x1) * ominus_pow(s, 1.0, b2, n - x1 - x2))

    def pmf_nt2(self, n: int, b1: float, b2: float, v1: int, v2: int) -> float:
        s = self.scheme
        return (negative_trinomial_coeff(s, n, v1, v2) * b1 ** v1 * b2 ** v2
                * ominus_pow(s, 1.0, b1, n + v2) * ominus_pow(s, 1.0, b2, n))

    def tfk1(self, n: int, a1: float, m: int) -> float:
        s = self.scheme
        return (falling(s, n, m) * a1 ** m * self.atoms.moment[1](self.p, self.q, _c2(m))
                / oplus_pow(s, 1.0, a1, m))

    def tfk3(self, n: int, a1: float, a2: float, m1: int, m2: int) -> float:
        """E([Y2]_m2) when m1 == 0, the joint moment otherwise"""
        if m1 == 0 and self.atoms.tfk3_plain:
            s, (head, tail) = self.plain, PLAIN
        else:
            s, (head, tail) = self.scheme, self.atoms.moment
        rest = n - m2
        u, v = self.pair(self.atoms.tfk_weight, rest)
        return (falling(s, n, m1 + m2) * a1 ** m1 * a2 ** m2
                * head(self.p, self.q, _c2(m2) + m2 * rest)
                * tail(self.p, self.q, _c2(m1) + _c2(m2))
                / (oplus_pow(s, 1.0, a1, m1) * oplus_pow(s, 1.0, a2, m2)
                   * oplus_pow(s, u, a1 * v, m2)))

    def cov_t1(self, n: int, a1: float, a2: float) -> float:
        s = self.scheme
        u, v = self.pair(self.atoms.cov_t1_weight, n - 1)
        return (self.atoms.moment[0](self.p, self.q, n - 1) * a1 * a2 * number(s, n)
                * (number(s, n - 1) - number(s, n)) / ((1 + a1) * (1 + a2) * (u + a1 * v)))

    def shifted(self, atoms: AtomPair, k: int, c: float, order: int, sign: float) -> float:
        u, v = self.pair(atoms, k)
        if sign > 0:
            return oplus_pow(self.scheme, u, c * v, order)
        return ominus_pow(self.scheme, u, c * v, order)

    def ntfk3_rhs(self, n: int, a1: float, m: int) -> float:
        s = self.plain if self.atoms.ntfk3_rhs_plain else self.scheme
        return falling(s, n + m - 1, m) * a1 ** m

    def ntsk_rhs(self, n: int, b1: float, b2: float, m1: int, m2: int) -> float:
        return (falling(self.scheme, n + m1 + m2 - 1, m1 + m2) * b1 ** m1 * b2 ** m2
                / self.shifted(self.atoms.ntsk_weight, n, b2, m1 + m2, -1.0))

    def cov_nt2(self, n: int, b1: float, b2: float) -> float:
        s = self.scheme
        head = _difference(self.pair(self.atoms.cov_nt2_head, n), b2)
        step = _difference(self.pair(self.atoms.cov_nt2_head, n + 1), b2)
        return (number(s, n) * b1 * b2 / head
                * (number(s, n + 1) / step - number(s, n) / head))


def _c2(x: int) -> int:
    return x * (x - 1) // 2


def _difference(pair: Tuple[float, float], c: float) -> float:
    return pair[0] - c * pair[1]


def _weight_at(weight, spec: DistributionSpec, y1: int, y2: int) -> float:
    return float(weight.values(spec, np.array([y1]), np.array([y2]))[0])


def _specialization_checks(display: _Display, n: int, a1: float, a2: float,
                           tol: float) -> List[Check]:
    atoms = display.atoms
    s = display.scheme
    specs = {family: DistributionSpec(family, s, n, a1, a2, PmfReading.PRINTED)
             for family in Family}
    checks: List[Check] = []

    def add(item: str, args: str, literal: Callable[[], float], general: Callable[[], float]):
        label = f"{item}({args}) {s.label},n={n},a=({a1:g},{a2:g})"
        watch = 'printed_specialization' if item in atoms.typos else None
        checks.append(Check(label, tol, lambda: (literal(), general()), watch))

    literal_pmfs = {Family.T1: display.pmf_t1, Family.NT1: display.pmf_nt1,
                    Family.T2: display.pmf_t2, Family.NT2: display.pmf_nt2}
    for family in Family:
        points = NT_POINTS if family.negative else T_POINTS
        for y1, y2 in points:
            add(f"pmf_{family.value}", f"y=({y1},{y2})",
                partial(literal_pmfs[family], n, a1, a2, y1, y2),
                partial(pmf, specs[family], y1, y2))

    t1, nt1, t2, nt2 = (specs[Family.T1], specs[Family.NT1], specs[Family.T2],
                        specs[Family.NT2])
    for m in (1, 2):
        add('tfk1', f"m1={m}", partial(display.tfk1, n, a1, m),
            partial(moments.fm_t1_y1, t1, m))
        add('tfk2', f"m2={m},y1=1",
            lambda m=m: (falling(s, n - 1, m) * a2 ** m
                         * atoms.moment[1](display.p, display.q, _c2(m))
                         / oplus_pow(s, 1.0, a2, m)),
            partial(moments.fm_t1_y2_given, t1, m, 1))
        add('tfk3', f"m2={m}", partial(display.tfk3, n, a1, a2, 0, m),
            partial(moments.fm_t1_y2, t1, m))
    for m1, m2 in ORDER_PAIRS:
        add('tfk4', f"m1={m1},m2={m2}", partial(display.tfk3, n, a1, a2, m1, m2),
            partial(moments.fm_t1_joint, t1, m1, m2))
    add('cov_t1', "", partial(display.cov_t1, n, a1, a2), partial(moments.cov_t1, t1))

    for m in (1, 2):
        add('ntfk1', f"m2={m}", lambda m=m: falling(s, n + m - 1, m) * a2 ** m,
            partial(moments.fm_nt1_w2, nt1, m))
        add('ntfk2', f"m1={m},w2=1", lambda m=m: falling(s, n + m, m) * a1 ** m,
            partial(moments.fm_nt1_w1_given, nt1, m, 1))
        add('ntfk3.rhs', f"m1={m}", partial(display.ntfk3_rhs, n, a1, m),
            partial(moments.fm_nt1_weighted, nt1, m))
        for w2 in range(3):
            weight = oplus_weighted(m).weight
            add('ntfk3.weight', f"m1={m},w2={w2}",
                partial(display.shifted, atoms.ntfk3_weight, n + w2, a2, m, 1.0),
                partial(_weight_at, weight, nt1, 0, w2))
            add('ntfk4.weight', f"m1={m},w2={w2}",
                partial(display.shifted, atoms.ntfk4_weight, n + w2, a2, m, 1.0),
                partial(_weight_at, weight, nt1, 0, w2))
    for m1, m2 in ORDER_PAIRS:
        add('ntfk4.rhs', f"m1={m1},m2={m2}",
            lambda m1=m1, m2=m2: falling(s, n + m1 + m2 - 1, m1 + m2) * a1 ** m1 * a2 ** m2,
            partial(moments.fm_nt1_joint_weighted, nt1, m1, m2))
    nt1_weight = corollary_pair(TransformKind.COROLLARY_NT1_A)[0].weight
    for w2 in range(3):
        add('cov_nt1.weight', f"w2={w2}",
            partial(display.shifted, atoms.cov_nt1_weight, n + w2, a2, 1, atoms.cov_nt1_sign),
            partial(_weight_at, nt1_weight, nt1, 0, w2))
    add('cov_nt1.value', "",
        lambda: number(s, n) * a1 * a2 * (number(s, n + 1) - number(s, n)),
        partial(moments.cov_nt1, nt1))

    for m in (1, 2):
        add('tsk2', f"m1={m}", lambda m=m: falling(s, n, m) * a1 ** m,
            partial(moments.fm_t2_x1, t2, m))
        add('tsk3', f"m2={m},x1=1", lambda m=m: falling(s, n - 1, m) * a2 ** m,
            partial(moments.fm_t2_x2_given, t2, m, 1))
        add('tsk4.rhs', f"m2={m}", lambda m=m: falling(s, n, m) * a2 ** m,
            partial(moments.fm_t2_weighted, t2, m))
        weight = t2_weighted(0, m).weight
        for x1 in range(2):
            for item in ('tsk4.weight', 'tsk5.weight'):
                add(item, f"m2={m},x1={x1}",
                    partial(display.shifted, atoms.tsk_weight, n - m - x1, a1, m, -1.0),
                    partial(_weight_at, weight, t2, x1, 0))
    for m1, m2 in ORDER_PAIRS:
        add('tsk5.rhs', f"m1={m1},m2={m2}",
            lambda m1=m1, m2=m2: falling(s, n, m1 + m2) * a1 ** m1 * a2 ** m2,
            partial(moments.fm_t2_joint_weighted, t2, m1, m2))
    t2_weight = corollary_pair(TransformKind.COROLLARY_T2)[1].weight
    for x1 in range(3):
        add('cov_t2.weight', f"x1={x1}",
            partial(display.shifted, atoms.cov_t2_weight, n - 1 - x1, a1, 1, -1.0),
            partial(_weight_at, t2_weight, t2, x1, 0))
    add('cov_t2.value', "",
        lambda: number(s, n) * a1 * a2 * (number(s, n - 1) - number(s, n)),
        partial(moments.cov_t2, t2))

    for m in (1, 2):
        add('ntsk2', f"m2={m}", partial(display.ntsk_rhs, n, a1, a2, 0, m),
            partial(moments.fm_nt2_v2, nt2, m))
        add('ntsk3', f"m1={m},v2=1",
            lambda m=m: (falling(s, n + m, m) * a1 ** m
                         / display.shifted(atoms.ntsk_weight, n + 1, a1, m, -1.0)),
            partial(moments.fm_nt2_v1_given, nt2, m, 1))
        add('ntsk4.rhs', f"m1={m}",
            lambda m=m: (falling(s, n + m - 1, m) * a1 ** m
                         / display.shifted(atoms.ntsk_weight, n, a2, m, -1.0)),
            partial(moments.fm_nt2_weighted, nt2, m))
        weight = nt2_weighted(m).weight
        for v2 in range(3):
            add('ntsk4.weight', f"m1={m},v2={v2}",
                partial(display.shifted, atoms.ntsk_weight, n + v2, a1, m, -1.0),
                partial(_weight_at, weight, nt2, 0, v2))
    for m1, m2 in ORDER_PAIRS:
        add('ntsk5.rhs', f"m1={m1},m2={m2}", partial(display.ntsk_rhs, n, a1, a2, m1, m2),
            partial(moments.fm_nt2_joint_weighted, nt2, m1, m2))
    nt2_weight = corollary_pair(TransformKind.COROLLARY_NT2_A)[0].weight
    for v2 in range(3):
        add('cov_nt2.weight', f"v2={v2}",
            partial(display.shifted, atoms.cov_nt2_weight, n + v2, a2, 1, -1.0),
            partial(_weight_at, nt2_weight, nt2, 0, v2))
    add('cov_nt2.value', "", partial(display.cov_nt2, n, a1, a2),
        partial(moments.cov_nt2, nt2))
    return checks


def audit_specializations(preset: Preset, p: float = 0.9, q: float = 0.5, n: int = 4,
                          params: Sequence[Tuple[float, float]] = ((0.4, 0.6),),
                          tolerances: Optional[ToleranceSettings] = None,
                          workers: int = 1) -> AuditReport:
    """Literal per-algebra displays against the general formulas in the preset scheme"""
    preset = Preset(preset)
    if preset not in CATALOG:
        raise DomainError(f"no per-algebra displays for preset {preset.value}")
    tolerances = tolerances or ToleranceSettings()
    display = _Display(preset, p, q)
    checks: List[Check] = []
    for a1, a2 in params:
        checks.extend(_specialization_checks(display, n, a1, a2, tolerances.specialization))
    return run_checks('specializations', checks, workers, [display.scheme], list(params),
                      {'specialization': tolerances.specialization})
