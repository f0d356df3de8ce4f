"""
Audit suites: closed forms against brute-force oracles, identities and normalization
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from deformed.errors import DeformedError
from deformed.numbers import binomial, factorial, falling, gbc2, number
from deformed.schemes import inverse_scheme, on_q_slice, q_slice
from deformed.shifted import oplus_pow, ominus_pow
from distributions import moments
from distributions.support import ORACLE_TAIL_TOL, TABLE_TAIL_TOL, negbin_mass, weight_grid
from models.distribution import DistributionSpec, Family, PmfReading
from models.report import AuditReport, AuditRow, Verdict
from models.scheme import DeformationScheme, Preset
from models.settings import ToleranceSettings
from verify.oracle import ExpectationQuery, corollary_covariance, expect
from verify.transforms import (
    Transform, TransformKind, falling_product, falling_y1, falling_y2, inv_falling_w1,
    inv_falling_w2, nt2_weighted, oplus_weighted, t2_weighted,
)

logger = logging.getLogger(__name__)

ABS_FLOOR = 1e-14
NUMERIC_ERRORS = (DeformedError, FloatingPointError, OverflowError, ZeroDivisionError)
SPLITTING_BETAS = (0.2, 0.5, 0.8)

# Mismatches on these keys are findings rather than failures.
WATCHLIST: Dict[str, str] = {
    'carry_over': "closed form holds on the q-slice phi1 = 1; alternate evaluates it there",
    'cov_nt1_sign': "minus-sign corollary weight; alternate uses the plus-sign weight",
    'cov_nt2_weight': "corollary weight carries b2; alternate uses b1 as in the joint moment",
    'ntsk5_order': "joint weight exponent printed as m2; alternate uses m1",
    'ntfkb_rhs': "right-hand side uses the inverse-scheme falling factorial; alternate does not",
    'ntskb_beta': "weight carries a stray second parameter; alternate reads it as beta",
    'quesne_inverse': "inverse relations assume D = phi1 - phi2; alternate divides by [1]^r",
    'printed_reading': "printed law normalizes only on the q-slice; alternate is the process law",
    'printed_specialization': "per-algebra display disagrees with the general formula",
}

Pair = Callable[[], Tuple[float, float]]


@dataclass(frozen=True)
class Check:
    """A deferred closed-form/oracle pair with its watchlist entry"""
    label: str
    tolerance: float
    primary: Pair
    watch: Optional[str] = None
    alternate: Optional[Pair] = None


@dataclass
class AuditGrid:
    """Schemes, sizes and parameter pairs swept by the normalization audit"""
    schemes: List[DeformationScheme]
    ns: List[int] = field(default_factory=lambda: list(range(1, 11)))
    params: List[Tuple[float, float]] = field(
        default_factory=lambda: [(a1, a2) for a1 in (0.2, 0.5, 0.8) for a2 in (0.2, 0.5, 0.8)])
    families: List[Family] = field(default_factory=lambda: list(Family))


def rel_err(closed: float, oracle: float, floor: float = ABS_FLOOR) -> float:
    return abs(closed - oracle) / max(abs(oracle), floor)


def _evaluate(pair: Pair) -> Tuple[float, float, float]:
    closed, oracle = pair()
    if not (math.isfinite(closed) and math.isfinite(oracle)):
        raise FloatingPointError(f"non-finite values {closed!r}, {oracle!r}")
    return closed, oracle, rel_err(closed, oracle)


def run_check(check: Check) -> AuditRow:
    """Turn one check into a report row; numeric trouble becomes a FAIL row

    A watched check whose primary evaluation breaks down is still settled by
    its alternate, since the breakdown is part of the finding.
    """
    failure = None
    try:
        closed, oracle, err = _evaluate(check.primary)
    except NUMERIC_ERRORS as e:
        closed, oracle, err = math.nan, math.nan, math.inf
        failure = f"{type(e).__name__}: {e}"
    if failure is None and err <= check.tolerance:
        return AuditRow(check.label, closed, oracle, err, Verdict.PASS)
    if check.watch not in WATCHLIST or (failure and check.alternate is None):
        return AuditRow(check.label, closed, oracle, err, Verdict.FAIL, note=failure)
    note = WATCHLIST[check.watch]
    if failure:
        note = f"{note}; primary failed: {failure}"
    if check.alternate is None:
        return AuditRow(check.label, closed, oracle, err, Verdict.SUSPECTED_TYPO, note=note)
    try:
        alt_closed, alt_oracle, alt_err = _evaluate(check.alternate)
    except NUMERIC_ERRORS as e:
        return AuditRow(check.label, closed, oracle, err, Verdict.FAIL,
                        note=f"{note}; alternate failed: {type(e).__name__}: {e}")
    verdict = Verdict.SUSPECTED_TYPO if alt_err <= check.tolerance else Verdict.FAIL
    return AuditRow(check.label, closed, oracle, err, verdict, alternate=alt_closed,
                    alternate_oracle=alt_oracle, alternate_rel_err=alt_err, note=note)


def run_checks(suite: str, checks: Sequence[Check], workers: int = 1,
               schemes: Iterable[DeformationScheme] = (), params: Iterable = (),
               tolerances: Optional[Dict[str, float]] = None) -> AuditReport:
    """Evaluate checks, concurrently if workers > 1, keeping their order"""
    if workers > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_check, checks))
    else:
        rows = [run_check(check) for check in checks]
    for row in rows:
        if row.verdict != Verdict.PASS:
            logger.warning(f"{suite}: {row.verdict.value} {row.label} "
                           f"(closed {row.closed_form!r}, oracle {row.oracle!r})")
    report = AuditReport(suite, rows, [s.to_dict() for s in schemes],
                         [list(p) if isinstance(p, tuple) else p for p in params],
                         dict(tolerances or {}))
    logger.info(f"{suite}: {len(rows)} rows, {report.summary()}")
    return report


# theorem and corollary checks

SpecPair = Callable[[DistributionSpec], Tuple[float, float]]


def _moment(closed: Callable[[DistributionSpec], float], transform: Transform,
            tail_tol: float, given: Optional[int] = None) -> SpecPair:
    def pair(spec: DistributionSpec) -> Tuple[float, float]:
        return closed(spec), expect(ExpectationQuery(spec, transform, tail_tol, given))
    return pair


def _covariance(closed: Callable[[DistributionSpec], float], kind: TransformKind,
                tail_tol: float) -> SpecPair:
    def pair(spec: DistributionSpec) -> Tuple[float, float]:
        return closed(spec), corollary_covariance(spec, kind, tail_tol)
    return pair


def _theorem_check(name: str, args: str, spec: DistributionSpec, pair: SpecPair,
                   tolerance: float, watch: Optional[str] = None,
                   alternate: Optional[SpecPair] = None) -> Check:
    """Check on spec; off the q-slice the closed form is a carried-over q-case result"""
    label = f"{name}({args}) {spec.label}"
    if alternate is None and not on_q_slice(spec.scheme):
        watch, alternate = 'carry_over', pair
    slice_spec = spec.with_scheme(q_slice(spec.scheme))
    return Check(label, tolerance, partial(pair, spec), watch,
                 None if alternate is None else partial(alternate, slice_spec))


def _t1_checks(spec: DistributionSpec, max_order: int, tol: float, tail: float) -> List[Check]:
    n = spec.n
    checks = []
    for m1 in range(1, min(max_order, n) + 1):
        checks.append(_theorem_check('tfk1', f"m1={m1}", spec, _moment(
            partial(moments.fm_t1_y1, m1=m1), falling_y1(m1), tail), tol))
    for y1 in range(min(2, n) + 1):
        for m2 in range(1, min(max_order, n - y1) + 1):
            checks.append(_theorem_check('tfk2', f"m2={m2},y1={y1}", spec, _moment(
                partial(moments.fm_t1_y2_given, m2=m2, y1=y1), falling_y2(m2), tail, y1), tol))
    for m2 in range(1, min(max_order, n) + 1):
        checks.append(_theorem_check('tfk3', f"m2={m2}", spec, _moment(
            partial(moments.fm_t1_y2, m2=m2), falling_y2(m2), tail), tol))
    for m1 in range(1, max_order + 1):
        for m2 in range(1, max_order + 1):
            if m1 + m2 <= n:
                checks.append(_theorem_check('tfk4', f"m1={m1},m2={m2}", spec, _moment(
                    partial(moments.fm_t1_joint, m1=m1, m2=m2), falling_product(m1, m2), tail),
                    tol))
    checks.append(_theorem_check('cov_t1', "", spec, _covariance(
        moments.cov_t1, TransformKind.COROLLARY_T1, tail), tol))
    return checks


def _nt1_checks(spec: DistributionSpec, max_order: int, tol: float, tail: float) -> List[Check]:
    checks = []
    for m2 in range(1, max_order + 1):
        checks.append(_theorem_check('ntfk1', f"m2={m2}", spec, _moment(
            partial(moments.fm_nt1_w2, m2=m2), inv_falling_w2(m2), tail), tol))
    for w2 in range(3):
        for m1 in range(1, max_order + 1):
            checks.append(_theorem_check('ntfk2', f"m1={m1},w2={w2}", spec, _moment(
                partial(moments.fm_nt1_w1_given, m1=m1, w2=w2), inv_falling_w1(m1), tail, w2),
                tol))
    for m1 in range(1, max_order + 1):
        checks.append(_theorem_check('ntfk3', f"m1={m1}", spec, _moment(
            partial(moments.fm_nt1_weighted, m1=m1), oplus_weighted(m1), tail), tol))
    for m1 in range(1, max_order + 1):
        for m2 in range(1, max_order + 1):
            checks.append(_theorem_check('ntfk4', f"m1={m1},m2={m2}", spec, _moment(
                partial(moments.fm_nt1_joint_weighted, m1=m1, m2=m2),
                oplus_weighted(m1, m2), tail), tol))
    reading_a = _covariance(moments.cov_nt1, TransformKind.COROLLARY_NT1_A, tail)
    checks.append(_theorem_check('cov_nt1', "A", spec, reading_a, tol))
    checks.append(_theorem_check('cov_nt1', "B", spec, _covariance(
        moments.cov_nt1, TransformKind.COROLLARY_NT1_B, tail), tol,
        watch='cov_nt1_sign', alternate=reading_a))
    return checks


def _t2_checks(spec: DistributionSpec, max_order: int, tol: float, tail: float) -> List[Check]:
    n = spec.n
    checks = []
    for m1 in range(1, min(max_order, n) + 1):
        checks.append(_theorem_check('tsk2', f"m1={m1}", spec, _moment(
            partial(moments.fm_t2_x1, m1=m1), falling_y1(m1), tail), tol))
    for x1 in range(min(2, n) + 1):
        for m2 in range(1, min(max_order, n - x1) + 1):
            checks.append(_theorem_check('tsk3', f"m2={m2},x1={x1}", spec, _moment(
                partial(moments.fm_t2_x2_given, m2=m2, x1=x1), falling_y2(m2), tail, x1), tol))
    for m2 in range(1, min(max_order, n) + 1):
        checks.append(_theorem_check('tsk4', f"m2={m2}", spec, _moment(
            partial(moments.fm_t2_weighted, m2=m2), t2_weighted(0, m2), tail), tol))
    for m1 in range(1, max_order + 1):
        for m2 in range(1, max_order + 1):
            if m1 + m2 <= n:
                checks.append(_theorem_check('tsk5', f"m1={m1},m2={m2}", spec, _moment(
                    partial(moments.fm_t2_joint_weighted, m1=m1, m2=m2),
                    t2_weighted(m1, m2), tail), tol))
    checks.append(_theorem_check('cov_t2', "", spec, _covariance(
        moments.cov_t2, TransformKind.COROLLARY_T2, tail), tol))
    return checks


def _nt2_checks(spec: DistributionSpec, max_order: int, tol: float, tail: float) -> List[Check]:
    checks = []
    for m2 in range(1, max_order + 1):
        checks.append(_theorem_check('ntsk2', f"m2={m2}", spec, _moment(
            partial(moments.fm_nt2_v2, m2=m2), falling_y2(m2), tail), tol))
    for v2 in range(3):
        for m1 in range(1, max_order + 1):
            checks.append(_theorem_check('ntsk3', f"m1={m1},v2={v2}", spec, _moment(
                partial(moments.fm_nt2_v1_given, m1=m1, v2=v2), falling_y1(m1), tail, v2), tol))
    for m1 in range(1, max_order + 1):
        checks.append(_theorem_check('ntsk4', f"m1={m1}", spec, _moment(
            partial(moments.fm_nt2_weighted, m1=m1), nt2_weighted(m1), tail), tol))
    for m1 in range(1, max_order + 1):
        for m2 in range(1, max_order + 1):
            closed = partial(moments.fm_nt2_joint_weighted, m1=m1, m2=m2)
            checks.append(_theorem_check(
                'ntsk5', f"m1={m1},m2={m2}", spec,
                _moment(closed, nt2_weighted(m1, m2, order=m2), tail), tol,
                watch='ntsk5_order', alternate=_moment(closed, nt2_weighted(m1, m2), tail)))
    reading_b = _covariance(moments.cov_nt2, TransformKind.COROLLARY_NT2_B, tail)
    checks.append(_theorem_check('cov_nt2', "A", spec, _covariance(
        moments.cov_nt2, TransformKind.COROLLARY_NT2_A, tail), tol,
        watch='cov_nt2_weight', alternate=reading_b))
    checks.append(_theorem_check('cov_nt2', "B", spec, reading_b, tol))
    return checks


_FAMILY_CHECKS = {
    Family.T1: _t1_checks,
    Family.NT1: _nt1_checks,
    Family.T2: _t2_checks,
    Family.NT2: _nt2_checks,
}


def _default_params() -> List[Tuple[float, float]]:
    return [(a1, a2) for a1 in (0.2, 0.5, 0.8) for a2 in (0.2, 0.5, 0.8)]


def audit_spec(spec: DistributionSpec, max_order: int = 2,
               tolerances: Optional[ToleranceSettings] = None,
               tail_tol: float = ORACLE_TAIL_TOL) -> AuditReport:
    """Theorem rows of a single distribution; max_order 0 keeps only the covariances"""
    tolerances = tolerances or ToleranceSettings()
    tol = tolerances.truncated if spec.family.negative else tolerances.finite
    checks = _FAMILY_CHECKS[spec.family](spec, max_order, tol, tail_tol)
    suite = 'moments' if max_order else 'cov'
    return run_checks(suite, checks, 1, [spec.scheme], [[spec.a1, spec.a2]],
                      {'tolerance': tol, 'tail_tol': tail_tol})


def audit_theorems(scheme: DeformationScheme,
                   params: Optional[Sequence[Tuple[float, float]]] = None,
                   max_n: int = 6, max_order: int = 2,
                   families: Sequence[Family] = tuple(Family),
                   tolerances: Optional[ToleranceSettings] = None,
                   tail_tol: float = ORACLE_TAIL_TOL, workers: int = 1) -> AuditReport:
    """Factorial-moment theorems and covariance corollaries against the oracle"""
    tolerances = tolerances or ToleranceSettings()
    params = _default_params() if params is None else list(params)
    checks: List[Check] = []
    for family in families:
        family = Family(family)
        tol = tolerances.truncated if family.negative else tolerances.finite
        for n in range(1, max_n + 1):
            for a1, a2 in params:
                spec = DistributionSpec(family, scheme, n, a1, a2)
                checks.extend(_FAMILY_CHECKS[family](spec, max_order, tol, tail_tol))
    return run_checks('theorems', checks, workers, [scheme], params,
                      {'finite': tolerances.finite, 'truncated': tolerances.truncated,
                       'tail_tol': tail_tol})


# univariate lemmas

def audit_lemmas(scheme: DeformationScheme,
                 params: Optional[Sequence[Tuple[float, float]]] = None,
                 max_n: int = 6, max_order: int = 2,
                 tolerances: Optional[ToleranceSettings] = None,
                 tail_tol: float = ORACLE_TAIL_TOL, workers: int = 1) -> AuditReport:
    """Negative binomial lemmas: normalization of the printed laws and their moments

    The lemma parameter is a2 of each pair; the second-kind lemma is also read
    with a1 standing in for the stray second parameter of its weight.
    """
    tolerances = tolerances or ToleranceSettings()
    params = _default_params() if params is None else list(params)
    tol = tolerances.truncated
    checks: List[Check] = []
    for n in range(1, max_n + 1):
        for a1, a2 in params:
            nt1 = DistributionSpec(Family.NT1, scheme, n, a1, a2)
            nt2 = DistributionSpec(Family.NT2, scheme, n, a1, a2)
            for name, law in (('ntfka', 'negbin1'), ('ntska', 'negbin2')):
                spec = nt1 if name == 'ntfka' else nt2
                label = f"{name}(alpha={a2:g}) {spec.label}"

                def mass(reading, law=law, s=scheme, n=n, alpha=a2):
                    return 1.0, negbin_mass(s, n, alpha, law, reading, tail_tol)

                checks.append(Check(label, tol, partial(mass, PmfReading.PRINTED),
                                    'printed_reading', partial(mass, PmfReading.NORMALIZED)))
            for m in range(1, max_order + 1):
                checks.append(_theorem_check(
                    'ntfkb', f"m={m}", nt1,
                    _moment(lambda s, m=m: moments.fm_negbin1(s.scheme, s.n, s.a2, m,
                                                              inverse_rhs=True),
                            inv_falling_w2(m), tail_tol), tol,
                    watch='ntfkb_rhs',
                    alternate=_moment(lambda s, m=m: moments.fm_negbin1(s.scheme, s.n, s.a2, m),
                                      inv_falling_w2(m), tail_tol)))
                beta_reading = _moment(lambda s, m=m: moments.fm_negbin2(s.scheme, s.n, s.a2, m),
                                       falling_y2(m), tail_tol)
                checks.append(_theorem_check('ntskb', f"m={m}", nt2, beta_reading, tol))
                checks.append(_theorem_check(
                    'ntskb', f"m={m},stray", nt2,
                    _moment(lambda s, m=m: moments.fm_negbin2(s.scheme, s.n, s.a2, m,
                                                              weight_beta=s.a1),
                            falling_y2(m), tail_tol), tol,
                    watch='ntskb_beta', alternate=beta_reading))
    return run_checks('lemmas', checks, workers, [scheme], params,
                      {'truncated': tol, 'tail_tol': tail_tol})


# identities of the deformed calculus

def _inverse_checks(s: DeformationScheme, tol: float, max_index: int = 12) -> List[Check]:
    inv = inverse_scheme(s)
    prod = s.phi1 * s.phi2
    watch = 'quesne_inverse' if s.preset == Preset.QUESNE else None
    unit, inv_unit = number(s, 1), number(inv, 1)
    checks = []

    def add(name: str, args: str, closed: Callable[[], float], oracle: Callable[[], float],
            factors: int):
        def alternate():
            return closed() / unit ** factors, oracle() / inv_unit ** factors
        checks.append(Check(f"{name}({args}) {s.label}", tol,
                            lambda: (closed(), oracle()), watch,
                            alternate if watch else None))

    for x in range(1, max_index + 1):
        add('inverse_number', f"x={x}", partial(lambda x: prod ** (1 - x) * number(s, x), x),
            partial(number, inv, x), 1)
    for r in range(1, max_index + 1):
        add('inverse_factorial', f"r={r}",
            partial(lambda r: prod ** (-gbc2(r)) * factorial(s, r), r),
            partial(factorial, inv, r), r)
    for x in range(1, min(max_index, 10) + 1):
        for r in range(1, x + 1):
            add('inverse_falling', f"x={x},r={r}",
                partial(lambda x, r: prod ** (-x * r + gbc2(r + 1)) * falling(s, x, r), x, r),
                partial(falling, inv, x, r), r)
    return checks


def _binomial_sum(s: DeformationScheme, n: int, t: float) -> float:
    return math.fsum(binomial(s, n, k) * s.phi1 ** gbc2(n - k) * s.phi2 ** gbc2(k) * t ** k
                     for k in range(n + 1))


def _identity_checks(s: DeformationScheme, tolerances: ToleranceSettings,
                     max_n: int, max_order: int) -> List[Check]:
    tol = tolerances.identity
    checks = []
    for n in range(1, max_n + 1):
        for t in (0.1, 0.5, 0.9):
            checks.append(Check(
                f"binomial_formula(n={n},t={t:g}) {s.label}", tolerances.binomial_formula,
                partial(lambda n, t: (oplus_pow(s, 1.0, t, n), _binomial_sum(s, n, t)), n, t)))
    for n in range(1, max_n + 1):
        for m in range(1, min(max_order, n) + 1):
            for y in range(n - m + 1):
                checks.append(Check(
                    f"identity_a(n={n},y={y},m={m}) {s.label}", tol,
                    partial(lambda n, y, m: (falling(s, n - y, m) * binomial(s, n, y),
                                             falling(s, n, m) * binomial(s, n - m, y)), n, y, m)))
    for n in range(2, max_n + 1):
        for m1 in range(1, max_order + 1):
            for m2 in range(1, max_order + 1):
                for y in range(m1, n - m2 + 1):
                    checks.append(Check(
                        f"identity_b(n={n},y={y},m1={m1},m2={m2}) {s.label}", tol,
                        partial(lambda n, y, m1, m2: (
                            falling(s, y, m1) * falling(s, n - y, m2) * binomial(s, n, y),
                            falling(s, n, m1 + m2) * binomial(s, n - m1 - m2, y - m1)),
                            n, y, m1, m2)))
    for n in range(1, max_n + 1):
        for m in range(1, max_order + 1):
            for w in range(2 * max_n + 1):
                checks.append(Check(
                    f"identity_c(n={n},w={w},m={m}) {s.label}", tol,
                    partial(lambda n, w, m: (
                        falling(s, n + w + m - 1, m) * binomial(s, n + w - 1, w),
                        falling(s, n + m - 1, m) * binomial(s, n + m + w - 1, w)), n, w, m)))
    for beta in SPLITTING_BETAS:
        for n in range(1, max_n + 1):
            for x in range(n + 1):
                for m in range(1, min(max_order, n - x) + 1):
                    k = n - m - x
                    checks.append(Check(
                        f"splitting(n={n},x={x},m={m},beta={beta:g}) {s.label}", tol,
                        partial(lambda n, x, m, k, beta: (
                            ominus_pow(s, 1.0, beta, n - x),
                            ominus_pow(s, 1.0, beta, k)
                            * ominus_pow(s, s.phi1 ** k, beta * s.phi2 ** k, m)),
                            n, x, m, k, beta)))
    return checks


def audit_identities(schemes: Sequence[DeformationScheme],
                     tolerances: Optional[ToleranceSettings] = None,
                     max_n: int = 15, max_order: int = 4, workers: int = 1) -> AuditReport:
    """Inverse-parameter relations, the binomial formula and the proof identities"""
    tolerances = tolerances or ToleranceSettings()
    checks: List[Check] = []
    for s in schemes:
        try:
            checks.extend(_inverse_checks(s, tolerances.identity))
        except DeformedError as e:
            logger.warning(f"{s.label}: inverse relations skipped: {e}")
        checks.extend(_identity_checks(s, tolerances, max_n, max_order))
    return run_checks('identities', checks, workers, schemes, [],
                      {'identity': tolerances.identity,
                       'binomial_formula': tolerances.binomial_formula})


# normalization

def _mass_pair(spec: DistributionSpec, tail_tol: float) -> Tuple[float, float]:
    return 1.0, weight_grid(spec, tail_tol).captured_mass


def normalization_sweep(grid: AuditGrid, reading: PmfReading = PmfReading.NORMALIZED,
                        tolerances: Optional[ToleranceSettings] = None,
                        tail_tol: float = TABLE_TAIL_TOL, workers: int = 1) -> AuditReport:
    """Total mass of every family, scheme and parameter point in the grid"""
    tolerances = tolerances or ToleranceSettings()
    reading = PmfReading(reading)
    checks: List[Check] = []
    specs: List[DistributionSpec] = []
    for family in grid.families:
        family = Family(family)
        tol = tail_tol if family.negative else tolerances.normalization
        for scheme in grid.schemes:
            for n in grid.ns:
                for a1, a2 in grid.params:
                    spec = DistributionSpec(family, scheme, n, a1, a2, reading)
                    label = f"mass({reading.value}) {spec.label}"
                    alternate = None
                    watch = None
                    if reading == PmfReading.PRINTED:
                        watch = 'printed_reading'
                        alternate = partial(_mass_pair,
                                            spec.with_reading(PmfReading.NORMALIZED), tail_tol)
                    specs.append(spec)
                    checks.append(Check(label, tol, partial(_mass_pair, spec, tail_tol),
                                        watch, alternate))
    report = run_checks('normalization', checks, workers, grid.schemes,
                        [list(p) for p in grid.params],
                        {'normalization': tolerances.normalization, 'tail_tol': tail_tol})
    for row, spec in zip(report.rows, specs):
        if row.verdict == Verdict.PASS and np.any(weight_grid(spec, tail_tol).weights < 0):
            row.note = "signed weights"
    return report
