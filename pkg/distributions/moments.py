"""
Closed-form factorial moments and covariances of the trinomial families

Every function evaluates the displayed theorem, lemma or corollary formula in
the scheme of its spec. The formulas are exact on schemes with phi1 = 1; the
verify package measures how far they drift elsewhere.
"""
from typing import Dict, Optional

from deformed.errors import DomainError
from deformed.numbers import falling, gbc2, number
from deformed.schemes import inverse_scheme
from deformed.shifted import oplus_pow, ominus_pow
from models.distribution import DistributionSpec, Family
from models.scheme import DeformationScheme


def _require(spec: DistributionSpec, family: Family):
    if spec.family != family:
        raise DomainError(f"expected a {family.value} spec, got {spec.family.value}")


def _check_order(name: str, value: int, upper: Optional[int] = None):
    if value < 0 or (upper is not None and value > upper):
        bound = "" if upper is None else f" <= {upper}"
        raise DomainError(f"order {name}={value} outside the range 0{bound}")


# first kind

def fm_t1_y1(spec: DistributionSpec, m1: int) -> float:
    """E([Y1]_m1)"""
    _require(spec, Family.T1)
    _check_order("m1", m1, spec.n)
    s = spec.scheme
    return (spec.a1 ** m1 * s.phi2 ** gbc2(m1) * falling(s, spec.n, m1)
            / oplus_pow(s, 1.0, spec.a1, m1))


def fm_t1_y2_given(spec: DistributionSpec, m2: int, y1: int) -> float:
    """E([Y2]_m2 | Y1 = y1)"""
    _require(spec, Family.T1)
    _check_order("y1", y1, spec.n)
    _check_order("m2", m2, spec.n - y1)
    s = spec.scheme
    return (spec.a2 ** m2 * s.phi2 ** gbc2(m2) * falling(s, spec.n - y1, m2)
            / oplus_pow(s, 1.0, spec.a2, m2))


def fm_t1_y2(spec: DistributionSpec, m2: int) -> float:
    """E([Y2]_m2)"""
    _require(spec, Family.T1)
    _check_order("m2", m2, spec.n)
    s, n = spec.scheme, spec.n
    rest = n - m2
    return (spec.a2 ** m2 * s.phi1 ** (gbc2(m2) + m2 * rest) * s.phi2 ** gbc2(m2)
            * falling(s, n, m2)
            / (oplus_pow(s, 1.0, spec.a2, m2)
               * oplus_pow(s, s.phi1 ** rest, spec.a1 * s.phi2 ** rest, m2)))


def fm_t1_joint(spec: DistributionSpec, m1: int, m2: int) -> float:
    """E([Y1]_m1 [Y2]_m2)"""
    _require(spec, Family.T1)
    _check_order("m2", m2, spec.n)
    _check_order("m1", m1, spec.n - m2)
    s, n = spec.scheme, spec.n
    rest = n - m2
    return (s.phi1 ** (gbc2(m2) + m2 * rest) * s.phi2 ** (gbc2(m1) + gbc2(m2))
            * spec.a1 ** m1 * spec.a2 ** m2 * falling(s, n, m1 + m2)
            / (oplus_pow(s, 1.0, spec.a1, m1) * oplus_pow(s, 1.0, spec.a2, m2)
               * oplus_pow(s, s.phi1 ** rest, spec.a1 * s.phi2 ** rest, m2)))


def cov_t1(spec: DistributionSpec) -> float:
    """Cov([Y1], [Y2])"""
    _require(spec, Family.T1)
    s, n = spec.scheme, spec.n
    a1, a2 = spec.a1, spec.a2
    return (s.phi1 ** (n - 1) * a1 * a2 * number(s, n) * (number(s, n - 1) - number(s, n))
            / ((1 + a1) * (1 + a2) * (s.phi1 ** (n - 1) + a1 * s.phi2 ** (n - 1))))


# negative first kind: moments of inverse-scheme falling factorials

def fm_nt1_w2(spec: DistributionSpec, m2: int) -> float:
    """E([W2]'_m2)"""
    _require(spec, Family.NT1)
    _check_order("m2", m2)
    return spec.a2 ** m2 * falling(spec.scheme, spec.n + m2 - 1, m2)


def fm_nt1_w1_given(spec: DistributionSpec, m1: int, w2: int) -> float:
    """E([W1]'_m1 | W2 = w2)"""
    _require(spec, Family.NT1)
    _check_order("m1", m1)
    _check_order("w2", w2)
    return spec.a1 ** m1 * falling(spec.scheme, spec.n + w2 + m1 - 1, m1)


def fm_nt1_weighted(spec: DistributionSpec, m1: int) -> float:
    """E([W1]'_m1 / (phi1^(n+W2) (+) a2 phi2^(n+W2))^m1)"""
    _require(spec, Family.NT1)
    _check_order("m1", m1)
    return spec.a1 ** m1 * falling(spec.scheme, spec.n + m1 - 1, m1)


def fm_nt1_joint_weighted(spec: DistributionSpec, m1: int, m2: int) -> float:
    """E([W1]'_m1 [W2]'_m2 / (phi1^(n+W2) (+) a2 phi2^(n+W2))^m1)"""
    _require(spec, Family.NT1)
    _check_order("m1", m1)
    _check_order("m2", m2)
    return (spec.a1 ** m1 * spec.a2 ** m2
            * falling(spec.scheme, spec.n + m1 + m2 - 1, m1 + m2))


def cov_nt1(spec: DistributionSpec) -> float:
    """Cov of [W1]' / (phi1^(n+W2) + a2 phi2^(n+W2)) and [W2]'"""
    _require(spec, Family.NT1)
    s, n = spec.scheme, spec.n
    return number(s, n) * spec.a1 * spec.a2 * (number(s, n + 1) - number(s, n))


# second kind

def fm_t2_x1(spec: DistributionSpec, m1: int) -> float:
    """E([X1]_m1)"""
    _require(spec, Family.T2)
    _check_order("m1", m1, spec.n)
    return spec.a1 ** m1 * falling(spec.scheme, spec.n, m1)


def fm_t2_x2_given(spec: DistributionSpec, m2: int, x1: int) -> float:
    """E([X2]_m2 | X1 = x1)"""
    _require(spec, Family.T2)
    _check_order("x1", x1, spec.n)
    _check_order("m2", m2, spec.n - x1)
    return spec.a2 ** m2 * falling(spec.scheme, spec.n - x1, m2)


def fm_t2_weighted(spec: DistributionSpec, m2: int) -> float:
    """E([X2]_m2 / (phi1^(n-m2-X1) (-) b1 phi2^(n-m2-X1))^m2)"""
    _require(spec, Family.T2)
    _check_order("m2", m2, spec.n)
    return spec.a2 ** m2 * falling(spec.scheme, spec.n, m2)


def fm_t2_joint_weighted(spec: DistributionSpec, m1: int, m2: int) -> float:
    """E([X1]_m1 [X2]_m2 / (phi1^(n-m2-X1) (-) b1 phi2^(n-m2-X1))^m2)"""
    _require(spec, Family.T2)
    _check_order("m2", m2, spec.n)
    _check_order("m1", m1, spec.n - m2)
    return spec.a1 ** m1 * spec.a2 ** m2 * falling(spec.scheme, spec.n, m1 + m2)


def cov_t2(spec: DistributionSpec) -> float:
    """Cov of [X1] and [X2] / (phi1^(n-1-X1) - b1 phi2^(n-1-X1))"""
    _require(spec, Family.T2)
    s, n = spec.scheme, spec.n
    return number(s, n) * spec.a1 * spec.a2 * (number(s, n - 1) - number(s, n))


# negative second kind

def _head_weight(s: DeformationScheme, n: int, beta: float, order: int) -> float:
    return ominus_pow(s, s.phi1 ** n, beta * s.phi2 ** n, order)


def fm_nt2_v2(spec: DistributionSpec, m2: int) -> float:
    """E([V2]_m2)"""
    _require(spec, Family.NT2)
    _check_order("m2", m2)
    s, n = spec.scheme, spec.n
    return spec.a2 ** m2 * falling(s, n + m2 - 1, m2) / _head_weight(s, n, spec.a2, m2)


def fm_nt2_v1_given(spec: DistributionSpec, m1: int, v2: int) -> float:
    """E([V1]_m1 | V2 = v2)"""
    _require(spec, Family.NT2)
    _check_order("m1", m1)
    _check_order("v2", v2)
    s, n = spec.scheme, spec.n
    return (spec.a1 ** m1 * falling(s, n + v2 + m1 - 1, m1)
            / _head_weight(s, n + v2, spec.a1, m1))


def fm_nt2_weighted(spec: DistributionSpec, m1: int) -> float:
    """E([V1]_m1 (phi1^(n+V2) (-) b1 phi2^(n+V2))^m1)"""
    _require(spec, Family.NT2)
    _check_order("m1", m1)
    s, n = spec.scheme, spec.n
    return spec.a1 ** m1 * falling(s, n + m1 - 1, m1) / _head_weight(s, n, spec.a2, m1)


def fm_nt2_joint_weighted(spec: DistributionSpec, m1: int, m2: int) -> float:
    """E([V1]_m1 [V2]_m2 (phi1^(n+V2) (-) b1 phi2^(n+V2))^m2), exponent as displayed"""
    _require(spec, Family.NT2)
    _check_order("m1", m1)
    _check_order("m2", m2)
    s, n = spec.scheme, spec.n
    return (spec.a1 ** m1 * spec.a2 ** m2 * falling(s, n + m1 + m2 - 1, m1 + m2)
            / _head_weight(s, n, spec.a2, m1 + m2))


def cov_nt2(spec: DistributionSpec) -> float:
    """Cov of (phi1^(n+V2) - b phi2^(n+V2)) [V1] and [V2]"""
    _require(spec, Family.NT2)
    s, n = spec.scheme, spec.n
    b2 = spec.a2
    head = s.phi1 ** n - b2 * s.phi2 ** n
    step = s.phi1 ** (n + 1) - b2 * s.phi2 ** (n + 1)
    return (number(s, n) * spec.a1 * b2 / head
            * (number(s, n + 1) / step - number(s, n) / head))


# univariate lemmas

def fm_negbin1(s: DeformationScheme, n: int, alpha: float, m: int,
               inverse_rhs: bool = False) -> float:
    """E([U]'_m) for the first-kind negative binomial law

    inverse_rhs evaluates the right-hand side with the inverse-scheme falling
    factorial, as the lemma is displayed.
    """
    _check_order("m", m)
    if inverse_rhs:
        return alpha ** m * falling(inverse_scheme(s), n + m - 1, m)
    return alpha ** m * falling(s, n + m - 1, m)


def fm_negbin2(s: DeformationScheme, n: int, beta: float, m: int,
               weight_beta: Optional[float] = None) -> float:
    """E([T]_m) for the second-kind negative binomial law

    weight_beta replaces beta inside the (phi1^n (-) beta phi2^n)^m weight.
    """
    _check_order("m", m)
    weight = beta if weight_beta is None else weight_beta
    return beta ** m * falling(s, n + m - 1, m) / _head_weight(s, n, weight, m)


COVARIANCES = {
    Family.T1: cov_t1,
    Family.NT1: cov_nt1,
    Family.T2: cov_t2,
    Family.NT2: cov_nt2,
}


def closed_forms(spec: DistributionSpec, m1: int, m2: int) -> Dict[str, float]:
    """Unconditional moment formulas of the family at orders (m1, m2) and its covariance

    Orders outside a finite family's range are left out.
    """
    _check_order("m1", m1)
    _check_order("m2", m2)
    n = spec.n
    if spec.family == Family.T1:
        forms = [('tfk1', f"m1={m1}", m1 <= n, lambda: fm_t1_y1(spec, m1)),
                 ('tfk3', f"m2={m2}", m2 <= n, lambda: fm_t1_y2(spec, m2)),
                 ('tfk4', f"m1={m1},m2={m2}", m1 + m2 <= n,
                  lambda: fm_t1_joint(spec, m1, m2))]
    elif spec.family == Family.NT1:
        forms = [('ntfk1', f"m2={m2}", True, lambda: fm_nt1_w2(spec, m2)),
                 ('ntfk3', f"m1={m1}", True, lambda: fm_nt1_weighted(spec, m1)),
                 ('ntfk4', f"m1={m1},m2={m2}", True,
                  lambda: fm_nt1_joint_weighted(spec, m1, m2))]
    elif spec.family == Family.T2:
        forms = [('tsk2', f"m1={m1}", m1 <= n, lambda: fm_t2_x1(spec, m1)),
                 ('tsk4', f"m2={m2}", m2 <= n, lambda: fm_t2_weighted(spec, m2)),
                 ('tsk5', f"m1={m1},m2={m2}", m1 + m2 <= n,
                  lambda: fm_t2_joint_weighted(spec, m1, m2))]
    else:
        forms = [('ntsk2', f"m2={m2}", True, lambda: fm_nt2_v2(spec, m2)),
                 ('ntsk4', f"m1={m1}", True, lambda: fm_nt2_weighted(spec, m1)),
                 ('ntsk5', f"m1={m1},m2={m2}", True,
                  lambda: fm_nt2_joint_weighted(spec, m1, m2))]
    values = {f"{name}({args})": evaluate() for name, args, valid, evaluate in forms if valid}
    values[f"cov_{spec.family.value}()"] = COVARIANCES[spec.family](spec)
    return values
