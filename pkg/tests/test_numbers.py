import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats, integers, sampled_from
from pytest import approx, mark, raises

from deformed.errors import DomainError
from deformed.numbers import (
    binomial, factorial, falling, falling_array, falling_or_zero, gbc2,
    negative_trinomial_coeff, number, trinomial_coeff,
)
from deformed.precise import precise, precise_sum
from deformed.schemes import inverse_scheme, on_q_slice, q_slice
from deformed.shifted import oplus_pow, ominus_pow, shifted_array
from deformed.summation import CompensatedSum, compensated_total, two_sum
from models.scheme import DeformationScheme, Preset

SCHEMES = [DeformationScheme.from_preset(preset, 0.9, 0.5)
           for preset in (Preset.BM, Preset.JS, Preset.CJ, Preset.QUESNE)]


def test_js_numbers(js):
    assert number(js, 0) == 0.0
    assert number(js, 1) == approx(1.0)
    assert number(js, 2) == approx(1.4)
    assert number(js, 3) == approx(1.51)
    assert factorial(js, 3) == approx(2.114)
    assert binomial(js, 3, 1) == approx(1.51)
    assert falling(js, 3, 2) == approx(2.114)


def test_preset_numbers(bm, quesne):
    assert number(bm, 2) == approx(2.5)
    assert number(quesne, 1) == approx(1.8)


def test_bm_echoes_p():
    s = DeformationScheme.from_preset(Preset.BM, None, 0.5)
    assert s.p == 0.5
    assert (s.phi1, s.phi2) == (0.5, 2.0)


def test_js_requires_ordered_parameters():
    with raises(DomainError):
        DeformationScheme.from_preset(Preset.JS, 0.5, 0.9)
    loose = DeformationScheme.from_preset(Preset.JS, 0.5, 0.9, strict=False)
    assert loose.phi1 == 0.5


def test_classical_numbers(classical):
    assert classical.limit_mode
    assert [number(classical, n) for n in range(5)] == [0.0, 1.0, 2.0, 3.0, 4.0]
    assert factorial(classical, 5) == approx(120.0)
    assert binomial(classical, 5, 2) == approx(10.0)


def test_limit_mode_defaults_scale_to_one():
    s = DeformationScheme.custom(0.7, 0.7)
    assert s.limit_mode and s.D == 1.0
    assert number(s, 3) == approx(3 * 0.7 ** 2)


def test_gbc2_extends_to_negative_integers():
    assert gbc2(-2) == 3
    assert gbc2(-1) == 1
    assert gbc2(0) == gbc2(1) == 0
    assert gbc2(4) == 6


@mark.parametrize("call", [
    lambda s: number(s, -1),
    lambda s: factorial(s, -1),
    lambda s: binomial(s, 3, 4),
    lambda s: binomial(s, 3, -1),
    lambda s: falling(s, 2, -1),
    lambda s: falling(s, 1, 3),
    lambda s: trinomial_coeff(s, 3, 2, 2),
    lambda s: negative_trinomial_coeff(s, 0, 1, 1),
    lambda s: ominus_pow(s, 1.0, 0.5, -1),
])
def test_domain_errors(js, call):
    with raises(DomainError):
        call(js)


def test_falling_or_zero(js):
    assert falling_or_zero(js, 2, 3) == 0.0
    assert falling_or_zero(js, 3, 2) == approx(falling(js, 3, 2))
    with raises(DomainError):
        falling_or_zero(js, -1, 1)


def test_falling_array_matches_scalar(js):
    counts = np.arange(7)
    expected = [falling_or_zero(js, int(u), 3) for u in counts]
    assert falling_array(js, counts, 3) == approx(expected)
    assert falling_array(js, counts, 0) == approx(np.ones(7))


def test_shifted_factorials(js):
    assert oplus_pow(js, 1.0, 0.4, 2) == approx(1.54)
    assert ominus_pow(js, 1.0, 0.3, 2) == approx(0.525)
    assert oplus_pow(js, 1.0, 0.4, 0) == 1.0
    assert shifted_array(js, np.array([1.0, 1.0]), np.array([0.4, 0.3]), 2) == approx(
        [1.54, oplus_pow(js, 1.0, 0.3, 2)])


def test_trinomial_coefficients(js):
    assert trinomial_coeff(js, 4, 1, 2) == approx(
        factorial(js, 4) / (factorial(js, 1) * factorial(js, 2) * factorial(js, 1)))
    assert negative_trinomial_coeff(js, 2, 1, 2) == approx(
        factorial(js, 4) / (factorial(js, 1) * factorial(js, 2) * factorial(js, 1)))


@given(sampled_from(SCHEMES), integers(1, 15), integers(0, 15))
def test_binomial_symmetry(s, n, k):
    k = k % (n + 1)
    assert binomial(s, n, k) == approx(binomial(s, n, n - k), rel=1e-12)


@given(sampled_from(SCHEMES), integers(2, 15), integers(1, 14))
def test_binomial_pascal_rule(s, n, k):
    k = 1 + k % (n - 1)
    expected = (s.phi1 ** (n - k) * binomial(s, n - 1, k - 1)
                + s.phi2 ** k * binomial(s, n - 1, k))
    assert binomial(s, n, k) == approx(expected, rel=1e-11)


@given(sampled_from(SCHEMES), integers(1, 12), floats(0.05, 0.95))
def test_binomial_formula(s, n, t):
    total = math.fsum(binomial(s, n, k) * s.phi1 ** gbc2(n - k) * s.phi2 ** gbc2(k) * t ** k
                      for k in range(n + 1))
    assert total == approx(oplus_pow(s, 1.0, t, n), rel=1e-11)


@given(sampled_from(SCHEMES), integers(1, 10), integers(0, 4), floats(0.5, 4.0))
def test_scale_divides_falling_factorials(s, u, r, c):
    r = min(r, u)
    assert falling(s.with_scale(c), u, r) == approx(c ** -r * falling(s, u, r), rel=1e-12)


def test_binomial_independent_of_scale(quesne):
    assert binomial(quesne.with_scale(3.0), 6, 2) == approx(binomial(quesne, 6, 2), rel=1e-12)


@mark.parametrize("preset", [Preset.BM, Preset.JS, Preset.CJ, Preset.QUESNE])
def test_inverse_scheme_uses_reciprocal_parameters(preset):
    s = DeformationScheme.from_preset(preset, 0.9, 0.5)
    inv = inverse_scheme(s)
    assert inv.preset == preset
    assert (inv.p, inv.q) == (approx(1 / 0.9), approx(2.0))


def test_inverse_number_relation(js):
    inv = inverse_scheme(js)
    prod = js.phi1 * js.phi2
    for x in range(1, 8):
        assert number(inv, x) == approx(prod ** (1 - x) * number(js, x), rel=1e-12)


def test_custom_inverse_needs_rule():
    with raises(DomainError):
        inverse_scheme(DeformationScheme.custom(0.8, 0.4))
    inv = inverse_scheme(DeformationScheme.custom(0.8, 0.4, inversion="reciprocal"))
    assert (inv.phi1, inv.phi2) == (approx(1.25), approx(2.5))
    assert inv.D == approx(1.25 - 2.5)


def test_custom_rejects_unknown_rule():
    with raises(DomainError):
        DeformationScheme.custom(0.8, 0.4, inversion="mirror")


def test_q_slice(js, bm):
    slice_ = q_slice(js)
    assert on_q_slice(slice_) and not on_q_slice(js)
    assert slice_.phi2 == approx(0.5 / 0.9)
    assert slice_.D == approx(1 - 0.5 / 0.9)
    assert q_slice(bm).phi2 == approx(4.0)
    assert q_slice(DeformationScheme.custom(0.7, 0.7)).limit_mode


def test_q_slice_tolerates_rounding():
    assert on_q_slice(DeformationScheme.custom(1.0 + 1e-14, 0.5))
    assert not on_q_slice(DeformationScheme.custom(1.001, 0.5))
    assert on_q_slice(DeformationScheme.custom(1.001, 0.5), epsilon=1e-2)


def test_preset_limit_mode_keeps_a_supplied_scale():
    s = DeformationScheme.from_preset(Preset.BM, q=1.0, D=2.0)
    assert s.limit_mode and s.D == 2.0
    assert number(s, 3) == approx(1.5)
    assert inverse_scheme(s).D == 2.0
    assert DeformationScheme.from_preset(Preset.BM, q=1.0).D == 1.0
    # outside limit mode the preset rule fixes D
    assert DeformationScheme.from_preset(Preset.JS, 0.9, 0.5, D=3.0).D == approx(0.4)
    with raises(DomainError):
        DeformationScheme.from_preset(Preset.BM, q=1.0, D=0.0)


def test_scheme_dict_round_trip(quesne):
    assert DeformationScheme.from_dict(quesne.to_dict()) == quesne


def test_two_sum_is_exact():
    s, t = two_sum(1e16, 1.0)
    assert Fraction(s) + Fraction(t) == Fraction(1e16) + Fraction(1.0)


@settings(max_examples=200)
@given(floats(-1e300, 1e300), floats(-1e300, 1e300))
def test_two_sum_error_free(u, v):
    s, t = two_sum(u, v)
    assert s == u + v
    assert Fraction(s) + Fraction(t) == Fraction(u) + Fraction(v)


def test_compensated_sums_recover_cancelled_terms():
    assert CompensatedSum().extend([1e16, 1.0, -1e16]).value == 1.0
    assert compensated_total(np.array([1e16, 1.0, -1e16])) == 1.0
    assert compensated_total(np.full((3, 3), 0.1)) == approx(0.9)


def test_precise_view_matches_float_calculus(preset_scheme):
    exact = precise(preset_scheme)
    for n in range(6):
        assert float(number(exact, n)) == approx(number(preset_scheme, n), rel=1e-14)
    assert float(binomial(exact, 5, 2)) == approx(binomial(preset_scheme, 5, 2), rel=1e-13)
    assert float(ominus_pow(exact, 1.0, 0.3, 4)) == approx(
        ominus_pow(preset_scheme, 1.0, 0.3, 4), rel=1e-12)
    assert exact.inverse().source == inverse_scheme(preset_scheme)
    assert exact.label == preset_scheme.label


def test_precise_sum_keeps_digits_floats_lose():
    exact = precise(DeformationScheme.from_preset(Preset.BM, q=0.5))
    terms = [exact.phi2 ** 60, exact.phi1, -exact.phi2 ** 60]
    assert float(precise_sum(terms)) == 0.5
