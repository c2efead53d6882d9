from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphertet.trigpoly import (
    AngleForm,
    PositivityError,
    TrigPoly,
    det,
    positive_on_open_interval,
)

params = st.fractions(min_value=Fraction(0), max_value=Fraction(1),
                      max_denominator=18)

forms = st.builds(
    AngleForm,
    st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=6),
    st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=3),
    st.just(Fraction(0)),
)


def f(pi_part, t_part=0, u_part=0):
    return AngleForm(Fraction(pi_part), Fraction(t_part), Fraction(u_part))


def test_angle_form_evaluation():
    form = f(Fraction(1, 2), Fraction(-1), Fraction(2))
    assert form.value_in_pi_units(Fraction(1, 6), Fraction(1, 12)) == Fraction(1, 2)


def test_angle_form_arithmetic():
    a, b = f(1, 2), f(Fraction(1, 2), -1)
    assert (a + b).pi_part == Fraction(3, 2)
    assert (a - b).t_part == 3
    assert a.scale(2).t_part == 4


@given(forms, params, params)
def test_cos_eval_matches_exact_cosine(form, tau, mu):
    poly = TrigPoly.cos_of(form)
    value = poly.eval_exact(tau, mu)
    direct = TrigPoly.cos_of(
        f(form.value_in_pi_units(tau, mu))
    ).eval_exact(Fraction(0), Fraction(0))
    assert (value - direct).is_zero()


@given(forms, forms, params)
@settings(max_examples=60)
def test_product_agrees_pointwise(x, y, tau):
    mu = Fraction(0)
    prod = TrigPoly.cos_of(x) * TrigPoly.cos_of(y)
    lhs = prod.eval_exact(tau, mu)
    rhs = TrigPoly.cos_of(x).eval_exact(tau, mu) * TrigPoly.cos_of(y).eval_exact(tau, mu)
    assert (lhs - rhs).is_zero()


def test_pythagorean_polynomial_identity():
    x = f(Fraction(1, 3), 2)
    c, s = TrigPoly.cos_of(x), TrigPoly.sin_of(x)
    assert (c * c + s * s - TrigPoly.constant(1)).is_zero()


def test_angle_sum_identity():
    a, b = f(Fraction(1, 5), 1), f(Fraction(1, 7), -2)
    lhs = TrigPoly.cos_of(a + b)
    rhs = (TrigPoly.cos_of(a) * TrigPoly.cos_of(b)
           - TrigPoly.sin_of(a) * TrigPoly.sin_of(b))
    assert (lhs - rhs).is_zero()


def test_nonzero_is_detected():
    assert not TrigPoly.cos_of(f(0, 1)).is_zero()
    assert not (TrigPoly.constant(Fraction(1, 7))).is_zero()


def test_constant_plus_irrational_frequency_mix():
    # cos(t + pi/3) + cos(t - pi/3) - cos(t) vanishes identically
    poly = (TrigPoly.cos_of(f(Fraction(1, 3), 1))
            + TrigPoly.cos_of(f(Fraction(-1, 3), 1))
            - TrigPoly.cos_of(f(0, 1)))
    assert poly.is_zero()


@given(forms, params)
def test_derivative_matches_difference_quotient_sign(form, tau):
    """d/dt cos(B t + A) = -B sin(B t + A), checked exactly."""
    poly = TrigPoly.cos_of(form)
    deriv = poly.derivative("t")
    expected = TrigPoly.sin_of(form).scale(-form.t_part)
    assert (deriv - expected).is_zero()


def test_interval_evaluation_encloses_exact_values():
    poly = TrigPoly.cos_of(f(0, 1)) * TrigPoly.cos_of(f(Fraction(1, 3), 1))
    enc = poly.eval_interval((Fraction(1, 7), Fraction(1, 7)),
                             (Fraction(0), Fraction(0)), precision=96)
    exact = poly.eval_exact(Fraction(1, 7), Fraction(0))
    val = exact.float_interval(96)
    # both enclose the same true value, so they must overlap
    assert max(enc.lo, val.lo) <= min(enc.hi, val.hi)
    assert enc.width < Fraction(1, 10**20)


def test_determinant_of_trig_matrix():
    c = TrigPoly.cos_of(f(0, 1))
    one = TrigPoly.constant(1)
    m = [[one, c], [c, one]]
    d = det(m)
    # 1 - cos^2 t = sin^2 t
    s = TrigPoly.sin_of(f(0, 1))
    assert (d - s * s).is_zero()


def test_positivity_on_open_interval():
    s = TrigPoly.sin_of(f(0, 1))  # sin(pi t) > 0 on (0, 1)
    witness = positive_on_open_interval(s, Fraction(0), Fraction(1))
    assert witness.left.method == "taylor-strip"
    assert witness.right.method == "taylor-strip"

    squared = s * s  # vanishes to second order at both ends
    witness = positive_on_open_interval(squared, Fraction(0), Fraction(1))
    assert witness.left.vanishing_order == 2


def test_positivity_failure_raises():
    c = TrigPoly.cos_of(f(0, 1))  # changes sign at t = 1/2
    with pytest.raises(PositivityError):
        positive_on_open_interval(c, Fraction(0), Fraction(1))


def test_positive_value_endpoints():
    poly = TrigPoly.cos_of(f(0, 1)) + TrigPoly.constant(2)
    witness = positive_on_open_interval(poly, Fraction(0), Fraction(1))
    assert witness.left.method == "positive-value"
