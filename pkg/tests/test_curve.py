"""Curve interpolation, polynomial segment fitting, derivatives and shocks."""

import datetime as dt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvehedge import (
    DegenerateSpanError,
    ExtrapolationError,
    FitError,
    PolynomialSegment,
    ShockSpec,
    YieldCurve,
    apply_shock,
    curvature,
    delta_y,
    derivatives,
    fit_segment,
    spot,
)

D = dt.date(2024, 1, 2)


def poly_curve(coeffs, tenors) -> YieldCurve:
    a0, a1, a2, a3 = coeffs
    return YieldCurve(D, tuple(tenors), tuple(
        a0 + t * (a1 + t * (a2 + t * a3)) for t in tenors
    ))


# ---------------------------------------------------------------------------
# YieldCurve construction and interpolation
# ---------------------------------------------------------------------------

def test_curve_validation():
    with pytest.raises(ValueError, match="2 knots"):
        YieldCurve(D, (1.0,), (0.03,))
    with pytest.raises(ValueError, match="increasing"):
        YieldCurve(D, (1.0, 1.0), (0.03, 0.04))
    with pytest.raises(ValueError, match="positive"):
        YieldCurve(D, (0.0, 1.0), (0.03, 0.04))
    with pytest.raises(ValueError, match="finite"):
        YieldCurve(D, (1.0, 2.0), (0.03, float("nan")))
    with pytest.raises(ValueError, match="equal length"):
        YieldCurve(D, (1.0, 2.0), (0.03,))


def test_spot_linear_midpoint():
    c = YieldCurve(D, (1.0, 2.0), (0.03, 0.05))
    assert spot(c, 1.5) == pytest.approx(0.04)


def test_spot_exact_at_knots():
    c = YieldCurve(D, (1.0, 2.0), (0.03, 0.05))
    assert spot(c, 2.0) == 0.05
    assert spot(c, 1.0) == 0.03


def test_spot_refuses_extrapolation():
    c = YieldCurve(D, (0.5, 2.0), (0.03, 0.05))
    with pytest.raises(ExtrapolationError):
        spot(c, 0.25)
    with pytest.raises(ExtrapolationError):
        spot(c, 2.5)


def test_spot_continuous_at_interior_knots(curve):
    eps = 1e-9
    for t in curve.tenors[1:-1]:
        assert abs(spot(curve, t - eps) - spot(curve, t + eps)) < 1e-10


def test_from_points_round_trip():
    pts = [(0.5, 0.02), (1.0, 0.025), (3.0, 0.03)]
    c = YieldCurve.from_points(D, pts)
    assert c.points == pts
    assert c.min_tenor == 0.5 and c.max_tenor == 3.0


# ---------------------------------------------------------------------------
# segment fitting
# ---------------------------------------------------------------------------

def test_fit_reproduces_line():
    c = poly_curve((0.01, 0.002, 0.0, 0.0), (1, 2, 3, 4, 5))
    seg = fit_segment(c, 1.0, 5.0, 2)
    assert seg.coefficients == pytest.approx((0.01, 0.002, 0.0, 0.0), abs=1e-12)


def test_fit_interpolates_cubic_through_four_knots():
    coeffs = (0.02, 0.001, 0.0005, -0.00002)
    c = poly_curve(coeffs, (1, 3, 6, 9))
    seg = fit_segment(c, 1.0, 9.0, 3)
    assert seg.fit_kind == "interpolating"
    assert seg.coefficients == pytest.approx(coeffs, abs=1e-10)


def test_fit_least_squares_tag():
    c = poly_curve((0.02, 0.001, 0.0005, -0.00002), (1, 2, 3, 4, 5, 6))
    assert fit_segment(c, 1.0, 6.0, 3).fit_kind == "least_squares"


def test_fit_least_squares_is_locally_optimal():
    """RSS at the fitted coefficients beats every +-1e-6 perturbation."""
    rng = np.random.default_rng(7)
    t = np.array([1.0, 2.0, 4.0, 5.5, 7.0, 9.0])
    r = 0.02 + 0.002 * t - 1e-4 * t**2 + rng.normal(0.0, 2e-4, t.size)
    c = YieldCurve(D, tuple(t), tuple(r))
    seg = fit_segment(c, 1.0, 9.0, 2)
    coef = np.array(seg.coefficients[:3])

    def rss(cf):
        fit = cf[0] + cf[1] * t + cf[2] * t**2
        return float(np.sum((r - fit) ** 2))

    best = rss(coef)
    for i in range(3):
        for sign in (-1.0, 1.0):
            bumped = coef.copy()
            bumped[i] += sign * 1e-6
            assert best <= rss(bumped)


def test_fit_needs_enough_knots():
    c = poly_curve((0.02, 0.001, 0.0, 0.0), (1, 2, 3, 4, 5))
    with pytest.raises(FitError, match="at least 4"):
        fit_segment(c, 1.0, 3.0, 3)  # only 3 knots in range


def test_fit_rejects_degenerate_span():
    c = poly_curve((0.02, 0.001, 0.0, 0.0), (1, 2, 3, 4, 5))
    with pytest.raises(DegenerateSpanError):
        fit_segment(c, 2.0, 2.0005, 2)


def test_fit_rejects_bad_degree():
    c = poly_curve((0.02, 0.001, 0.0, 0.0), (1, 2, 3, 4, 5))
    with pytest.raises(ValueError, match="degree"):
        fit_segment(c, 1.0, 5.0, 1)


@given(
    a0=st.floats(min_value=0.0, max_value=0.05),
    a1=st.floats(min_value=-0.005, max_value=0.005),
    a2=st.floats(min_value=-5e-4, max_value=5e-4),
    a3=st.floats(min_value=-2e-5, max_value=2e-5),
)
@settings(max_examples=60, deadline=None)
def test_fit_reproduces_generating_polynomial(a0, a1, a2, a3):
    tenors = (0.5, 1.5, 3.0, 4.5, 6.0, 8.0, 10.0)
    c = poly_curve((a0, a1, a2, a3), tenors)
    seg = fit_segment(c, 0.5, 10.0, 3)
    assert seg.coefficients == pytest.approx((a0, a1, a2, a3), abs=1e-10)


# ---------------------------------------------------------------------------
# derivatives, curvature, delta_y
# ---------------------------------------------------------------------------

def test_derivatives_linear_segment():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.001, 0.0, 0.0))
    for t in (1.0, 4.0, 9.0):
        f, f1, f2 = derivatives(seg, t)
        assert f1 == pytest.approx(0.001)
        assert f2 == 0.0


def test_derivatives_quadratic_monomial():
    seg = PolynomialSegment(0.5, 10.0, (0.0, 0.0, 0.0005, 0.0))
    f, f1, f2 = derivatives(seg, 2.0)
    assert f == pytest.approx(0.002)
    assert f1 == pytest.approx(0.002)
    assert f2 == pytest.approx(0.001)


def test_second_derivative_matches_fd_of_first():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.001, 0.0005, 0.0001))
    h = 1e-6
    t = 3.0
    _, f1_lo, _ = derivatives(seg, t - h)
    _, f1_hi, _ = derivatives(seg, t + h)
    _, _, f2 = derivatives(seg, t)
    assert f2 == pytest.approx((f1_hi - f1_lo) / (2 * h), rel=1e-6)
    assert f2 == pytest.approx(2 * 0.0005 + 6 * 0.0001 * t)


def test_derivatives_out_of_span():
    seg = PolynomialSegment(1.0, 5.0, (0.02, 0.001, 0.0, 0.0))
    with pytest.raises(ExtrapolationError):
        derivatives(seg, 0.5)


def test_curvature_closed_forms():
    straight = PolynomialSegment(0.5, 10.0, (0.02, 0.004, 0.0, 0.0))
    assert curvature(straight, 5.0) == 0.0
    # vertex at T=5: F1 = 0 there, so K = F2 = 0.001
    vertex = PolynomialSegment(0.5, 10.0, (0.02, -0.005, 0.0005, 0.0))
    assert curvature(vertex, 5.0) == pytest.approx(0.001)


def test_curvature_unit_slope():
    # F1 = 1 at T = 2 and F2 = 2 gamma = 0.001 -> K = 0.001 / 2^1.5
    seg = PolynomialSegment(0.5, 10.0, (0.0, 0.998, 0.0005, 0.0))
    _, f1, f2 = derivatives(seg, 2.0)
    assert f1 == pytest.approx(1.0)
    assert f2 == pytest.approx(0.001)
    assert curvature(seg, 2.0) == pytest.approx(0.001 / 2**1.5)


def test_delta_y_pure_translation():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.003, -1e-4, 1e-5))
    shock = ShockSpec.parametric(a=0.001)
    for t in (1.0, 5.0, 9.0):
        assert delta_y(seg, shock, t) == pytest.approx(0.001)


def test_delta_y_rotation_on_line():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.002, 0.0, 0.0))
    shock = ShockSpec.parametric(b=1.0)
    for t in (1.0, 5.0, 9.0):
        assert delta_y(seg, shock, t) == pytest.approx(0.002)


def test_delta_y_twist_on_quadratic():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.0, 0.0005, 0.0))
    shock = ShockSpec.parametric(c=1.0)
    for t in (1.0, 5.0, 9.0):
        assert delta_y(seg, shock, t) == pytest.approx(0.001)


def test_delta_y_rejects_custom_shock():
    seg = PolynomialSegment(0.5, 10.0, (0.02, 0.002, 0.0, 0.0))
    with pytest.raises(ValueError, match="parametric"):
        delta_y(seg, ShockSpec.from_vector([0.001] * 3), 1.0)


# ---------------------------------------------------------------------------
# shock application
# ---------------------------------------------------------------------------

def test_shockspec_one_active_form():
    with pytest.raises(ValueError, match="custom"):
        ShockSpec(a=0.001, custom=(0.001, 0.001))
    assert ShockSpec.parametric(0.001).is_parametric
    assert not ShockSpec.from_vector([0.0, 0.0]).is_parametric


def test_shockspec_scaled():
    s = ShockSpec.parametric(0.002, 0.1, 0.05).scaled(0.5)
    assert (s.a, s.b, s.c) == (0.001, 0.05, 0.025)
    v = ShockSpec.from_vector([0.002, 0.004]).scaled(0.25)
    assert v.custom == (0.0005, 0.001)


def test_apply_zero_shock_is_identity(curve):
    out = apply_shock(curve, ShockSpec.from_vector([0.0] * len(curve.tenors)))
    assert out.rates == curve.rates
    assert out.tenors == curve.tenors


def test_apply_custom_parallel(curve):
    out = apply_shock(curve, ShockSpec.from_vector([0.001] * len(curve.tenors)))
    for r0, r1 in zip(curve.rates, out.rates):
        assert r1 - r0 == pytest.approx(0.001)


def test_apply_parametric_rotation_on_line():
    c = poly_curve((0.02, 0.002, 0.0, 0.0), (1, 2, 4, 6, 8))
    seg = fit_segment(c, 1.0, 8.0, 2)
    out = apply_shock(c, ShockSpec.parametric(b=1.0), seg)
    for r0, r1 in zip(c.rates, out.rates):
        assert r1 - r0 == pytest.approx(0.002, abs=1e-12)


def test_apply_then_negate_returns_original(curve):
    rng = np.random.default_rng(11)
    vec = rng.normal(0.0, 5e-4, len(curve.tenors))
    there = apply_shock(curve, ShockSpec.from_vector(vec))
    back = apply_shock(there, ShockSpec.from_vector(-vec))
    for r0, r1 in zip(curve.rates, back.rates):
        assert abs(r1 - r0) < 1e-14


def test_apply_custom_length_mismatch(curve):
    with pytest.raises(ValueError, match="knots"):
        apply_shock(curve, ShockSpec.from_vector([0.001, 0.002]))


def test_apply_parametric_requires_segment(curve):
    with pytest.raises(ValueError, match="segment"):
        apply_shock(curve, ShockSpec.parametric(a=0.001))


def test_apply_parametric_clips_outside_span(curve):
    """Knots outside the fitted span move by the nearest endpoint's dY."""
    seg = fit_segment(curve, 2.0, 8.0, 3)
    shock = ShockSpec.parametric(0.0005, 0.1, 0.02)
    out = apply_shock(curve, shock, seg)
    shifts = {t: r1 - r0 for t, r0, r1 in zip(curve.tenors, curve.rates, out.rates)}
    assert shifts[0.5] == pytest.approx(delta_y(seg, shock, 2.0), abs=1e-15)
    assert shifts[1.0] == pytest.approx(delta_y(seg, shock, 2.0), abs=1e-15)
    assert shifts[10.0] == pytest.approx(delta_y(seg, shock, 8.0), abs=1e-15)
    assert shifts[5.0] == pytest.approx(delta_y(seg, shock, 5.0), abs=1e-15)
