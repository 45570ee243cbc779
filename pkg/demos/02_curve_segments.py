"""
Yield curves, fitted segments and shock families
================================================

Stores a knot-based spot curve, fits a cubic segment through it, and shows
how the translation / rotation / twist shock family deforms it.
"""

import datetime as dt

import numpy as np

from curvehedge import (
    ShockSpec,
    YieldCurve,
    apply_shock,
    curvature,
    delta_y,
    derivatives,
    fit_segment,
    spot,
)
from curvehedge.synth import DEFAULT_BASE_COEFFS, DEFAULT_TENORS

# build the base curve evaluated on the default knot grid
a0, a1, a2, a3 = DEFAULT_BASE_COEFFS
rates = tuple(a0 + t * (a1 + t * (a2 + t * a3)) for t in DEFAULT_TENORS)
curve = YieldCurve(dt.date(2024, 1, 2), DEFAULT_TENORS, rates)

print("knot rates (piecewise-linear between knots):")
for t in (0.5, 1.0, 2.5, 5.0, 7.5, 10.0):
    print(f"  Y({t:4.1f}) = {spot(curve, t) * 100:7.4f}%")

# fit one cubic segment across the whole grid. The base curve IS a cubic,
# so the fit interpolates it to machine precision.
seg = fit_segment(curve, curve.min_tenor, curve.max_tenor, 3)
print(f"\nfitted cubic over [{seg.t_lo}, {seg.t_hi}], kind={seg.fit_kind}")
print("coefficients:", np.array2string(np.asarray(seg.coefficients), precision=8))
worst = max(abs(spot(curve, t) - sum(c * t**k for k, c in enumerate(seg.coefficients)))
            for t in DEFAULT_TENORS)
print(f"worst knot residual: {worst:.2e}")

# slope, curvature proper (with the arc-length denominator) and the bare
# second derivative at a few tenors
print(f"\n{'T':>5}{'F(T)':>12}{'F_1(T)':>12}{'F_2(T)':>12}{'K(T)':>12}")
for t in (1.0, 3.0, 5.0, 8.0):
    f, f1, f2 = derivatives(seg, t)
    print(f"{t:>5.1f}{f:>12.6f}{f1:>12.6f}{f2:>12.6f}{curvature(seg, t):>12.6f}")

# the shock family dY(T) = a + b F_1(T) + c F_2(T): translation moves every
# tenor alike, rotation scales with slope, twist with the second derivative
shock = ShockSpec.parametric(a=0.001, b=0.2, c=0.1)
print("\nshock a=10bp, b=0.2, c=0.1 decomposed at each knot:")
print(f"{'T':>5}{'dY':>11}{'a':>10}{'b*F1':>10}{'c*F2':>10}")
for t in (0.5, 2.0, 5.0, 10.0):
    _, f1, f2 = derivatives(seg, t)
    dy = delta_y(seg, shock, t)
    print(f"{t:>5.1f}{dy:>11.6f}{0.001:>10.6f}{0.2 * f1:>10.6f}{0.1 * f2:>10.6f}")

# apply_shock rebuilds the knot curve under the deformation
shocked = apply_shock(curve, shock, seg)
moves = np.asarray(shocked.rates) - np.asarray(curve.rates)
print("\nknot moves in bp:", np.array2string(moves * 1e4, precision=2))

# a custom vector shock bypasses the parametric family entirely
bump = ShockSpec.from_vector(tuple(0.0005 if t >= 5.0 else 0.0 for t in DEFAULT_TENORS))
bumped = apply_shock(curve, bump)
print("long-end bump, 5y rate move:",
      f"{(spot(bumped, 5.0) - spot(curve, 5.0)) * 1e4:.2f}bp")
