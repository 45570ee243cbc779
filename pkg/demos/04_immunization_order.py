"""
Immunization order: residuals shrink faster than the shock
==========================================================

Each strategy kills its shock family to first order, so halving the shock
should cut the hedged residual by about 4x (or 8x where convexity is also
matched). The log-log slope of residual against scale makes that visible.
"""

import datetime as dt

from curvehedge import (
    ShockSpec,
    YieldCurve,
    convexity_hedge,
    cubic_hedge,
    duration_hedge,
    estimate_order,
    quadratic_hedge,
    residual_scaling,
    run_scenario,
    snapshot,
)
from curvehedge.synth import DEFAULT_BASE_COEFFS, DEFAULT_TENORS, default_bond_universe

a0, a1, a2, a3 = DEFAULT_BASE_COEFFS
rates = tuple(a0 + t * (a1 + t * (a2 + t * a3)) for t in DEFAULT_TENORS)
curve = YieldCurve(dt.date(2024, 1, 2), DEFAULT_TENORS, rates)
universe = {b.id: b for b in default_bond_universe()}

target = snapshot(universe["B2"], curve, amount=100.0)
b1 = snapshot(universe["B1"], curve)
b3 = snapshot(universe["B3"], curve)
b4 = snapshot(universe["B4"], curve)


def vector(poly):
    # evaluating the family on the knot grid keeps the shock exact at the
    # bond maturities (4, 5, 5.5 and 7 are all knots)
    return ShockSpec.from_vector(tuple(poly(t) for t in DEFAULT_TENORS))


# one scenario in full: a 20bp parallel shock against the duration hedge
plan = duration_hedge(target, b3)
res = run_scenario(plan, universe, curve, vector(lambda t: 0.002))
print("duration hedge, 20bp parallel shock:")
print(f"  unhedged P&L {res.unhedged_pnl:+.4f}")
print(f"  hedged   P&L {res.hedged_pnl:+.4f}")
for bond_id, pnl in res.per_instrument_pnl:
    print(f"    {bond_id:<4} {pnl:+10.4f}")

# now the full sweep: each plan against its matched shock family, with
# residuals at 20bp, 10bp, 5bp, 2.5bp
cases = [
    ("duration / parallel", duration_hedge(target, b3),
     vector(lambda t: 0.002)),
    ("convexity / parallel", convexity_hedge(target, b3, b1),
     vector(lambda t: 0.002)),
    ("quadratic / affine", quadratic_hedge(target, b3, b1),
     vector(lambda t: 0.0012 + 0.00016 * t)),
    ("cubic / quadratic-in-T", cubic_hedge(target, b3, b1, b4),
     vector(lambda t: 0.001 + 0.0001 * t + 0.00002 * t * t)),
]

print(f"\n{'strategy / family':<24}{'scale':>8}{'|residual|':>14}")
for label, plan, family in cases:
    scaling = residual_scaling(plan, universe, curve, family, steps=4)
    for scale, resid in scaling:
        print(f"{label:<24}{scale:>8.3f}{resid:>14.3e}")
    print(f"{'':24}fitted order: {estimate_order(scaling):.3f}\n")

# duration and quadratic residuals drop ~4x per halving (order 2); the
# convexity hedge also matches second-order parallel risk, so ~8x (order 3)
