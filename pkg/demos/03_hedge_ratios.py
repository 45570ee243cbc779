"""
The four hedge-ratio strategies
===============================

Builds each strategy's plan twice: once on a textbook instrument triple
where the ratios come out as small fractions you can check by hand, and
once on the demo bond universe off the synthetic curve.
"""

import datetime as dt

from curvehedge import (
    InstrumentSnapshot,
    YieldCurve,
    convexity_hedge,
    cubic_hedge,
    duration_hedge,
    quadratic_hedge,
    snapshot,
    solve_constraint_hedge,
)
from curvehedge.hedging import DOLLAR_DURATION, DURATION_MATURITY
from curvehedge.synth import DEFAULT_BASE_COEFFS, DEFAULT_TENORS, default_bond_universe


def show(plan):
    legs = ", ".join(f"{leg.id}: {leg.amount:+.6f}" for leg in plan.legs)
    print(f"  {plan.strategy.value:<10} {legs}")
    for name, value in plan.constraints:
        print(f"{'':13}{name:<28} -> {value:+.3e}")


# --- textbook numbers -------------------------------------------------------
# round inputs make the ratios exact fractions: A carries (P, T, D, C) =
# (100, 4, 4, 20), B = (100, 7, 7, 55), and the target holds 100 units of
# (100, 5, 5, 30)
target = InstrumentSnapshot("T", 100.0, 5.0, 5.0, 30.0, amount=100.0)
inst_a = InstrumentSnapshot("A", 100.0, 4.0, 4.0, 20.0)
inst_b = InstrumentSnapshot("B", 100.0, 7.0, 7.0, 55.0)

print("textbook triple (expected: -125, -250/3 & -500/21, -81.25 & -25):")
show(duration_hedge(target, inst_a))
show(quadratic_hedge(target, inst_a, inst_b))
show(convexity_hedge(target, inst_a, inst_b))

# the generic solver reproduces any closed form from its constraint set
solved = solve_constraint_hedge(target, [inst_a, inst_b],
                                [DOLLAR_DURATION, DURATION_MATURITY])
print("  generic solver, same constraints:",
      ", ".join(f"{leg.id}: {leg.amount:+.6f}" for leg in solved.legs))

# --- real bonds off the synthetic curve -------------------------------------
a0, a1, a2, a3 = DEFAULT_BASE_COEFFS
rates = tuple(a0 + t * (a1 + t * (a2 + t * a3)) for t in DEFAULT_TENORS)
curve = YieldCurve(dt.date(2024, 1, 2), DEFAULT_TENORS, rates)
universe = {b.id: b for b in default_bond_universe()}

tgt = snapshot(universe["B2"], curve, amount=100.0)
b1 = snapshot(universe["B1"], curve)
b3 = snapshot(universe["B3"], curve)
b4 = snapshot(universe["B4"], curve)

print("\nhedging 100 units of B2 (5y) with B3 (4y), B1 (7y), B4 (5.5y):")
show(duration_hedge(tgt, b3))
show(quadratic_hedge(tgt, b3, b1))
show(convexity_hedge(tgt, b3, b1))
show(cubic_hedge(tgt, b3, b1, b4))

# quadratic legs are both short whenever the target sits inside the span:
# the ratios split the dollar duration linearly between the two maturities
q = quadratic_hedge(tgt, b3, b1)
w3 = (7.0 - 5.0) / (7.0 - 4.0)
print(f"\nquadratic maturity weights: B3 gets {w3:.4f} of the dollar duration,"
      f" B1 gets {1 - w3:.4f}")

# cubic amounts follow the Lagrange basis over (4, 5.5, 7) at T = 5, so the
# three dollar durations sum to the target's with weights adding to one
c = cubic_hedge(tgt, b3, b1, b4)
npd = tgt.amount * tgt.price * tgt.modified_duration
by_id = {"B1": b1, "B3": b3, "B4": b4}
weights = [-leg.amount * by_id[leg.id].price * by_id[leg.id].modified_duration / npd
           for leg in c.legs]
print(f"cubic Lagrange weights {[f'{w:+.4f}' for w in weights]}, sum = {sum(weights):.12f}")
