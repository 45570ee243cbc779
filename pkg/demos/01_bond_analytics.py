"""
Bond analytics: price, duration, convexity
==========================================

Walks the demo bond universe through the basic analytics and checks the
derivative numbers against brute-force repricing.
"""

import numpy as np

from curvehedge import (
    Bond,
    analytics,
    cashflows,
    convexity,
    modified_duration,
    pnl_approx,
    price,
)
from curvehedge.synth import default_bond_universe

# the four demo bonds: annual and semiannual coupons, 4 to 7 year maturities
universe = default_bond_universe()

print("cashflow schedule of B4 (semiannual 3.1%, 5.5y):")
for t, cf in cashflows(universe[-1]):
    print(f"  t={t:5.2f}  {cf:7.2f}")

# analytics at a flat 4% yield: price per 100 face, modified duration and
# convexity in one pass over the cashflows
print("\nanalytics at a flat 4% yield:")
print(f"{'id':<5}{'maturity':>9}{'price':>12}{'duration':>10}{'convexity':>11}")
for bond in universe:
    a = analytics(bond, 0.04)
    print(f"{bond.id:<5}{bond.maturity:>9.2f}{a.price:>12.5f}"
          f"{a.modified_duration:>10.4f}{a.convexity:>11.4f}")

# duration should match the slope of price against yield; convexity the
# curvature. Check both with central finite differences.
b = universe[1]  # B2, the usual hedging target
y, h = 0.04, 1e-5
p = price(b, y)
fd_duration = -(price(b, y + h) - price(b, y - h)) / (2 * h * p)
fd_convexity = (price(b, y + 1e-4) - 2 * p + price(b, y - 1e-4)) / (1e-8 * p)
print(f"\nB2 duration  {modified_duration(b, y):.8f}  vs finite diff {fd_duration:.8f}")
print(f"B2 convexity {convexity(b, y):.8f}  vs finite diff {fd_convexity:.8f}")

# the second-order P&L approximation dP = P(-D dy + C dy^2 / 2) tracks exact
# repricing closely; the error shrinks like dy^3
a2 = analytics(b, y)
print("\nsecond-order P&L vs exact repricing, B2 at 4%:")
print(f"{'dy':>8}{'approx':>12}{'exact':>12}{'error':>12}")
for dy in (0.02, 0.01, 0.005, 0.0025):
    approx = pnl_approx(a2.price, a2.modified_duration, a2.convexity, dy)
    exact = price(b, y + dy) - p
    print(f"{dy:>8.4f}{approx:>12.6f}{exact:>12.6f}{approx - exact:>12.2e}")

# a steep yield move still prices sanely: positivity holds for y > -1
deep = Bond("deep", 100.0, 0.02, 1, 10.0)
ys = np.array([-0.5, -0.2, 0.0, 0.2, 0.5])
print("\nprices of a 2% 10y bond across extreme yields:",
      np.array2string(np.array([price(deep, float(v)) for v in ys]), precision=3))
