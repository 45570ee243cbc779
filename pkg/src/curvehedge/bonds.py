"""Cashflow-level bond analytics: pricing, modified duration, convexity.

Conventions used throughout the toolkit:

* annual discrete compounding, discount factor (1 + y)^(-t) for every
  coupon frequency;
* modified duration = Macaulay duration / (1 + y);
* all times are ACT/365 year fractions measured from the valuation date.

Each bond is priced off a single yield. When that yield comes from a curve
the default is the interpolated spot rate at the bond's own maturity
("flat" mode); "spot" mode discounts every cashflow at its own tenor's
spot rate instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .curve import YieldCurve, spot

VALID_FREQUENCIES = (1, 2, 4, 12)

_TIME_TOL = 1e-9


@dataclass(frozen=True)
class Bond:
    """A fixed-coupon bullet bond.

    maturity is the year fraction from the valuation date to the final
    payment. The coupon schedule is generated backward from maturity in
    steps of 1/coupon_frequency. If issue_or_first_coupon_offset is given
    it marks the start of accrual for the earliest period; a period shorter
    than a full step then pays a pro-rata coupon.
    """

    id: str
    face: float
    coupon_rate: float
    coupon_frequency: int
    maturity: float
    issue_or_first_coupon_offset: float | None = None

    def __post_init__(self):
        if self.face <= 0:
            raise ValueError(f"bond {self.id!r}: face must be positive, got {self.face}")
        if self.coupon_rate < 0:
            raise ValueError(f"bond {self.id!r}: coupon_rate must be >= 0, got {self.coupon_rate}")
        if self.maturity <= 0:
            raise ValueError(f"bond {self.id!r}: maturity must be positive, got {self.maturity}")
        if self.coupon_frequency not in VALID_FREQUENCIES:
            raise ValueError(
                f"bond {self.id!r}: coupon_frequency must be one of {VALID_FREQUENCIES}, "
                f"got {self.coupon_frequency}"
            )

    def rolled(self, elapsed: float) -> "Bond":
        """The same bond seen `elapsed` years later (maturity shortened)."""
        offset = self.issue_or_first_coupon_offset
        return replace(
            self,
            maturity=self.maturity - elapsed,
            issue_or_first_coupon_offset=None if offset is None else offset - elapsed,
        )


@dataclass(frozen=True)
class BondAnalytics:
    """Price per 100 face plus the risk numbers the hedge ratios consume."""

    price: float
    ytm: float
    modified_duration: float
    convexity: float


def cashflows(bond: Bond) -> list[tuple[float, float]]:
    """Future cashflows as (time, amount) pairs, strictly increasing in time.

    Coupons of face * coupon_rate / frequency at each schedule date; the
    final flow additionally returns the face. Zero-amount coupons are
    dropped, so a zero-coupon bond has a single flow.
    """
    step = 1.0 / bond.coupon_frequency
    coupon = bond.face * bond.coupon_rate / bond.coupon_frequency
    n = int(math.ceil(bond.maturity * bond.coupon_frequency - _TIME_TOL))
    times = [bond.maturity - k * step for k in range(n)][::-1]

    flows = [(t, coupon) for t in times]
    start = bond.issue_or_first_coupon_offset
    if start is not None and flows:
        first_t = flows[0][0]
        accrual = min(first_t - start, step)
        if accrual <= _TIME_TOL:
            raise ValueError(
                f"bond {bond.id!r}: accrual start {start} is not before first coupon {first_t}"
            )
        if accrual < step - _TIME_TOL:
            flows[0] = (first_t, bond.face * bond.coupon_rate * accrual)
    flows[-1] = (flows[-1][0], flows[-1][1] + bond.face)
    return [(t, cf) for t, cf in flows if cf != 0.0]


def _flow_arrays(bond: Bond) -> tuple[np.ndarray, np.ndarray]:
    flows = cashflows(bond)
    return np.array([f[0] for f in flows]), np.array([f[1] for f in flows])


def _check_yield(ytm: float) -> None:
    if ytm <= -1.0:
        raise ValueError(f"yield must be greater than -100%, got {ytm}")


def price(bond: Bond, ytm: float) -> float:
    """Present value of all cashflows at a single annually-compounded yield."""
    _check_yield(ytm)
    t, cf = _flow_arrays(bond)
    return float(np.sum(cf * (1.0 + ytm) ** (-t)))


def modified_duration(bond: Bond, ytm: float) -> float:
    """-(1/P) dP/dy, i.e. Macaulay duration divided by (1 + y)."""
    _check_yield(ytm)
    t, cf = _flow_arrays(bond)
    pv = cf * (1.0 + ytm) ** (-t)
    return float(np.sum(t * pv) / (np.sum(pv) * (1.0 + ytm)))


def convexity(bond: Bond, ytm: float) -> float:
    """(1/P) d2P/dy2 = sum t(t+1) PV_t / (P (1+y)^2)."""
    _check_yield(ytm)
    t, cf = _flow_arrays(bond)
    pv = cf * (1.0 + ytm) ** (-t)
    return float(np.sum(t * (t + 1.0) * pv) / (np.sum(pv) * (1.0 + ytm) ** 2))


def analytics(bond: Bond, ytm: float) -> BondAnalytics:
    """Price, duration and convexity in one pass over the cashflows."""
    _check_yield(ytm)
    t, cf = _flow_arrays(bond)
    pv = cf * (1.0 + ytm) ** (-t)
    p = float(np.sum(pv))
    mac = float(np.sum(t * pv)) / p
    cx = float(np.sum(t * (t + 1.0) * pv)) / (p * (1.0 + ytm) ** 2)
    return BondAnalytics(price=p, ytm=ytm, modified_duration=mac / (1.0 + ytm), convexity=cx)


def curve_analytics(bond: Bond, curve: YieldCurve, mode: str = "flat") -> BondAnalytics:
    """Analytics with the yield taken from a curve.

    mode="flat" (default): the bond trades at the interpolated spot rate for
    its maturity and all flows are discounted at that single yield.

    mode="spot": every cashflow is discounted at its own tenor's spot rate;
    duration and convexity are then the sensitivities to a parallel shift of
    the whole curve. The reported ytm is still the maturity-point spot.
    """
    y = spot(curve, bond.maturity)
    if mode == "flat":
        return analytics(bond, y)
    if mode != "spot":
        raise ValueError(f"unknown pricing mode {mode!r} (expected 'flat' or 'spot')")

    t, cf = _flow_arrays(bond)
    rates = np.array([spot(curve, ti) for ti in t])
    pv = cf * (1.0 + rates) ** (-t)
    p = float(np.sum(pv))
    # sensitivities to bumping every spot rate by the same epsilon
    d = float(np.sum(t * pv / (1.0 + rates))) / p
    cx = float(np.sum(t * (t + 1.0) * pv / (1.0 + rates) ** 2)) / p
    return BondAnalytics(price=p, ytm=y, modified_duration=d, convexity=cx)


def pnl_approx(price: float, duration: float, convexity: float, dy: float) -> float:
    """Second-order price change P * (-D dy + 0.5 C dy^2) for a yield move dy."""
    if price <= 0:
        raise ValueError(f"price must be positive, got {price}")
    return price * (-duration * dy + 0.5 * convexity * dy * dy)
