"""Seeded synthetic spot-rate histories for fixtures and demos.

Real multi-year spot histories are proprietary, so tests and examples run
on generated ones. The generator starts from a smooth polynomial base
curve, fits its cubic segment once, and then walks the knot grid with
daily shocks drawn from the translation / rotation / twist family:

    dY_t(T) = a_t + b_t Y'(T) + c_t Y''(T) + idio noise per knot

The (a, b, c) draws are AR(1)-smoothed Gaussians, so consecutive days
move coherently. Keeping the day-zero segment fixed makes the history an
exact linear factor model, which the correlation fixtures rely on: the
level factor's variance share is computable directly from the draws.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .bonds import Bond
from .curve import PolynomialSegment, ShockSpec, YieldCurve, apply_shock, derivatives, fit_segment

DEFAULT_TENORS = (0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 5.5, 6.0, 7.0, 8.0, 10.0)
# gently rising base curve with real curvature and twist over the grid
DEFAULT_BASE_COEFFS = (0.022, 0.0052, -4.2e-4, 1.6e-5)


@dataclass(frozen=True)
class SynthConfig:
    days: int = 250
    start: dt.date = dt.date(2024, 1, 2)
    tenors: tuple[float, ...] = DEFAULT_TENORS
    base_coefficients: tuple[float, float, float, float] = DEFAULT_BASE_COEFFS
    sigma_level: float = 6e-4
    sigma_slope: float = 0.08
    sigma_twist: float = 0.05
    sigma_idio: float = 0.0
    ar: float = 0.3
    seed: int = 42
    weekdays_only: bool = True

    def __post_init__(self):
        if self.days < 2:
            raise ValueError("need at least 2 days of history")
        if not 0.0 <= self.ar < 1.0:
            raise ValueError("ar must be in [0, 1)")


@dataclass(frozen=True)
class ShockDraws:
    """The factor draws behind a generated history, for variance accounting."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    idio: np.ndarray  # (days - 1, n_tenors)
    segment: PolynomialSegment

    def common_variance_share(self, tenors) -> np.ndarray:
        """Per tenor: variance share of the (a, b, c) factors in daily changes."""
        shares = []
        for idx, t in enumerate(tenors):
            _, f1, f2 = derivatives(self.segment, t)
            common = self.a + self.b * f1 + self.c * f2
            v_common = float(np.var(common))
            v_idio = float(np.var(self.idio[:, idx]))
            shares.append(v_common / (v_common + v_idio) if v_common + v_idio > 0 else 1.0)
        return np.array(shares)


def _trading_dates(start: dt.date, days: int, weekdays_only: bool) -> list[dt.date]:
    dates = []
    d = start
    while len(dates) < days:
        if not weekdays_only or d.weekday() < 5:
            dates.append(d)
        d += dt.timedelta(days=1)
    return dates


def _ar1(rng: np.random.Generator, n: int, rho: float) -> np.ndarray:
    # unit marginal variance regardless of rho
    raw = rng.standard_normal(n)
    out = np.empty(n)
    out[0] = raw[0]
    scale = np.sqrt(1.0 - rho * rho)
    for i in range(1, n):
        out[i] = rho * out[i - 1] + scale * raw[i]
    return out


def generate_history(cfg: SynthConfig) -> tuple[list[YieldCurve], ShockDraws]:
    """Daily curves walked by the shock family, plus the draws that made them."""
    tenors = np.asarray(cfg.tenors, dtype=float)
    a0, a1, a2, a3 = cfg.base_coefficients
    base = a0 + tenors * (a1 + tenors * (a2 + tenors * a3))
    dates = _trading_dates(cfg.start, cfg.days, cfg.weekdays_only)

    curve = YieldCurve(dates[0], tuple(tenors), tuple(base))
    seg = fit_segment(curve, curve.min_tenor, curve.max_tenor, 3)

    rng = np.random.default_rng(cfg.seed)
    n_steps = cfg.days - 1
    a = cfg.sigma_level * _ar1(rng, n_steps, cfg.ar)
    b = cfg.sigma_slope * _ar1(rng, n_steps, cfg.ar)
    c = cfg.sigma_twist * _ar1(rng, n_steps, cfg.ar)
    idio = cfg.sigma_idio * rng.standard_normal((n_steps, tenors.size))

    curves = [curve]
    for k in range(n_steps):
        shocked = apply_shock(curve, ShockSpec.parametric(a[k], b[k], c[k]), seg)
        rates = np.asarray(shocked.rates) + idio[k]
        curve = YieldCurve(dates[k + 1], curve.tenors, tuple(rates))
        curves.append(curve)
    return curves, ShockDraws(a=a, b=b, c=c, idio=idio, segment=seg)


def default_bond_universe() -> list[Bond]:
    """Four coupon bonds spanning the belly of the default tenor grid.

    B2 is the natural hedging target; B1/B3 bracket it and B4 sits close
    to it for three-instrument hedges.
    """
    return [
        Bond(id="B1", face=100.0, coupon_rate=0.034, coupon_frequency=1, maturity=7.0),
        Bond(id="B2", face=100.0, coupon_rate=0.030, coupon_frequency=1, maturity=5.0),
        Bond(id="B3", face=100.0, coupon_rate=0.028, coupon_frequency=1, maturity=4.0),
        Bond(id="B4", face=100.0, coupon_rate=0.031, coupon_frequency=2, maturity=5.5),
    ]
