"""Yield-curve storage, polynomial segment fitting and parametric shocks.

A curve is a dated set of (tenor, spot rate) knots. Between knots the spot
rate is piecewise linear; no extrapolation is ever performed silently. A
segment of the curve can be fitted with a quadratic or cubic polynomial

    Y(T) = alpha + beta T + gamma T^2 + lambda T^3

whose first two derivatives quantify the slope and the curvature at each
maturity. A curve movement is decomposed into translation, rotation and
twist:

    dY(T) = a + b Y'(T) + c Y''(T)

where a shifts the level, b scales the slope and c scales the curvature of
the fitted segment. Applying such a shock to the knot grid produces a new
curve; knots outside the fitted span move by the nearest endpoint's dY.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpanError, ExtrapolationError, FitError

MIN_SEGMENT_SPAN = 1.0 / 365.0
FIT_CONDITION_LIMIT = 1e12

_SPAN_TOL = 1e-9


@dataclass(frozen=True)
class YieldCurve:
    """Spot rates on a single date, keyed by tenor in years."""

    date: dt.date
    tenors: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self):
        t = np.asarray(self.tenors, dtype=float)
        r = np.asarray(self.rates, dtype=float)
        if t.ndim != 1 or t.shape != r.shape:
            raise ValueError("tenors and rates must be 1-d sequences of equal length")
        if t.size < 2:
            raise ValueError(f"curve needs at least 2 knots, got {t.size}")
        if np.any(t <= 0):
            raise ValueError("tenors must be positive")
        if np.any(np.diff(t) <= 0):
            raise ValueError("tenors must be strictly increasing")
        if not np.all(np.isfinite(r)):
            raise ValueError("spot rates must be finite")
        object.__setattr__(self, "tenors", tuple(float(x) for x in t))
        object.__setattr__(self, "rates", tuple(float(x) for x in r))

    @classmethod
    def from_points(cls, date: dt.date, points) -> "YieldCurve":
        pts = list(points)
        return cls(date, tuple(p[0] for p in pts), tuple(p[1] for p in pts))

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.tenors, self.rates))

    @property
    def min_tenor(self) -> float:
        return self.tenors[0]

    @property
    def max_tenor(self) -> float:
        return self.tenors[-1]


@dataclass(frozen=True)
class PolynomialSegment:
    """Polynomial fit of a curve segment; coefficients in increasing degree.

    coefficients = (alpha, beta, gamma, lam); lam is 0 for quadratic fits.
    fit_kind records whether the knots were interpolated exactly (knot
    count equalled degree + 1) or fitted by least squares.
    """

    t_lo: float
    t_hi: float
    coefficients: tuple[float, float, float, float]
    fit_kind: str = "least_squares"

    def __post_init__(self):
        if not self.t_lo < self.t_hi:
            raise ValueError(f"need t_lo < t_hi, got [{self.t_lo}, {self.t_hi}]")
        if len(self.coefficients) != 4:
            raise ValueError("coefficients must be (alpha, beta, gamma, lambda)")


@dataclass(frozen=True)
class ShockSpec:
    """A curve deformation: parametric (a, b, c) or an explicit knot vector.

    Exactly one form is active. The parametric form is interpreted against
    a fitted PolynomialSegment; the custom form adds a per-knot vector.
    """

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    custom: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.custom is not None:
            if (self.a, self.b, self.c) != (0.0, 0.0, 0.0):
                raise ValueError("a custom shock vector excludes parametric a/b/c terms")
            object.__setattr__(self, "custom", tuple(float(x) for x in self.custom))

    @classmethod
    def parametric(cls, a: float = 0.0, b: float = 0.0, c: float = 0.0) -> "ShockSpec":
        return cls(a=a, b=b, c=c)

    @classmethod
    def from_vector(cls, values) -> "ShockSpec":
        return cls(custom=tuple(float(v) for v in values))

    @property
    def is_parametric(self) -> bool:
        return self.custom is None

    def scaled(self, k: float) -> "ShockSpec":
        """The same deformation shape at k times the size."""
        if self.custom is not None:
            return ShockSpec(custom=tuple(k * v for v in self.custom))
        return ShockSpec(a=k * self.a, b=k * self.b, c=k * self.c)


def spot(curve: YieldCurve, maturity: float) -> float:
    """Piecewise-linear spot rate at `maturity`; exact at the knots.

    Raises ExtrapolationError outside [min_tenor, max_tenor]; there is no
    silent flat extension.
    """
    t = np.asarray(curve.tenors)
    if maturity < t[0] - _SPAN_TOL or maturity > t[-1] + _SPAN_TOL:
        raise ExtrapolationError(
            f"maturity {maturity} outside curve range [{t[0]}, {t[-1]}] on {curve.date}"
        )
    return float(np.interp(maturity, t, np.asarray(curve.rates)))


def fit_segment(curve: YieldCurve, t_lo: float, t_hi: float, degree: int) -> PolynomialSegment:
    """Least-squares polynomial of the given degree over the knots in [t_lo, t_hi].

    With exactly degree + 1 in-range knots the fit interpolates them. The
    normal equations are solved directly (pivoted LU on a system of at most
    4x4); a condition number above FIT_CONDITION_LIMIT raises FitError
    rather than returning garbage coefficients.
    """
    if degree not in (2, 3):
        raise ValueError(f"degree must be 2 or 3, got {degree}")
    if t_hi - t_lo < MIN_SEGMENT_SPAN:
        raise DegenerateSpanError(
            f"segment span {t_hi - t_lo:.3e} below minimum {MIN_SEGMENT_SPAN:.3e}"
        )
    t = np.asarray(curve.tenors)
    r = np.asarray(curve.rates)
    mask = (t >= t_lo - _SPAN_TOL) & (t <= t_hi + _SPAN_TOL)
    n_in = int(np.count_nonzero(mask))
    if n_in < degree + 1:
        raise FitError(
            f"degree-{degree} fit needs at least {degree + 1} knots in "
            f"[{t_lo}, {t_hi}], found {n_in}"
        )
    vand = np.vander(t[mask], degree + 1, increasing=True)
    normal = vand.T @ vand
    cond = np.linalg.cond(normal)
    if not np.isfinite(cond) or cond > FIT_CONDITION_LIMIT:
        raise FitError(f"normal equations condition number {cond:.3e} exceeds {FIT_CONDITION_LIMIT:.0e}")
    coef = np.linalg.solve(normal, vand.T @ r[mask])
    padded = tuple(float(c) for c in coef) + (0.0,) * (3 - degree)
    kind = "interpolating" if n_in == degree + 1 else "least_squares"
    return PolynomialSegment(t_lo=float(t_lo), t_hi=float(t_hi), coefficients=padded, fit_kind=kind)


def _check_span(seg: PolynomialSegment, maturity: float) -> None:
    if maturity < seg.t_lo - _SPAN_TOL or maturity > seg.t_hi + _SPAN_TOL:
        raise ExtrapolationError(
            f"maturity {maturity} outside segment span [{seg.t_lo}, {seg.t_hi}]"
        )


def derivatives(seg: PolynomialSegment, maturity: float) -> tuple[float, float, float]:
    """(value, first derivative, second derivative) of the segment polynomial."""
    _check_span(seg, maturity)
    a0, a1, a2, a3 = seg.coefficients
    t = maturity
    f = a0 + t * (a1 + t * (a2 + t * a3))
    f1 = a1 + t * (2.0 * a2 + t * 3.0 * a3)
    f2 = 2.0 * a2 + 6.0 * a3 * t
    return f, f1, f2


def curvature(seg: PolynomialSegment, maturity: float) -> float:
    """Geometric curvature Y'' / (1 + Y'^2)^(3/2) of the fitted segment."""
    _, f1, f2 = derivatives(seg, maturity)
    return f2 / (1.0 + f1 * f1) ** 1.5


def delta_y(seg: PolynomialSegment, shock: ShockSpec, maturity: float) -> float:
    """Rate change a + b Y'(T) + c Y''(T) at one maturity, for a parametric shock."""
    if not shock.is_parametric:
        raise ValueError("delta_y needs a parametric shock; apply custom vectors with apply_shock")
    _, f1, f2 = derivatives(seg, maturity)
    return shock.a + shock.b * f1 + shock.c * f2


def apply_shock(
    curve: YieldCurve, shock: ShockSpec, seg: PolynomialSegment | None = None
) -> YieldCurve:
    """New curve with every knot moved by the shock's dY.

    Custom shocks need one value per knot. Parametric shocks need the fitted
    segment they refer to; knots outside its span move by the dY of the
    nearest span endpoint.
    """
    t = np.asarray(curve.tenors)
    if not shock.is_parametric:
        vec = np.asarray(shock.custom)
        if vec.size != t.size:
            raise ValueError(
                f"custom shock has {vec.size} values for a curve with {t.size} knots"
            )
        shifts = vec
    else:
        if seg is None:
            raise ValueError("parametric shock requires the fitted segment it refers to")
        clipped = np.clip(t, seg.t_lo, seg.t_hi)
        shifts = np.array([delta_y(seg, shock, ti) for ti in clipped])
    return YieldCurve(curve.date, curve.tenors, tuple(np.asarray(curve.rates) + shifts))
