"""Hedge-ratio computation for the four immunization strategies.

All strategies zero out a set of dollar-risk constraints across the target
position and its hedge legs. Writing the dollar duration of instrument i as
N_i P_i D_i, the strategies are:

* duration: one instrument, zero total dollar duration. Covers a parallel
  shift of the curve.
* quadratic: two instruments, zero dollar duration and zero maturity-
  weighted dollar duration. Covers translation plus rotation, i.e. any
  rate move affine in maturity.
* convexity: two instruments, zero dollar duration and zero dollar
  convexity. Covers a parallel shift through second order.
* cubic: three instruments, zero dollar duration weighted by 1, T and T^2.
  Covers translation, rotation and twist, i.e. any rate move quadratic in
  maturity.

The two- and three-instrument ratios have closed forms; the cubic ones are
the Lagrange basis weights over the instrument maturities. A generic
square-system solver reproduces every closed form and extends to arbitrary
constraint sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .bonds import Bond, curve_analytics
from .curve import YieldCurve
from .errors import (
    CollinearInstrumentError,
    DegenerateSpanError,
    ExtrapolationError,
    SingularSystemError,
)

MIN_MATURITY_SPAN = 1.0 / 365.0
DET_RELATIVE_TOL = 1e-12
SOLVE_CONDITION_LIMIT = 1e12

_BOUNDS_TOL = 1e-12


class Strategy(str, Enum):
    DURATION = "duration"
    QUADRATIC = "quadratic"
    CONVEXITY = "convexity"  # the duration-convexity approach
    CUBIC = "cubic"
    CUSTOM = "custom"  # generic constraint system, any leg count


LEG_COUNT = {
    Strategy.DURATION: 1,
    Strategy.QUADRATIC: 2,
    Strategy.CONVEXITY: 2,
    Strategy.CUBIC: 3,
}


@dataclass(frozen=True)
class InstrumentSnapshot:
    """Price, maturity and risk numbers of one instrument on one date.

    amount is the signed position size; it only matters on the target (the
    position being hedged), hedge candidates carry amount 0.
    """

    id: str
    price: float
    maturity: float
    modified_duration: float
    convexity: float
    amount: float = 0.0

    def __post_init__(self):
        if self.price <= 0:
            raise ValueError(f"instrument {self.id!r}: price must be positive")
        if self.maturity <= 0:
            raise ValueError(f"instrument {self.id!r}: maturity must be positive")
        if self.modified_duration <= 0:
            raise ValueError(f"instrument {self.id!r}: duration must be positive")

    def with_amount(self, amount: float) -> "InstrumentSnapshot":
        return InstrumentSnapshot(
            self.id, self.price, self.maturity, self.modified_duration, self.convexity, amount
        )


@dataclass(frozen=True)
class HedgeLeg:
    id: str
    amount: float


@dataclass(frozen=True)
class HedgePlan:
    """Instrument amounts produced by a strategy, with the achieved constraints.

    constraints holds (name, achieved value) pairs: the residual of each
    zeroed dollar-risk sum after substituting the solved amounts back in.
    """

    strategy: Strategy
    target_id: str
    target_amount: float
    legs: tuple[HedgeLeg, ...]
    constraints: tuple[tuple[str, float], ...]

    def __post_init__(self):
        expected = LEG_COUNT.get(self.strategy)
        if expected is not None and len(self.legs) != expected:
            raise ValueError(
                f"{self.strategy.value} plan needs {expected} legs, got {len(self.legs)}"
            )

    def amounts(self) -> dict[str, float]:
        return {leg.id: leg.amount for leg in self.legs}


@dataclass(frozen=True)
class Constraint:
    """A named per-instrument weight; the hedge zeroes sum N_i P_i w(inst_i)."""

    name: str
    weight: Callable[[InstrumentSnapshot], float]


DOLLAR_DURATION = Constraint("dollar_duration", lambda s: s.modified_duration)
DURATION_MATURITY = Constraint(
    "dollar_duration_maturity", lambda s: s.modified_duration * s.maturity
)
DURATION_MATURITY_SQ = Constraint(
    "dollar_duration_maturity_sq", lambda s: s.modified_duration * s.maturity**2
)
DOLLAR_CONVEXITY = Constraint("dollar_convexity", lambda s: s.convexity)


def snapshot(bond: Bond, curve: YieldCurve, amount: float = 0.0, mode: str = "flat") -> InstrumentSnapshot:
    """Snapshot a bond off a curve (yield = spot at its maturity by default)."""
    a = curve_analytics(bond, curve, mode=mode)
    return InstrumentSnapshot(
        id=bond.id,
        price=a.price,
        maturity=bond.maturity,
        modified_duration=a.modified_duration,
        convexity=a.convexity,
        amount=amount,
    )


def _dollar_duration(s: InstrumentSnapshot) -> float:
    return s.amount * s.price * s.modified_duration


def _achieved(
    target: InstrumentSnapshot,
    legs: Sequence[InstrumentSnapshot],
    amounts: Sequence[float],
    constraints: Sequence[Constraint],
) -> tuple[tuple[str, float], ...]:
    out = []
    for con in constraints:
        total = target.amount * target.price * con.weight(target)
        for inst, n in zip(legs, amounts):
            total += n * inst.price * con.weight(inst)
        out.append((con.name, float(total)))
    return tuple(out)


def _check_interior(
    t: float, lo: float, hi: float, allow_extrapolation: bool
) -> None:
    if allow_extrapolation:
        return
    if t < lo - _BOUNDS_TOL or t > hi + _BOUNDS_TOL:
        raise ExtrapolationError(
            f"target maturity {t} outside hedging span [{lo}, {hi}]; "
            "pass allow_extrapolation=True to override"
        )


def duration_hedge(target: InstrumentSnapshot, inst_a: InstrumentSnapshot) -> HedgePlan:
    """Single-instrument hedge N_A = -N P D / (P_A D_A); kills dollar duration."""
    dd_a = inst_a.price * inst_a.modified_duration
    if dd_a == 0.0:
        raise ValueError(f"instrument {inst_a.id!r} has zero dollar duration")
    n_a = -_dollar_duration(target) / dd_a
    return HedgePlan(
        strategy=Strategy.DURATION,
        target_id=target.id,
        target_amount=target.amount,
        legs=(HedgeLeg(inst_a.id, float(n_a)),),
        constraints=_achieved(target, [inst_a], [n_a], [DOLLAR_DURATION]),
    )


def quadratic_hedge(
    target: InstrumentSnapshot,
    inst_a: InstrumentSnapshot,
    inst_b: InstrumentSnapshot,
    allow_extrapolation: bool = False,
) -> HedgePlan:
    """Two-instrument hedge against translation and rotation.

    With instruments sorted so T_A < T_B, the ratios split the target's
    dollar duration linearly in maturity:

        N_A = -(N P D / P_A D_A) (T_B - T) / (T_B - T_A)
        N_B = -(N P D / P_B D_B) (T - T_A) / (T_B - T_A)

    zeroing both sum N_i P_i D_i and sum N_i P_i D_i T_i.
    """
    lo, hi = sorted((inst_a, inst_b), key=lambda s: s.maturity)
    span = hi.maturity - lo.maturity
    if span < MIN_MATURITY_SPAN:
        raise DegenerateSpanError(
            f"instrument maturities {lo.maturity} and {hi.maturity} are "
            f"closer than {MIN_MATURITY_SPAN:.3e} years"
        )
    _check_interior(target.maturity, lo.maturity, hi.maturity, allow_extrapolation)
    npd = _dollar_duration(target)
    w_lo = (hi.maturity - target.maturity) / span
    w_hi = (target.maturity - lo.maturity) / span
    n_lo = -npd * w_lo / (lo.price * lo.modified_duration)
    n_hi = -npd * w_hi / (hi.price * hi.modified_duration)
    return HedgePlan(
        strategy=Strategy.QUADRATIC,
        target_id=target.id,
        target_amount=target.amount,
        legs=(HedgeLeg(lo.id, float(n_lo)), HedgeLeg(hi.id, float(n_hi))),
        constraints=_achieved(
            target, [lo, hi], [n_lo, n_hi], [DOLLAR_DURATION, DURATION_MATURITY]
        ),
    )


def convexity_hedge(
    target: InstrumentSnapshot,
    inst_a: InstrumentSnapshot,
    inst_b: InstrumentSnapshot,
) -> HedgePlan:
    """Two-instrument duration-convexity hedge.

        N_A = N P (C_B D - C D_B) / (P_A (C_A D_B - C_B D_A))
        N_B = N P (-C_A D + D_A C) / (P_B (C_A D_B - C_B D_A))

    zeroing sum N_i P_i D_i and sum N_i P_i C_i. Fails when the instruments'
    (D, C) pairs are proportional: they then carry the same risk shape and
    the system is singular.
    """
    a, b = sorted((inst_a, inst_b), key=lambda s: s.maturity)
    det = a.convexity * b.modified_duration - b.convexity * a.modified_duration
    scale = max(
        abs(a.convexity * b.modified_duration),
        abs(b.convexity * a.modified_duration),
    )
    if abs(det) <= DET_RELATIVE_TOL * scale:
        raise CollinearInstrumentError(
            f"instruments {a.id!r} and {b.id!r} have proportional duration/convexity "
            f"(C_A D_B - C_B D_A = {det:.3e})"
        )
    np_ = target.amount * target.price
    d, c = target.modified_duration, target.convexity
    n_a = np_ * (b.convexity * d - c * b.modified_duration) / (a.price * det)
    n_b = np_ * (-a.convexity * d + a.modified_duration * c) / (b.price * det)
    return HedgePlan(
        strategy=Strategy.CONVEXITY,
        target_id=target.id,
        target_amount=target.amount,
        legs=(HedgeLeg(a.id, float(n_a)), HedgeLeg(b.id, float(n_b))),
        constraints=_achieved(
            target, [a, b], [n_a, n_b], [DOLLAR_DURATION, DOLLAR_CONVEXITY]
        ),
    )


def cubic_hedge(
    target: InstrumentSnapshot,
    inst_a: InstrumentSnapshot,
    inst_b: InstrumentSnapshot,
    inst_c: InstrumentSnapshot,
    allow_extrapolation: bool = False,
) -> HedgePlan:
    """Three-instrument hedge against translation, rotation and twist.

    Each leg's dollar duration is the target's scaled by the Lagrange basis
    polynomial over the three instrument maturities, evaluated at the
    target maturity:

        N_i P_i D_i = -N P D l_i(T)

    which zeroes sum N_i P_i D_i weighted by 1, T_i and T_i^2. Instruments
    are sorted by maturity internally, so the result does not depend on the
    order they are passed in.
    """
    insts = sorted((inst_a, inst_b, inst_c), key=lambda s: s.maturity)
    ts = [s.maturity for s in insts]
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(ts[j] - ts[i]) < MIN_MATURITY_SPAN:
                raise DegenerateSpanError(
                    f"instruments {insts[i].id!r} and {insts[j].id!r} have "
                    f"degenerate node maturities {ts[i]} and {ts[j]}"
                )
    _check_interior(target.maturity, ts[0], ts[-1], allow_extrapolation)
    npd = _dollar_duration(target)
    t = target.maturity
    legs = []
    amounts = []
    for i, inst in enumerate(insts):
        basis = 1.0
        for j, tj in enumerate(ts):
            if j != i:
                basis *= (t - tj) / (ts[i] - tj)
        n_i = -npd * basis / (inst.price * inst.modified_duration)
        amounts.append(n_i)
        legs.append(HedgeLeg(inst.id, float(n_i)))
    return HedgePlan(
        strategy=Strategy.CUBIC,
        target_id=target.id,
        target_amount=target.amount,
        legs=tuple(legs),
        constraints=_achieved(
            target,
            insts,
            amounts,
            [DOLLAR_DURATION, DURATION_MATURITY, DURATION_MATURITY_SQ],
        ),
    )


def solve_constraint_hedge(
    target: InstrumentSnapshot,
    instruments: Sequence[InstrumentSnapshot],
    constraints: Sequence[Constraint],
    strategy: Strategy = Strategy.CUSTOM,
) -> HedgePlan:
    """Solve the square system sum_i N_i P_i w_k(i) = -N P w_k(target).

    One instrument per constraint. The three closed-form multi-instrument
    strategies are special cases ({D, DT}, {D, C} and {D, DT, DT^2}); any
    other constraint set with matching instrument count works the same way.
    Raises SingularSystemError, naming the most nearly dependent constraint
    pair, when the system's condition number exceeds SOLVE_CONDITION_LIMIT.
    """
    if len(instruments) != len(constraints):
        raise ValueError(
            f"need as many instruments as constraints, got {len(instruments)} "
            f"and {len(constraints)}"
        )
    if not instruments:
        raise ValueError("need at least one instrument")
    m = np.array(
        [[inst.price * con.weight(inst) for inst in instruments] for con in constraints]
    )
    rhs = np.array(
        [-target.amount * target.price * con.weight(target) for con in constraints]
    )
    # row equilibration: same solution, much tamer condition number
    scale = np.max(np.abs(m), axis=1)
    scale[scale == 0.0] = 1.0
    m = m / scale[:, None]
    rhs = rhs / scale
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > SOLVE_CONDITION_LIMIT:
        raise SingularSystemError(
            f"constraint system condition number {cond:.3e}; nearest to dependent: "
            f"{_most_parallel_pair(m, constraints)}"
        )
    amounts = np.linalg.solve(m, rhs)
    return HedgePlan(
        strategy=strategy,
        target_id=target.id,
        target_amount=target.amount,
        legs=tuple(HedgeLeg(inst.id, float(n)) for inst, n in zip(instruments, amounts)),
        constraints=_achieved(target, instruments, amounts, constraints),
    )


def _most_parallel_pair(m: np.ndarray, constraints: Sequence[Constraint]) -> str:
    if len(constraints) < 2:
        return f"constraint {constraints[0].name!r} has (near-)zero weights"
    norms = np.linalg.norm(m, axis=1)
    norms[norms == 0] = 1.0
    unit = m / norms[:, None]
    best, pair = -1.0, (0, 1)
    for i in range(len(constraints)):
        for j in range(i + 1, len(constraints)):
            c = abs(float(unit[i] @ unit[j]))
            if c > best:
                best, pair = c, (i, j)
    return f"{constraints[pair[0]].name!r} and {constraints[pair[1]].name!r} (|cos| = {best:.6f})"


def aggregate_portfolio(
    positions: Sequence[tuple[float, InstrumentSnapshot]],
    value_weighted: bool = False,
) -> InstrumentSnapshot:
    """Collapse n positions into one synthetic instrument.

    Total value is sum n_i P_i, maturity is the longest position's, and
    duration / convexity are amount-weighted means by default:

        D = sum n_i D_i / sum n_i,   C = sum n_i C_i / sum n_i

    value_weighted=True switches both to sum n_i P_i D_i / sum n_i P_i
    style weights. The synthetic amount is sum n_i and the price is the
    total value divided by it.
    """
    if not positions:
        raise ValueError("cannot aggregate an empty position list")
    n = np.array([p[0] for p in positions], dtype=float)
    prices = np.array([p[1].price for p in positions])
    durs = np.array([p[1].modified_duration for p in positions])
    cxs = np.array([p[1].convexity for p in positions])
    mats = np.array([p[1].maturity for p in positions])

    total_amount = float(np.sum(n))
    if abs(total_amount) <= 1e-12 * max(1.0, float(np.sum(np.abs(n)))):
        raise ValueError("net portfolio amount is zero; synthetic price undefined")
    total_value = float(np.sum(n * prices))
    if value_weighted:
        if abs(total_value) <= 1e-12 * max(1.0, float(np.sum(np.abs(n * prices)))):
            raise ValueError("net portfolio value is zero; value weights undefined")
        dur = float(np.sum(n * prices * durs) / total_value)
        cx = float(np.sum(n * prices * cxs) / total_value)
    else:
        dur = float(np.sum(n * durs) / total_amount)
        cx = float(np.sum(n * cxs) / total_amount)
    return InstrumentSnapshot(
        id="portfolio",
        price=total_value / total_amount,
        maturity=float(np.max(mats)),
        modified_duration=dur,
        convexity=cx,
        amount=total_amount,
    )
