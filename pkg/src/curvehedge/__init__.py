"""curvehedge: immunize bond portfolios against yield-curve movements.

The toolkit prices coupon bonds from cashflows, fits local polynomial
segments to the spot curve, decomposes curve moves into translation,
rotation and twist, and solves hedge ratios for four strategies of
increasing order: duration, quadratic, duration-convexity, and cubic.
Scenario repricing and a daily backtest engine verify how well each
strategy's immunization survives realistic curve histories.
"""

from .backtest import (
    ALL_STRATEGIES,
    UNHEDGED,
    BacktestConfig,
    BacktestReport,
    StrategySeries,
    SummaryStats,
    run_backtest,
    summary_stats,
    tenor_correlations,
    year_fraction,
)
from .bonds import (
    Bond,
    BondAnalytics,
    analytics,
    cashflows,
    convexity,
    curve_analytics,
    modified_duration,
    pnl_approx,
    price,
)
from .curve import (
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
from .errors import (
    CollinearInstrumentError,
    CurveHedgeError,
    DegenerateSpanError,
    ExtrapolationError,
    FitError,
    SingularSystemError,
    ValidationError,
)
from .hedging import (
    Constraint,
    HedgeLeg,
    HedgePlan,
    InstrumentSnapshot,
    Strategy,
    aggregate_portfolio,
    convexity_hedge,
    cubic_hedge,
    duration_hedge,
    quadratic_hedge,
    snapshot,
    solve_constraint_hedge,
)
from .io import (
    emit_report,
    fmt_num,
    parse_bonds_json,
    parse_curve_csv,
    parse_plan_json,
    plan_from_dict,
    plan_to_dict,
    write_bonds_json,
    write_curve_csv,
)
from .scenario import (
    ScenarioResult,
    default_segment,
    estimate_order,
    reprice_pnl,
    residual_scaling,
    run_scenario,
)
from .synth import ShockDraws, SynthConfig, default_bond_universe, generate_history

__version__ = "0.1.0"

__all__ = [
    "ALL_STRATEGIES",
    "UNHEDGED",
    "BacktestConfig",
    "BacktestReport",
    "Bond",
    "BondAnalytics",
    "CollinearInstrumentError",
    "Constraint",
    "CurveHedgeError",
    "DegenerateSpanError",
    "ExtrapolationError",
    "FitError",
    "HedgeLeg",
    "HedgePlan",
    "InstrumentSnapshot",
    "PolynomialSegment",
    "ScenarioResult",
    "ShockDraws",
    "ShockSpec",
    "SingularSystemError",
    "Strategy",
    "StrategySeries",
    "SummaryStats",
    "SynthConfig",
    "ValidationError",
    "YieldCurve",
    "aggregate_portfolio",
    "analytics",
    "apply_shock",
    "cashflows",
    "convexity",
    "convexity_hedge",
    "cubic_hedge",
    "curvature",
    "curve_analytics",
    "default_bond_universe",
    "default_segment",
    "delta_y",
    "derivatives",
    "duration_hedge",
    "emit_report",
    "estimate_order",
    "fit_segment",
    "fmt_num",
    "generate_history",
    "modified_duration",
    "parse_bonds_json",
    "parse_curve_csv",
    "parse_plan_json",
    "plan_from_dict",
    "plan_to_dict",
    "pnl_approx",
    "price",
    "quadratic_hedge",
    "reprice_pnl",
    "residual_scaling",
    "run_backtest",
    "run_scenario",
    "snapshot",
    "solve_constraint_hedge",
    "spot",
    "summary_stats",
    "tenor_correlations",
    "write_bonds_json",
    "write_curve_csv",
    "year_fraction",
]
