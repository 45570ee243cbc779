"""Command-line entry point.

Subcommands:

* analyze  — bond analytics table off one curve date
* hedge    — build a hedge plan and emit it as JSON
* scenario — shock a curve, reprice a plan exactly, emit JSON lines
* backtest — replay a curve history and write P&L/summary/correlation CSVs
* stats    — tenor correlation matrix only
* synth    — seeded synthetic curve history generator for fixtures

All numbers are printed with 10 significant digits, so identical inputs
give byte-identical outputs. Exit code 0 on success, 2 on any data or
validation error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .backtest import (
    ALL_STRATEGIES,
    BacktestConfig,
    run_backtest,
    tenor_correlations,
)
from .bonds import curve_analytics
from .curve import ShockSpec, YieldCurve
from .errors import CurveHedgeError, ValidationError
from .hedging import Strategy, convexity_hedge, cubic_hedge, duration_hedge, quadratic_hedge, snapshot
from .io import (
    RATE_COMMENT,
    emit_report,
    fmt_num,
    parse_bonds_json,
    parse_curve_csv,
    parse_plan_json,
    plan_to_dict,
    write_bonds_json,
    write_curve_csv,
)
from .scenario import default_segment, run_scenario
from .synth import SynthConfig, default_bond_universe, generate_history

_STRATEGY_BUILDERS = {
    Strategy.DURATION: duration_hedge,
    Strategy.QUADRATIC: quadratic_hedge,
    Strategy.CONVEXITY: convexity_hedge,
    Strategy.CUBIC: cubic_hedge,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every subcommand."""

    subcommand: str
    inputs: tuple[Path, ...]
    out: Path | None
    seed: int
    tolerance: float
    allow_extrapolation: bool = False
    net_carry: bool = False
    diff_correlations: bool = False


def _run_config(args: argparse.Namespace) -> RunConfig:
    """Fail-fast validation: every missing input is reported before any work."""
    input_attrs = ("bonds", "curve", "history", "plan", "config")
    inputs = []
    problems = []
    for attr in input_attrs:
        value = getattr(args, attr, None)
        if value is None:
            continue
        p = Path(value)
        if not p.is_file():
            problems.append(f"--{attr}: no such file: {p}")
        inputs.append(p)
    if problems:
        raise ValidationError("; ".join(problems))
    return RunConfig(
        subcommand=args.command,
        inputs=tuple(inputs),
        out=Path(args.out) if getattr(args, "out", None) else None,
        seed=args.seed,
        tolerance=args.tolerance,
        allow_extrapolation=getattr(args, "allow_extrapolation", False),
        net_carry=getattr(args, "net_carry", False),
        diff_correlations=getattr(args, "diff", False),
    )


def _pick_curve(curves: list[YieldCurve], date: str | None) -> YieldCurve:
    if date is None:
        return curves[0]
    want = dt.date.fromisoformat(date)
    for c in curves:
        if c.date == want:
            return c
    raise ValidationError(f"date {want} not present in the curve file")


def _parse_shock(text: str) -> ShockSpec:
    """Parse 'a=0.001,b=0,c=0' (missing keys default to 0)."""
    values = {"a": 0.0, "b": 0.0, "c": 0.0}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValidationError(f"bad shock component {part!r}: expected key=value")
        key, _, raw = part.partition("=")
        key = key.strip()
        if key not in values:
            raise ValidationError(f"unknown shock component {key!r}: use a, b, c")
        try:
            values[key] = float(raw)
        except ValueError:
            raise ValidationError(f"non-numeric shock value {raw!r} for {key!r}") from None
    return ShockSpec.parametric(values["a"], values["b"], values["c"])


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text if text.endswith("\n") else text + "\n")


def _round10(x: float) -> float:
    return float(fmt_num(x))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace, cfg: RunConfig) -> int:
    universe = parse_bonds_json(args.bonds)
    curve = _pick_curve(parse_curve_csv(args.curve), args.date)
    header = f"{'id':<8}{'maturity':>10}{'price':>16}{'ytm':>14}{'duration':>14}{'convexity':>14}"
    lines = [f"# analytics off curve {curve.date}, mode={args.mode}", header]
    for bond in universe.values():
        a = curve_analytics(bond, curve, mode=args.mode)
        lines.append(
            f"{bond.id:<8}{fmt_num(bond.maturity):>10}{fmt_num(a.price):>16}"
            f"{fmt_num(a.ytm):>14}{fmt_num(a.modified_duration):>14}{fmt_num(a.convexity):>14}"
        )
    _emit("\n".join(lines), cfg.out)
    return 0


def cmd_hedge(args: argparse.Namespace, cfg: RunConfig) -> int:
    universe = parse_bonds_json(args.bonds)
    curve = _pick_curve(parse_curve_csv(args.curve), args.date)
    strategy = Strategy(args.strategy)
    ids = [s.strip() for s in args.instruments.split(",") if s.strip()]
    unknown = [i for i in [args.target, *ids] if i not in universe]
    if unknown:
        raise ValidationError(f"unknown bond id(s) {unknown}")
    target = snapshot(universe[args.target], curve, amount=args.amount)
    legs = [snapshot(universe[i], curve) for i in ids]
    builder = _STRATEGY_BUILDERS[strategy]
    if strategy in (Strategy.QUADRATIC, Strategy.CUBIC):
        plan = builder(target, *legs, allow_extrapolation=cfg.allow_extrapolation)
    else:
        plan = builder(target, *legs)
    data = plan_to_dict(plan)
    data["legs"] = [{"id": l["id"], "amount": _round10(l["amount"])} for l in data["legs"]]
    data["constraints"] = [
        {"name": c["name"], "value": _round10(c["value"])} for c in data["constraints"]
    ]
    _emit(json.dumps(data, indent=2), cfg.out)
    return 0


def cmd_scenario(args: argparse.Namespace, cfg: RunConfig) -> int:
    plan = parse_plan_json(args.plan)
    universe = parse_bonds_json(args.bonds)
    curve = _pick_curve(parse_curve_csv(args.curve), args.date)
    shock = _parse_shock(args.shock)
    segment = default_segment(curve)
    scales = [0.5 ** k for k in range(args.sweep)] if args.sweep else [1.0]
    lines = []
    for scale in scales:
        result = run_scenario(plan, universe, curve, shock.scaled(scale), segment=segment)
        lines.append(json.dumps({
            "scale": scale,
            "shock": {"a": result.shock.a, "b": result.shock.b, "c": result.shock.c},
            "unhedged_pnl": _round10(result.unhedged_pnl),
            "hedged_pnl": _round10(result.hedged_pnl),
            "within_tolerance": abs(result.hedged_pnl) <= cfg.tolerance,
            "per_instrument": [
                {"id": i, "pnl": _round10(p)} for i, p in result.per_instrument_pnl
            ],
        }))
    _emit("\n".join(lines), cfg.out)
    return 0


def _backtest_config(path) -> BacktestConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from exc
    try:
        strategies = tuple(Strategy(s) for s in raw.get("strategies", [s.value for s in ALL_STRATEGIES]))
        instruments = {
            Strategy(k): tuple(str(i) for i in v) for k, v in raw["instruments"].items()
        }
        return BacktestConfig(
            target_id=str(raw["target"]["id"]),
            target_amount=float(raw["target"].get("amount", 100.0)),
            instruments=instruments,
            strategies=strategies,
            rebalance_days=int(raw.get("rebalance_days", 1)),
            start=dt.date.fromisoformat(raw["start"]) if "start" in raw else None,
            end=dt.date.fromisoformat(raw["end"]) if "end" in raw else None,
            net_carry=bool(raw.get("net_carry", False)),
            allow_extrapolation=bool(raw.get("allow_extrapolation", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed backtest config: {exc}") from exc


def cmd_backtest(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.out is None:
        raise ValidationError("backtest requires --out <dir>")
    history = parse_curve_csv(args.history)
    universe = parse_bonds_json(args.bonds)
    config = _backtest_config(args.config)
    report = run_backtest(history, universe, config)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    in_range = [c for c in history if (config.start is None or c.date >= config.start)
                and (config.end is None or c.date <= config.end)]
    corr = None
    try:
        corr = tenor_correlations(in_range, on="diffs" if cfg.diff_correlations else "levels")
    except ValueError as exc:
        print(f"warning: correlations skipped: {exc}", file=sys.stderr)
    emit_report(report, cfg.out, correlations=corr, tenors=history[0].tenors)
    return 0


def cmd_stats(args: argparse.Namespace, cfg: RunConfig) -> int:
    history = parse_curve_csv(args.history)
    corr = tenor_correlations(history, on="diffs" if cfg.diff_correlations else "levels")
    tenors = history[0].tenors
    lines = [RATE_COMMENT, "tenor," + ",".join(f"tenor_{t:g}" for t in tenors)]
    for i, t in enumerate(tenors):
        lines.append(f"{t:g}," + ",".join(fmt_num(v) for v in corr[i]))
    _emit("\n".join(lines), cfg.out)
    return 0


def cmd_synth(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.out is None:
        raise ValidationError("synth requires --out <csv>")
    synth_cfg = SynthConfig(
        days=args.days,
        start=dt.date.fromisoformat(args.start),
        sigma_level=args.sigma_level,
        sigma_slope=args.sigma_slope,
        sigma_twist=args.sigma_twist,
        sigma_idio=args.sigma_idio,
        ar=args.ar,
        seed=cfg.seed,
    )
    curves, _ = generate_history(synth_cfg)
    write_curve_csv(curves, cfg.out)
    if args.bonds_out:
        write_bonds_json(default_bond_universe(), args.bonds_out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    common.add_argument(
        "--tolerance", type=float, default=1e-9,
        help="absolute tolerance for within-tolerance flags (default 1e-9)",
    )
    common.add_argument("--out", default=None, help="output file or directory")

    parser = argparse.ArgumentParser(
        prog="curvehedge",
        description="Yield-curve immunization toolkit: analytics, hedge ratios, "
        "scenario repricing, backtests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="bond analytics table")
    p.add_argument("--bonds", required=True, help="bond universe JSON")
    p.add_argument("--curve", required=True, help="curve history CSV")
    p.add_argument("--date", default=None, help="ISO date row to use (default: first)")
    p.add_argument("--mode", choices=("flat", "spot"), default="flat")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hedge", parents=[common], help="build a hedge plan")
    p.add_argument("--strategy", required=True,
                   choices=[s.value for s in ALL_STRATEGIES])
    p.add_argument("--target", required=True, help="target bond id")
    p.add_argument("--instruments", required=True, help="comma-separated hedge bond ids")
    p.add_argument("--bonds", required=True, help="bond universe JSON")
    p.add_argument("--curve", required=True, help="curve history CSV")
    p.add_argument("--date", default=None, help="ISO date row to use (default: first)")
    p.add_argument("--amount", type=float, default=100.0, help="target amount (default 100)")
    p.add_argument("--allow-extrapolation", action="store_true",
                   help="permit targets outside the hedge maturity span")
    p.set_defaults(func=cmd_hedge)

    p = sub.add_parser("scenario", parents=[common], help="shock and reprice a plan")
    p.add_argument("--plan", required=True, help="hedge plan JSON (from `hedge`)")
    p.add_argument("--bonds", required=True, help="bond universe JSON")
    p.add_argument("--curve", required=True, help="curve history CSV")
    p.add_argument("--date", default=None, help="ISO date row to use (default: first)")
    p.add_argument("--shock", required=True, help="e.g. a=0.001,b=0,c=0")
    p.add_argument("--sweep", type=int, default=0,
                   help="run N dyadic scales of the shock instead of one")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("backtest", parents=[common], help="replay a curve history")
    p.add_argument("--history", required=True, help="curve history CSV")
    p.add_argument("--bonds", required=True, help="bond universe JSON")
    p.add_argument("--config", required=True, help="backtest config JSON")
    p.add_argument("--diff", action="store_true",
                   help="correlations on daily changes instead of levels")
    p.set_defaults(func=cmd_backtest)

    p = sub.add_parser("stats", parents=[common], help="tenor correlation matrix")
    p.add_argument("--history", required=True, help="curve history CSV")
    p.add_argument("--diff", action="store_true",
                   help="correlate daily changes instead of levels")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic history")
    p.add_argument("--days", type=int, default=250)
    p.add_argument("--start", default="2024-01-02", help="first trading date")
    p.add_argument("--sigma-level", type=float, default=SynthConfig.sigma_level)
    p.add_argument("--sigma-slope", type=float, default=SynthConfig.sigma_slope)
    p.add_argument("--sigma-twist", type=float, default=SynthConfig.sigma_twist)
    p.add_argument("--sigma-idio", type=float, default=SynthConfig.sigma_idio)
    p.add_argument("--ar", type=float, default=SynthConfig.ar)
    p.add_argument("--bonds-out", default=None, help="also write the demo bond universe")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _run_config(args)
        return args.func(args, cfg)
    except CurveHedgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
