"""File formats: curve history CSV, bond universe JSON, plan JSON, reports.

All rates in files are decimal fractions per year (0.0312, never 3.12);
every emitted file repeats that in a leading # comment. Numbers are written
with 10 significant digits, so identical inputs always produce byte-
identical outputs. Report emission writes temp files first and renames at
the end, so a failing run never leaves a half-written report behind.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import os
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .backtest import BacktestReport, UNHEDGED
from .bonds import Bond
from .curve import YieldCurve
from .errors import ValidationError
from .hedging import HedgeLeg, HedgePlan, Strategy

RATE_COMMENT = "# rates are decimal fractions per year (0.0312 means 3.12%)"
PNL_COMMENT = "# profit and loss in currency units; cumulative is the running sum"

BOND_REQUIRED_FIELDS = ("id", "face", "coupon_rate", "coupon_frequency", "maturity")
BOND_OPTIONAL_FIELDS = ("issue_or_first_coupon_offset",)


def fmt_num(x: float) -> str:
    """Render a number with the 10 significant digits every file uses."""
    return f"{x:.10g}"


_fmt = fmt_num


def _tenor_header(t: float) -> str:
    return f"tenor_{t:g}"


# ---------------------------------------------------------------------------
# curve history CSV
# ---------------------------------------------------------------------------

def parse_curve_csv(path) -> list[YieldCurve]:
    """Read a daily curve history.

    Expected header: date,tenor_0.5,tenor_1,... with tenors in years and
    strictly increasing. Rows must be in ascending date order with no
    duplicates. Every failure is collected and reported with its line
    number before raising.
    """
    path = Path(path)
    errors: list[str] = []
    with path.open(newline="") as fh:
        rows = [(i + 1, row) for i, row in enumerate(csv.reader(fh))]
    rows = [(ln, row) for ln, row in rows if row and not row[0].lstrip().startswith("#")]
    if not rows:
        raise ValidationError(f"{path}: empty curve file")

    header_ln, header = rows[0]
    if not header or header[0].strip() != "date":
        raise ValidationError(f"{path}:{header_ln}: header must start with 'date'")
    tenors: list[float] = []
    for col in header[1:]:
        col = col.strip()
        if not col.startswith("tenor_"):
            errors.append(f"line {header_ln}: column {col!r} must be named tenor_<years>")
            continue
        try:
            tenors.append(float(col[len("tenor_"):]))
        except ValueError:
            errors.append(f"line {header_ln}: cannot parse tenor from column {col!r}")
    if not errors:
        if len(tenors) < 2:
            errors.append(f"line {header_ln}: need at least 2 tenor columns")
        elif any(b <= a for a, b in zip(tenors, tenors[1:])):
            errors.append(f"line {header_ln}: tenor columns must be strictly increasing")
    if errors:
        raise ValidationError(f"{path}: " + "; ".join(errors))

    curves: list[YieldCurve] = []
    last_date: dt.date | None = None
    for ln, row in rows[1:]:
        if len(row) != len(header):
            errors.append(f"line {ln}: expected {len(header)} fields, got {len(row)}")
            continue
        try:
            date = dt.date.fromisoformat(row[0].strip())
        except ValueError:
            errors.append(f"line {ln}: bad date {row[0]!r} (expected ISO-8601)")
            continue
        try:
            rates = [float(v) for v in row[1:]]
        except ValueError:
            bad = next(v for v in row[1:] if not _is_float(v))
            errors.append(f"line {ln}: non-numeric rate {bad!r}")
            continue
        if last_date is not None and date <= last_date:
            kind = "duplicate" if date == last_date else "out-of-order"
            errors.append(f"line {ln}: {kind} date {date}")
            continue
        last_date = date
        curves.append(YieldCurve(date, tuple(tenors), tuple(rates)))
    if errors:
        raise ValidationError(f"{path}: " + "; ".join(errors))
    if not curves:
        raise ValidationError(f"{path}: no data rows")
    return curves


def _is_float(v: str) -> bool:
    try:
        float(v)
        return True
    except ValueError:
        return False


def write_curve_csv(curves: Sequence[YieldCurve], path) -> None:
    """Write a history in the same format parse_curve_csv reads."""
    grid = curves[0].tenors
    for c in curves:
        if c.tenors != grid:
            raise ValidationError(f"tenor grid changes on {c.date}; cannot write one file")
    lines = [RATE_COMMENT, "date," + ",".join(_tenor_header(t) for t in grid)]
    for c in curves:
        lines.append(c.date.isoformat() + "," + ",".join(_fmt(r) for r in c.rates))
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# bond universe JSON
# ---------------------------------------------------------------------------

def parse_bonds_json(path) -> dict[str, Bond]:
    """Read a JSON array of bond definitions, keyed by id after validation."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: expected a JSON array of bonds")
    errors: list[str] = []
    universe: dict[str, Bond] = {}
    for idx, entry in enumerate(raw):
        label = f"bond #{idx}"
        if not isinstance(entry, dict):
            errors.append(f"{label}: not an object")
            continue
        if isinstance(entry.get("id"), str):
            label = f"bond {entry['id']!r}"
        missing = [f for f in BOND_REQUIRED_FIELDS if f not in entry]
        unknown = [f for f in entry if f not in BOND_REQUIRED_FIELDS + BOND_OPTIONAL_FIELDS]
        if missing:
            errors.append(f"{label}: missing field(s) {missing}")
        if unknown:
            errors.append(f"{label}: unknown field(s) {unknown}")
        if missing or unknown:
            continue
        try:
            bond = Bond(
                id=str(entry["id"]),
                face=float(entry["face"]),
                coupon_rate=float(entry["coupon_rate"]),
                coupon_frequency=int(entry["coupon_frequency"]),
                maturity=float(entry["maturity"]),
                issue_or_first_coupon_offset=(
                    float(entry["issue_or_first_coupon_offset"])
                    if entry.get("issue_or_first_coupon_offset") is not None
                    else None
                ),
            )
        except (TypeError, ValueError) as exc:
            errors.append(f"{label}: {exc}")
            continue
        if bond.id in universe:
            errors.append(f"{label}: duplicate id")
            continue
        universe[bond.id] = bond
    if errors:
        raise ValidationError(f"{path}: " + "; ".join(errors))
    if not universe:
        raise ValidationError(f"{path}: no bonds defined")
    return universe


def write_bonds_json(bonds: Sequence[Bond], path) -> None:
    entries = []
    for b in bonds:
        e = {
            "id": b.id,
            "face": b.face,
            "coupon_rate": b.coupon_rate,
            "coupon_frequency": b.coupon_frequency,
            "maturity": b.maturity,
        }
        if b.issue_or_first_coupon_offset is not None:
            e["issue_or_first_coupon_offset"] = b.issue_or_first_coupon_offset
        entries.append(e)
    Path(path).write_text(json.dumps(entries, indent=2) + "\n")


# ---------------------------------------------------------------------------
# hedge plan JSON
# ---------------------------------------------------------------------------

def plan_to_dict(plan: HedgePlan) -> dict:
    return {
        "strategy": plan.strategy.value,
        "target": {"id": plan.target_id, "amount": plan.target_amount},
        "legs": [{"id": leg.id, "amount": leg.amount} for leg in plan.legs],
        "constraints": [{"name": n, "value": v} for n, v in plan.constraints],
    }


def plan_from_dict(data: Mapping) -> HedgePlan:
    try:
        return HedgePlan(
            strategy=Strategy(data["strategy"]),
            target_id=str(data["target"]["id"]),
            target_amount=float(data["target"]["amount"]),
            legs=tuple(HedgeLeg(str(l["id"]), float(l["amount"])) for l in data["legs"]),
            constraints=tuple((str(c["name"]), float(c["value"])) for c in data["constraints"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed hedge plan: {exc}") from exc


def parse_plan_json(path) -> HedgePlan:
    try:
        return plan_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# backtest report emission
# ---------------------------------------------------------------------------

def emit_report(
    report: BacktestReport,
    out_dir,
    correlations: np.ndarray | None = None,
    tenors: Sequence[float] | None = None,
) -> list[Path]:
    """Write pnl_<strategy>.csv per series, summary.csv and correlations.csv.

    Everything is written to temp files first and renamed once all writes
    succeeded. Returns the final paths.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    net = report.config.net_carry
    staged: list[tuple[Path, str]] = []

    order = [s.value for s in report.config.strategies]
    if order:
        order.append(UNHEDGED)
    for name in order:
        series = report.series.get(name)
        if series is None:
            continue
        lines = [PNL_COMMENT, "date,daily_pnl,cumulative_pnl"]
        for date, pnl, cum in zip(
            series.dates, series.pnl(net), series.cumulative(net)
        ):
            lines.append(f"{date.isoformat()},{_fmt(pnl)},{_fmt(cum)}")
        staged.append((out / f"pnl_{name}.csv", "\n".join(lines) + "\n"))

    lines = [PNL_COMMENT, "strategy,mean,stdev,max_drawdown,worst_day"]
    for name in order:
        stats = report.summary.get(name)
        if stats is None:
            continue
        lines.append(
            f"{name},{_fmt(stats.mean)},{_fmt(stats.stdev)},"
            f"{_fmt(stats.max_drawdown)},{_fmt(stats.worst_day)}"
        )
    staged.append((out / "summary.csv", "\n".join(lines) + "\n"))

    if correlations is not None:
        if tenors is None:
            raise ValueError("correlations need the tenor grid for labelling")
        lines = [RATE_COMMENT, "tenor," + ",".join(_tenor_header(t) for t in tenors)]
        for i, t in enumerate(tenors):
            lines.append(f"{t:g}," + ",".join(_fmt(v) for v in correlations[i]))
        staged.append((out / "correlations.csv", "\n".join(lines) + "\n"))

    tmp_paths = []
    for final, text in staged:
        tmp = final.with_name(final.name + ".tmp")
        tmp.write_text(text)
        tmp_paths.append((tmp, final))
    for tmp, final in tmp_paths:
        os.replace(tmp, final)
    return [final for final, _ in staged]
