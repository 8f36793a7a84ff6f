"""Verification reports: merging, JSON/CSV emission, text rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

CSV_COLUMNS = ("inequality", "seed", "p", "s", "grid_r", "grid_theta", "attained", "bound", "margin")


def fmt(x) -> str:
    """15 significant digits, the fixed width of every numeric output."""
    return f"{float(x):.15g}"


def _round(x):
    if isinstance(x, float):
        return float(fmt(x))
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


@dataclass(frozen=True)
class SampleRecord:
    """Worst grid node of one sample (``margin`` = bound side minus attained side, signed)."""

    inequality: str
    seed: int
    p: int
    s: float
    grid_r: float
    grid_theta: float
    attained: float
    bound: float
    margin: float
    grid_index: int = 0

    def sort_key(self) -> tuple:
        return (self.seed, self.p, self.grid_index, self.inequality)


@dataclass
class VerificationReport:
    checked_inequality: str
    samples: int = 0
    grid_points: int = 0
    min_margin: float = float("inf")
    worst_case: dict | None = None
    violations: int = 0
    tolerance: float = 0.0
    records: list[SampleRecord] = field(default_factory=list)
    # keys prefixed min_/max_ merge by min/max, everything else is summed
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = {
            "checked_inequality": self.checked_inequality,
            "samples": self.samples,
            "grid_points": self.grid_points,
            "min_margin": self.min_margin,
            "worst_case": self.worst_case,
            "violations": self.violations,
            "tolerance": self.tolerance,
            "extras": dict(sorted(self.extras.items())),
            "records": [asdict(r) for r in self.records],
        }
        return _round(out)

    @classmethod
    def from_json(cls, data: dict) -> VerificationReport:
        return cls(
            checked_inequality=data["checked_inequality"],
            samples=data["samples"],
            grid_points=data["grid_points"],
            min_margin=data["min_margin"],
            worst_case=data["worst_case"],
            violations=data["violations"],
            tolerance=data["tolerance"],
            records=[SampleRecord(**r) for r in data.get("records", [])],
            extras=data.get("extras", {}),
        )


def _worst_key(report: VerificationReport) -> tuple:
    wc = report.worst_case or {}
    return (report.min_margin, wc.get("seed", 0), wc.get("grid_index", 0))


def merge_reports(reports, name: str | None = None) -> VerificationReport:
    """Combine per-sample reports; ties in the worst margin go to the smallest (seed, grid index)."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to merge")
    out = VerificationReport(
        checked_inequality=name or reports[0].checked_inequality,
        tolerance=max(r.tolerance for r in reports),
    )
    best = None
    for r in reports:
        out.samples += r.samples
        out.grid_points += r.grid_points
        out.violations += r.violations
        out.records.extend(r.records)
        for k, v in r.extras.items():
            if k not in out.extras:
                out.extras[k] = v
            elif k.startswith("min_"):
                out.extras[k] = min(out.extras[k], v)
            elif k.startswith("max_"):
                out.extras[k] = max(out.extras[k], v)
            else:
                out.extras[k] += v
        if r.worst_case is not None and (best is None or _worst_key(r) < _worst_key(best)):
            best = r
    if best is not None:
        out.min_margin = best.min_margin
        out.worst_case = best.worst_case
    out.records.sort(key=SampleRecord.sort_key)
    return out


def to_json_text(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=1, sort_keys=True) + "\n"


def write_json(report: VerificationReport, path) -> None:
    Path(path).write_text(to_json_text(report))


def read_json(path) -> VerificationReport:
    return VerificationReport.from_json(json.loads(Path(path).read_text()))


def to_csv_text(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.records:
        row = asdict(r)
        writer.writerow(
            [row["inequality"], row["seed"], row["p"]] + [fmt(row[c]) for c in CSV_COLUMNS[3:]]
        )
    return buf.getvalue()


def write_csv(report: VerificationReport, path) -> None:
    Path(path).write_text(to_csv_text(report))


def render_text(report: VerificationReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    lines = [
        f"{report.checked_inequality}: {status}",
        f"  samples      {report.samples}",
        f"  grid points  {report.grid_points}",
        f"  violations   {report.violations} (tol {fmt(report.tolerance)})",
        f"  min margin   {fmt(report.min_margin)}",
    ]
    if report.worst_case:
        wc = ", ".join(f"{k}={fmt(v) if isinstance(v, float) else v}" for k, v in sorted(report.worst_case.items()))
        lines.append(f"  worst case   {wc}")
    for k, v in sorted(report.extras.items()):
        lines.append(f"  {k:<12} {fmt(v) if isinstance(v, float) else v}")
    return "\n".join(lines) + "\n"
