"""CSV / JSON report writing shared by the harness commands."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence


def fmt_value(x: Any) -> str:
    """Stable text form: exact rationals as ``p/q``, floats with 12 decimals."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12f}"
    return str(x)


@dataclass
class CheckResult:
    name: str
    params: dict
    passed: bool
    margin: Any = None
    detail: str = ""

    def row(self) -> dict:
        return {
            "check": self.name,
            "params": " ".join(f"{k}={v}" for k, v in self.params.items()),
            "passed": fmt_value(self.passed),
            "margin": fmt_value(self.margin),
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, params: dict, passed: bool, margin=None, detail: str = "") -> CheckResult:
        result = CheckResult(name, dict(params), bool(passed), margin, detail)
        self.checks.append(result)
        return result

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.checks.extend(results)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def by_name(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for c in self.checks:
            tally = out.setdefault(c.name, [0, 0])
            tally[0 if c.passed else 1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}

    def summary(self) -> dict:
        return {
            "title": self.title,
            "total": len(self.checks),
            "failed": len(self.failures),
            "by_check": {k: {"passed": p, "failed": f} for k, (p, f) in self.by_name().items()},
            "failures": [c.row() for c in self.failures[:50]],
        }

    def to_csv(self) -> str:
        return rows_to_csv([c.row() for c in self.checks], ["check", "params", "passed", "margin", "detail"])


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in columns})
    return buf.getvalue()


def write_outputs(out_dir: str | Path | None, stem: str, csv_text: str, summary: dict) -> None:
    if out_dir is None:
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{stem}.csv").write_text(csv_text)
    (out / f"{stem}.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
