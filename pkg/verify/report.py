"""
Verification reports and their json, csv and table renderings.

Renderings are bit-stable: keys are sorted, floats are written with "%.15e"
and wall times stay out unless explicitly requested.
"""
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from utils.common import format_float

SCHEMA_VERSION = 1
LIBRARY_VERSION = "1.0.0"


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    details: Dict = field(default_factory=dict)
    informational: bool = False
    time: Optional[float] = None

    def __post_init__(self):
        self.residual = float(self.residual)
        self.tolerance = math.inf if self.informational else float(self.tolerance)

    @property
    def passed(self) -> bool:
        if self.informational:
            return not math.isnan(self.residual)
        return math.isfinite(self.residual) and self.residual <= self.tolerance

    @classmethod
    def failure(cls, name: str, tolerance: float, reason: str, **details) -> "Check":
        return cls(name, math.nan, tolerance, {"reason": reason, **details})


@dataclass
class VerificationReport:
    suite: str
    config: Dict
    checks: List[Check] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    runtime: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, timings: bool = False) -> Dict:
        checks = []
        for check in self.checks:
            entry = {
                "name": check.name,
                "residual": check.residual,
                "tolerance": check.tolerance,
                "pass": check.passed,
                "details": check.details,
            }
            if check.informational:
                entry["informational"] = True
            if timings and check.time is not None:
                entry["time"] = check.time
            checks.append(entry)
        document = {
            "schema_version": SCHEMA_VERSION,
            "library_version": LIBRARY_VERSION,
            "suite": self.suite,
            "config": self.config,
            "checks": checks,
            "warnings": sorted(set(self.warnings)),
            "passed": self.passed,
        }
        if timings and self.runtime is not None:
            document["runtime_ms"] = 1000 * self.runtime
        return document

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "name": [c.name for c in self.checks],
                "residual": [c.residual for c in self.checks],
                "tolerance": [c.tolerance for c in self.checks],
                "pass": [c.passed for c in self.checks],
            }
        )


def _stable(value):
    """
    Floats as "%.15e" strings, containers recursively, numpy scalars unwrapped.
    """
    if isinstance(value, dict):
        return {str(k): _stable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, complex):
        return [format_float(value.real), format_float(value.imag)]
    if value is None or isinstance(value, str):
        return value
    return str(value)


def render_json(report: VerificationReport, timings: bool = False) -> str:
    return json.dumps(_stable(report.to_dict(timings)), sort_keys=True, indent=2) + "\n"


def render_csv(report: VerificationReport) -> str:
    frame = report.to_frame()
    frame["residual"] = frame["residual"].map(format_float)
    frame["tolerance"] = frame["tolerance"].map(format_float)
    frame["pass"] = frame["pass"].map(lambda passed: "true" if passed else "false")
    return frame.to_csv(index=False, lineterminator="\n")


def render_table(report: VerificationReport) -> str:
    frame = report.to_frame()
    if frame.empty:
        return f"{report.suite}: no checks\n"
    frame["residual"] = frame["residual"].map(lambda x: f"{x:.3e}")
    frame["tolerance"] = frame["tolerance"].map(lambda x: f"{x:.1e}")
    frame["pass"] = frame["pass"].map(lambda passed: "PASS" if passed else "FAIL")
    summary = (
        f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed"
    )
    return frame.to_string(index=False) + "\n" + summary + "\n"


def emit_report(
    report: VerificationReport,
    format: str = "table",
    out: Optional[str] = None,
    timings: bool = False,
) -> str:
    """
    Renders the report and writes it to out, or to stdout when out is None.
    """
    if format == "json":
        text = render_json(report, timings)
    elif format == "csv":
        text = render_csv(report)
    elif format == "table":
        text = render_table(report)
    else:
        raise ValueError(f"unknown format {format}, expected json, csv or table")
    if out is None:
        sys.stdout.write(text)
        return text
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OSError(f"cannot write report to {path}: {e.strerror or e}") from e
    return text
