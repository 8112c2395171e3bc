"""Report bundles serialized as versioned JSON plus one CSV per table."""

from __future__ import annotations

import csv
import json
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .closed_form import NormalizedEigenvalue

SCHEMA = 1
_PLACEHOLDER = re.compile(r'"\\u0000(\d+)\\u0000"')
PROVENANCE = ("CITED", "TRIVIAL", "DERIVED")


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool
    provenance: str = "DERIVED"

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"provenance must be one of {PROVENANCE}")
        self.passed = bool(self.passed)


@dataclass
class ReportBundle:
    command: str
    parameters: dict = field(default_factory=dict)
    tables: dict[str, list[dict]] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list)

    def check(self, name, expected, actual, passed, provenance="DERIVED") -> bool:
        self.checks.append(Check(name, expected, actual, passed, provenance))
        return bool(passed)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "parameters": self.parameters,
            "tables": self.tables,
            "checks": [
                {"name": c.name, "expected": c.expected, "actual": c.actual, "pass": c.passed, "provenance": c.provenance}
                for c in self.checks
            ],
            "artifacts": sorted(Path(a).name for a in self.artifacts),
            "all_passed": self.all_passed,
        }

    def write(self, outdir) -> list[Path]:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        written = []
        stem = self.command.replace(" ", "_")
        for name in sorted(self.tables):
            path = outdir / f"{stem}_{name}.csv"
            write_csv(path, self.tables[name])
            self.artifacts.append(str(path))
            written.append(path)
        path = outdir / f"{stem}.json"
        self.artifacts.append(str(path))
        path.write_text(dumps(self.to_dict()) + "\n")
        written.append(path)
        return written


def _fmt(x: float) -> str | None:
    return format(x, ".17g") if math.isfinite(x) else None


def _prepare(obj, floats: list):
    """Replace floats by placeholders so they can be printed with 17 digits."""
    if isinstance(obj, NormalizedEigenvalue):
        return {"symbolic": obj.symbolic(), "value": _prepare(obj.value, floats)}
    if isinstance(obj, Fraction):
        return _prepare(float(obj), floats) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        floats.append(float(obj))
        return f"\x00{len(floats) - 1}\x00"
    if isinstance(obj, complex):
        return {"re": _prepare(obj.real, floats), "im": _prepare(obj.imag, floats)}
    if isinstance(obj, dict):
        return {str(k): _prepare(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v, floats) for v in obj]
    if isinstance(obj, np.ndarray):
        return _prepare(obj.tolist(), floats)
    if isinstance(obj, os.PathLike):
        return str(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, floats with 17 significant digits, non-finite as null."""
    floats: list[float] = []
    text = json.dumps(_prepare(obj, floats), sort_keys=True, indent=2)
    return _PLACEHOLDER.sub(lambda m: _fmt(floats[int(m.group(1))]) or "null", text)


def _cell(v):
    if isinstance(v, NormalizedEigenvalue):
        return v.symbolic()
    if isinstance(v, (float, np.floating)):
        return _fmt(float(v)) or "nan"
    return v


def write_csv(path, rows: list[dict]) -> None:
    if not rows:
        Path(path).write_text("")
        return
    header = list(rows[0])
    for r in rows[1:]:
        header.extend(k for k in r if k not in header)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k, "")) for k in header})
