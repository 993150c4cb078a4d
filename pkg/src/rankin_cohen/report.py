"""Verification records and their serialisation."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

__all__ = ["VerificationReport", "relative_error", "dump_reports", "load_reports", "FIELDS"]

FIELDS = ("suite", "identity", "paper_ref", "max_rel_err", "tol", "passed", "wall_time_s", "samples")


def _plain(x):
    """JSON-safe copy: complex -> [re, im], tuples -> lists, numpy scalars -> python."""
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return _plain(x.item())
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


@dataclass
class VerificationReport:
    suite: str
    identity: str
    paper_ref: str
    max_rel_err: float
    tol: float
    passed: bool = field(default=None)
    wall_time_s: float = 0.0
    samples: list = field(default_factory=list)

    def __post_init__(self):
        self.max_rel_err = float(self.max_rel_err)
        self.tol = float(self.tol)
        self.wall_time_s = float(self.wall_time_s)
        ok = bool(math.isfinite(self.max_rel_err) and self.max_rel_err <= self.tol)
        if self.passed is None:
            self.passed = ok
        elif bool(self.passed) != ok:
            raise ValueError("passed must equal max_rel_err <= tol")
        self.passed = ok
        self.samples = _plain(self.samples)

    def to_dict(self):
        d = asdict(self)
        d["max_rel_err"] = _plain(float(self.max_rel_err))
        return d

    @classmethod
    def from_dict(cls, d):
        err = float(d["max_rel_err"])
        samples = d.get("samples", [])
        if isinstance(samples, str):
            samples = json.loads(samples)
        passed = d["passed"]
        if isinstance(passed, str):
            passed = passed.lower() == "true"
        return cls(
            suite=d["suite"],
            identity=d["identity"],
            paper_ref=d["paper_ref"],
            max_rel_err=err,
            tol=float(d["tol"]),
            passed=bool(passed),
            wall_time_s=float(d["wall_time_s"]),
            samples=samples,
        )

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.suite}/{self.identity}: max_rel_err={self.max_rel_err:.3e} tol={self.tol:.1e}"


def relative_error(a, b, floor: float = 0.0) -> float:
    """``|a - b| / max(|a|, |b|, floor)``; 0 when everything vanishes."""
    a, b = complex(a), complex(b)
    denom = max(abs(a), abs(b), floor)
    if denom == 0.0:
        return 0.0
    return abs(a - b) / denom


def dump_reports(reports, path, fmt: str = "json-lines"):
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            if fmt == "json-lines":
                for r in reports:
                    fh.write(json.dumps(r.to_dict(), sort_keys=False) + "\n")
            elif fmt == "csv":
                writer = csv.DictWriter(fh, fieldnames=FIELDS)
                writer.writeheader()
                for r in reports:
                    row = r.to_dict()
                    row["samples"] = json.dumps(row["samples"])
                    row["max_rel_err"] = repr(float(r.max_rel_err))
                    writer.writerow(row)
            else:
                raise ValueError(f"unknown report format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def load_reports(path, fmt: str = "json-lines"):
    path = Path(path)
    with path.open(newline="") as fh:
        if fmt == "json-lines":
            return [VerificationReport.from_dict(json.loads(line)) for line in fh if line.strip()]
        if fmt == "csv":
            return [VerificationReport.from_dict(row) for row in csv.DictReader(fh)]
    raise ValueError(f"unknown report format {fmt!r}")
