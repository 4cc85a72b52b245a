"""Deterministic JSON reports and the exit-code contract."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from astk import __version__
from astk.algebra.poly import format_coeff

REPORT_V = 1
STATUSES = ("pass", "fail", "undetermined")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNDETERMINED = 0, 1, 2, 3


def _default(obj):
    if isinstance(obj, Fraction):
        return format_coeff(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, default=_default)


def digest(data) -> str:
    raw = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False,
                     default=_default)
    return hashlib.sha256(raw.encode()).hexdigest()


def file_digests(params: dict) -> dict:
    """sha256 of every parameter value that names an existing file."""
    out = {}
    for key, value in sorted(params.items()):
        if isinstance(value, str) and value.endswith(".json"):
            path = Path(value)
            if path.is_file():
                out[key] = hashlib.sha256(path.read_bytes()).hexdigest()
    return out


@dataclass
class Report:
    check: str
    params: dict
    anchor: str
    status: str
    result: dict
    certificates: list = field(default_factory=list)
    timings_ms: dict = field(default_factory=dict)
    version: str = __version__

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def input_digest(self) -> str:
        return digest({"check": self.check, "params": self.params, "version": self.version,
                       "files": file_digests(self.params)})

    def body(self) -> dict:
        return {"report_v": REPORT_V, "check": self.check, "params": self.params,
                "anchor": self.anchor, "status": self.status, "result": self.result,
                "certificates": self.certificates, "version": self.version,
                "input_digest": self.input_digest}

    def to_json(self, timings: bool = True) -> dict:
        out = self.body()
        out["report_digest"] = digest(out)
        if timings:
            out["timings_ms"] = self.timings_ms
        return out

    def dumps(self, timings: bool = True) -> str:
        return dumps(self.to_json(timings))


def combine_status(statuses) -> str:
    statuses = list(statuses)
    if any(s == "fail" for s in statuses):
        return "fail"
    if any(s == "undetermined" for s in statuses):
        return "undetermined"
    return "pass"


def exit_code(status: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "undetermined": EXIT_UNDETERMINED}[status]
