"""Result containers and deterministic file output.

All writers are atomic (temp file + rename) and produce byte-identical
output for identical inputs: floats are rendered with Python's shortest
round-trip repr and JSON keys are sorted.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Optional, Sequence


@dataclass
class VerdictReport:
    """Outcome of a single inequality or identity check.

    The invariant is: passed == (lhs <= rhs + tolerance) for kind
    "inequality" and passed == (|lhs - rhs| <= tolerance) for kind
    "identity".  For chains, lhs/rhs echo the link with the smallest
    margin, so the invariant still characterizes the whole chain.
    ``expected`` is "pass" unless a check documents a known counterexample.
    """

    theorem: str
    lhs: float
    rhs: float
    lhs_formula: str
    rhs_formula: str
    tolerance: float
    passed: bool
    inputs: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    kind: str = "inequality"
    expected: str = "pass"

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhs_formula": self.lhs_formula,
            "rhs_formula": self.rhs_formula,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "expected": self.expected,
            "inputs": self.inputs,
            "details": self.details,
        }

    def json_line(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @property
    def surprising(self) -> bool:
        """True when the outcome contradicts the expectation flag."""
        return self.passed != (self.expected == "pass")

    def __repr__(self):
        tag = "PASS" if self.passed else "FAIL"
        if self.expected == "fail":
            tag += " (unexpected)" if self.passed else " (expected)"
        return f"[{tag}] {self.theorem}: lhs={self.lhs:.6g} rhs={self.rhs:.6g}"


def fmt_float(x) -> str:
    """Shortest round-trip decimal representation."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (int,)):
        return str(x)
    return repr(float(x))


def atomic_write_text(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def config_header_lines(config: Optional[dict], version: str) -> list[str]:
    lines = [f"# version: {version}"]
    if config is not None:
        lines.append("# config: " + json.dumps(config, sort_keys=True))
    return lines


def csv_text(header: Sequence[str], rows: Sequence[Sequence], config: Optional[dict], version: str) -> str:
    lines = config_header_lines(config, version)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def json_text(payload: dict, config: Optional[dict], version: str) -> str:
    doc = {"version": version}
    if config is not None:
        doc["config"] = config
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence], config: Optional[dict], version: str) -> None:
    atomic_write_text(path, csv_text(header, rows, config, version))


def write_json(path: str, payload: dict, config: Optional[dict], version: str) -> None:
    atomic_write_text(path, json_text(payload, config, version))


def write_json_lines(path: str, lines: Sequence[str]) -> None:
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))
