"""Uniform check reports with a canonical JSON rendering.

Every verifier returns a CheckReport: a name, an overall verdict, a details
mapping, and a list of entry dicts (counterexamples or certificates).  The
JSON form is canonical (sorted keys, no float anywhere) so identical runs are
byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, is_dataclass, asdict
from fractions import Fraction


def json_ready(value):
    """Recursively convert package values to JSON-encodable ones.

    Fractions become 'p/q' strings, sets become sorted lists, tuples become
    lists; dataclasses are flattened to dicts.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(value, dict):
        return {str(k): json_ready(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [json_ready(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [json_ready(v) for v in value]
    if is_dataclass(value):
        return json_ready(asdict(value))
    if hasattr(value, "to_json_dict"):
        return value.to_json_dict()
    return str(value)


def canonical_json(value) -> str:
    return json.dumps(json_ready(value), sort_keys=True, separators=(",", ": "))


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": json_ready(self.details),
            "entries": json_ready(self.entries),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "CheckReport":
        return cls(
            name=d["name"],
            passed=d["passed"],
            details=d.get("details", {}),
            entries=d.get("entries", []),
        )

    def summary_lines(self) -> list[str]:
        verdict = "PASS" if self.passed else "FAIL"
        lines = [f"[{verdict}] {self.name}"]
        for key in sorted(self.details):
            lines.append(f"  {key}: {json.dumps(json_ready(self.details[key]), sort_keys=True)}")
        for entry in self.entries:
            lines.append(f"  - {json.dumps(json_ready(entry), sort_keys=True)}")
        return lines
