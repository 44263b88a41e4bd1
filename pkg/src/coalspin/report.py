"""Relation results and suite reports, with JSON and text renderings.

JSON schema (stable field names)::

    {"suite": str, "pass": bool, "samples": {...} | null,
     "relations": [{"id": str, "pass": bool, "residual_terms": int,
                    "residual": str, "millis": float | null, "samples": int | null,
                    "diagnostic": bool, "note": str}],
     "diagnostics": {str: str}}

``millis`` is ``null`` unless timings were requested, which keeps default
reports byte-identical across runs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .opalg import Element, dumps


@dataclass
class RelationResult:
    id: str
    passed: bool
    residual_terms: int
    residual: str
    seconds: float
    samples: int | None = None
    diagnostic: bool = False
    anchor: str = ""
    note: str = ""

    @classmethod
    def from_residual(cls, rel_id: str, residual: Element, seconds: float, **kw) -> "RelationResult":
        return cls(
            id=rel_id,
            passed=residual.is_zero(),
            residual_terms=len(residual),
            residual=dumps(residual),
            seconds=seconds,
            **kw,
        )

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "id": self.id,
            "pass": self.passed,
            "residual_terms": self.residual_terms,
            "residual": self.residual,
            "millis": round(self.seconds * 1000, 3) if timings else None,
            "samples": self.samples,
            "diagnostic": self.diagnostic,
            "note": self.note,
        }


@dataclass
class SuiteReport:
    suite: str
    relations: list[RelationResult] = field(default_factory=list)
    samples: dict | None = None
    diagnostics: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        # diagnostics are reported, never gate the suite
        return all(r.passed for r in self.relations if not r.diagnostic)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.relations if not r.passed and not r.diagnostic]

    def get(self, rel_id: str) -> RelationResult:
        for r in self.relations:
            if r.id == rel_id:
                return r
        raise KeyError(rel_id)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "samples": self.samples,
            "relations": [r.to_dict(timings) for r in self.relations],
            "diagnostics": dict(sorted(self.diagnostics.items())),
        }

    def to_text(self, timings: bool = False, residuals: bool = False) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.relations:
            flag = "ok  " if r.passed else ("diag" if r.diagnostic else "FAIL")
            extra = f"  {r.seconds * 1000:.1f} ms" if timings else ""
            samples = f"  samples={r.samples}" if r.samples else ""
            lines.append(f"  [{flag}] {r.id}  residual_terms={r.residual_terms}{samples}{extra}")
            if r.note:
                lines.append(f"         {r.note}")
            if residuals and not r.passed:
                lines.extend("         " + ln for ln in r.residual.splitlines())
        for key, val in sorted(self.diagnostics.items()):
            lines.append(f"  * {key}: {val}")
        return "\n".join(lines) + "\n"


def reports_to_json(reports: list[SuiteReport], timings: bool = False) -> str:
    payload = {
        "pass": all(r.passed for r in reports),
        "suites": [r.to_dict(timings) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
