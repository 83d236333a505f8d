"""Pass/fail reports for identity checks, with witnesses on failure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .graded_core import GradedMap, format_scalar, label_str


@dataclass
class Witness:
    element: str
    lhs: Dict[str, str]
    rhs: Dict[str, str]

    def to_json(self) -> Dict[str, Any]:
        return {"element": self.element, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[Witness] = None
    note: str = ""

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    def flag(self, name: str, passed: bool, element: str = "", note: str = "") -> Check:
        w = Witness(element, {}, {}) if element and not passed else None
        return self.add(Check(name, bool(passed), w, note))

    def equal(self, name: str, lhs: GradedMap, rhs: GradedMap) -> Check:
        return self.add(compare(name, lhs, rhs))

    def zero(self, name: str, f: GradedMap) -> Check:
        return self.add(compare(name, f, None))

    def to_json(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "failures": [c.to_json() for c in self.failures],
        }

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
            if c.witness is not None:
                lines.append(f"      at {c.witness.element}: lhs={c.witness.lhs} rhs={c.witness.rhs}")
            if c.note:
                lines.append(f"      {c.note}")
        return "\n".join(lines)


def _column(f: GradedMap, j: int) -> Dict[str, str]:
    return {label_str(f.target.labels[i]): format_scalar(c) for i, c in sorted(f.cols.get(j, {}).items())}


def compare(name: str, lhs: GradedMap, rhs: Optional[GradedMap]) -> Check:
    """Compare two maps (or one map against zero) column by column."""
    if rhs is not None and not lhs.same_shape(rhs):
        return Check(name, False, Witness("<shape>", {"space": f"{lhs.source.name}->{lhs.target.name}"},
                                          {"space": f"{rhs.source.name}->{rhs.target.name}"}))
    rcols = rhs.cols if rhs is not None else {}
    for j in sorted(set(lhs.cols) | set(rcols)):
        if lhs.cols.get(j, {}) != rcols.get(j, {}):
            return Check(name, False, Witness(
                label_str(lhs.source.labels[j]),
                _column(lhs, j),
                _column(rhs, j) if rhs is not None else {},
            ))
    return Check(name, True)
