"""Violation records shared by the audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


@dataclass(frozen=True)
class Violation:
    check: str
    ref: str  # the property that failed, in words
    witness: tuple = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.check, "ref": self.ref, "witness": _plain(self.witness), "detail": self.detail}


@dataclass
class AuditReport:
    name: str
    violations: list[Violation] = field(default_factory=list)
    unmet: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    details: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, ref: str, witness=(), detail: str = "") -> None:
        self.violations.append(Violation(check, ref, tuple(witness) if not isinstance(witness, tuple) else witness, detail))

    def expect(self, condition: bool, check: str, ref: str, witness=(), detail: str = "") -> bool:
        if not condition:
            self.add(check, ref, witness, detail)
        return bool(condition)

    def to_dict(self) -> dict:
        return {
            "audit": self.name,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "hypothesis_unmet": list(self.unmet),
            "stats": _plain(self.stats),
        }
