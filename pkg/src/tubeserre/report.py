from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a validation: pass/fail plus failure messages and data."""

    name: str
    ok: bool = True
    failures: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def fail(self, message: str, **details) -> "Report":
        self.ok = False
        self.failures.append(message)
        for k, v in details.items():
            self.details.setdefault(k, v)
        return self

    def require(self, condition: bool, message: str, **details) -> bool:
        if not condition:
            self.fail(message, **details)
        return bool(condition)

    def merge(self, other: "Report") -> "Report":
        if not other.ok:
            self.ok = False
            self.failures.extend(f"{other.name}: {m}" for m in other.failures)
        return self

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "failures": list(self.failures), **self.details}
