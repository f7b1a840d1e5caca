"""Pass/fail reports shared by the law and axiom checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class LawResult:
    law: str
    passed: bool
    checked: int
    witness: Any = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed or self.witness is None else f"  witness={self.witness!r}"
        return f"{status} {self.law} ({self.checked} cases){tail}"


@dataclass
class LawReport:
    subject: str
    results: list[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, law: str) -> LawResult:
        for r in self.results:
            if r.law == law:
                return r
        raise KeyError(law)

    def __contains__(self, law: str) -> bool:
        return any(r.law == law for r in self.results)

    def failed(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def extend(self, other: "LawReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(LawResult(prefix + r.law, r.passed, r.checked, r.witness))

    def lines(self) -> list[str]:
        return [f"[{self.subject}] " + r.line() for r in self.results]

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "results": [
                {"law": r.law, "passed": r.passed, "checked": r.checked,
                 "witness": None if r.witness is None else repr(r.witness)}
                for r in self.results
            ],
        }
