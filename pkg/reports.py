"""Result records shared by the executable checks and the selftest suites."""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """
    Outcome of an exhaustive or bounded check.

    Args:
        name: Short identifier of the check
        checked: Number of instances examined
        failures: Human-readable description of every failing instance
        details: Optional per-instance records (verified instances, counts, ...)
    """

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: list[Any] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": list(self.failures),
        }

    def summary(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)})"
        return f"{self.name}: {status}, {self.checked} checked"
