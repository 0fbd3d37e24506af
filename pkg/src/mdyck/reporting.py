"""Uniform pass/fail reports for the exhaustive verification sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a verification sweep.

    ``checks`` counts individual identities tested; ``failures`` holds
    human-readable counterexample descriptions (a sweep normally stops at
    the first one).
    """

    name: str
    ok: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def merge(self, other: "CheckReport") -> None:
        self.checks += other.checks
        if not other.ok:
            self.ok = False
            self.failures.extend(f"{other.name}: {msg}" for msg in other.failures)

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        head = f"{self.name}: {status} ({self.checks} checks)"
        if self.failures:
            head += "\n  " + "\n  ".join(self.failures)
        return head
