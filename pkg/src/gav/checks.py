"""Named pass/fail checks with optional witnesses, shared by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: str | None = None
    provenance: str = "computed"

    def to_dict(self):
        d = {"name": self.name, "passed": self.passed, "detail": self.detail,
             "provenance": self.provenance}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class CheckReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def add(self, *args, **kwargs) -> Check:
        c = args[0] if args and isinstance(args[0], Check) else Check(*args, **kwargs)
        self.checks.append(c)
        return c

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def to_dict(self):
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


class ValidationReport(CheckReport):
    pass
