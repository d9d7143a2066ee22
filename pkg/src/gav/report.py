"""Command reports with matching text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "inconclusive")
EXIT_CODES = {"pass": 0, "fail": 1, "inconclusive": 2}
EXIT_USAGE = 64
EXIT_DATA = 65


@dataclass
class Section:
    title: str
    body: object = None  # any JSON-compatible value
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return {"title": self.title, "body": self.body, "witnesses": self.witnesses}


@dataclass
class Report:
    command: str
    status: str
    sections: list = field(default_factory=list)
    cited_results: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def section(self, title, body=None, witnesses=None) -> Section:
        s = Section(title, body, dict(witnesses or {}))
        self.sections.append(s)
        return s

    def cite(self, *entries):
        for e in entries:
            if e not in self.cited_results:
                self.cited_results.append(e)

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_dict(self):
        return {"command": self.command, "status": self.status,
                "sections": [s.to_dict() for s in self.sections],
                "cited_results": list(self.cited_results)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["command"], d["status"],
                   [Section(s["title"], s["body"], dict(s.get("witnesses") or {}))
                    for s in d["sections"]],
                   list(d.get("cited_results") or []))


def to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def _text_value(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text_value(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and v:
                sub = _text_value(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].strip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(v):
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def to_text(report: Report) -> str:
    out = [f"{report.status.upper()}  {report.command}"]
    for s in report.sections:
        out.append("")
        out.append(f"== {s.title}")
        if s.body is not None:
            out.extend(_text_value(s.body, 1))
        if s.witnesses:
            out.append("  witnesses:")
            out.extend(_text_value(s.witnesses, 2))
    if report.cited_results:
        out.append("")
        out.append("cited results:")
        for c in report.cited_results:
            out.append(f"  {c['label']}: \"{c['quote']}\"")
    return "\n".join(out) + "\n"


def emit_report(report: Report, mode: str = "text") -> str:
    if mode == "json":
        return to_json(report)
    if mode == "text":
        return to_text(report)
    raise ValueError(f"unknown mode {mode!r}")
