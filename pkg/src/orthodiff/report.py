"""Line-oriented pass/fail reports shared by operator checks and identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import format_rat
from .poly import MPoly


@dataclass
class Entry:
    label: str
    residual: object  # MPoly or Fraction for exact checks, str for numeric ones
    ok: bool

    def to_text(self) -> str:
        if isinstance(self.residual, MPoly):
            body = "ZERO" if self.residual.is_zero() else str(self.residual)
        elif isinstance(self.residual, (int, Fraction)):
            body = "ZERO" if self.residual == 0 else format_rat(self.residual)
        else:
            body = str(self.residual)
        return f"{self.label}: {body}"


def exact_entry(label: str, residual) -> Entry:
    if isinstance(residual, MPoly):
        return Entry(label, residual, residual.is_zero())
    return Entry(label, residual, residual == 0)


@dataclass
class Report:
    title: str
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0  # never serialized, keeps text output reproducible

    @property
    def passed(self) -> bool:
        return bool(self.entries) and all(e.ok for e in self.entries)

    def add(self, entry: Entry) -> None:
        self.entries.append(entry)

    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]

    def to_text(self) -> str:
        lines = [f"# {self.title}"]
        lines += [f"# {note}" for note in self.notes]
        lines += [e.to_text() for e in self.entries]
        lines.append(f"RESULT: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def merge(title: str, reports) -> Report:
    out = Report(title)
    for r in reports:
        out.notes.append(f"{r.title}: {'PASS' if r.passed else 'FAIL'}")
        for e in r.entries:
            out.add(Entry(f"[{r.title}] {e.label}", e.residual, e.ok))
        out.elapsed += r.elapsed
    return out
