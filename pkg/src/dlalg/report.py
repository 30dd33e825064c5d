"""Residual reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from . import linalg
from .polyring import Poly, nonzero_witness


@dataclass
class Entry:
    condition: str
    indices: tuple
    residual: Any  # Poly or nested tuple of Poly
    witness: Optional[tuple] = None  # (point, value) for the first nonzero component

    @property
    def ok(self) -> bool:
        return linalg.is_zero(self.residual)

    def ensure_witness(self):
        if self.witness is None and not self.ok:
            path, p = linalg.first_nonzero(self.residual)
            pt, val = nonzero_witness(p)
            self.witness = (path, pt, val)
        return self.witness

    def residual_strings(self):
        return linalg.tmap(str, self.residual) if not isinstance(self.residual, Poly) else str(self.residual)


@dataclass
class Report:
    check: str
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, condition: str, indices, residual) -> Entry:
        e = Entry(condition, tuple(indices), residual)
        self.entries.append(e)
        return e

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list:
        return [e for e in self.entries if not e.ok]

    def failed_conditions(self) -> list:
        seen = []
        for e in self.entries:
            if not e.ok and e.condition not in seen:
                seen.append(e.condition)
        return seen

    def first_failure(self) -> Optional[Entry]:
        for e in self.entries:
            if not e.ok:
                return e
        return None

    def conditions(self) -> list:
        seen = []
        for e in self.entries:
            if e.condition not in seen:
                seen.append(e.condition)
        return seen

    def summary(self) -> dict:
        out = {}
        for e in self.entries:
            s = out.setdefault(e.condition, {"evaluated": 0, "failed": 0})
            s["evaluated"] += 1
            if not e.ok:
                s["failed"] += 1
        return out

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"<Report {self.check}: {self.verdict}, {len(self.failures())}/{len(self.entries)} failing>"
