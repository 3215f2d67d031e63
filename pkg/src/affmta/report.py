"""Machine-readable verification reports.

A report is ``{claim, regime, cases: [{input, status, trace}]}``.  Wall-clock
data goes into a separate ``metadata`` block which :meth:`VerifyReport.canonical_json`
leaves out, so identical runs give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

VERIFIED = "verified"
FLAGGED = "flagged"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"

_RANK = {VERIFIED: 0, INCONCLUSIVE: 1, FLAGGED: 2, FAILED: 3}


def worst(statuses) -> str:
    out = VERIFIED
    for s in statuses:
        if _RANK[s] > _RANK[out]:
            out = s
    return out


@dataclass
class Step:
    label: str
    status: str = VERIFIED
    before: str = ""
    after: str = ""
    note: str = ""

    def to_dict(self) -> dict:
        d = {"label": self.label, "status": self.status}
        if self.before:
            d["before"] = self.before
        if self.after:
            d["after"] = self.after
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Case:
    input: str
    status: str = VERIFIED
    trace: list = field(default_factory=list)

    def add(self, step: Step) -> Step:
        self.trace.append(step)
        self.status = worst([self.status, step.status])
        return step

    def first_divergence(self) -> Step | None:
        for s in self.trace:
            if s.status != VERIFIED:
                return s
        return None

    def to_dict(self) -> dict:
        return {"input": self.input, "status": self.status, "trace": [s.to_dict() for s in self.trace]}


@dataclass
class VerifyReport:
    claim: str
    regime: str
    cases: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return worst(c.status for c in self.cases)

    def add(self, case: Case) -> Case:
        self.cases.append(case)
        return case

    def count(self, status: str) -> int:
        return sum(1 for c in self.cases if c.status == status)

    def summary(self) -> str:
        parts = [f"{s}={self.count(s)}" for s in (VERIFIED, FLAGGED, FAILED, INCONCLUSIVE) if self.count(s)]
        return f"{self.claim} [{self.regime}]: {self.status} ({', '.join(parts) or 'no cases'})"

    def to_dict(self, with_metadata: bool = False) -> dict:
        d = {
            "claim": self.claim,
            "regime": self.regime,
            "status": self.status,
            "cases": [c.to_dict() for c in self.cases],
        }
        if with_metadata:
            d["metadata"] = self.metadata
        return d

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_dict(with_metadata=True), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def exit_code(status: str) -> int:
    return {VERIFIED: 0, INCONCLUSIVE: 0, FLAGGED: 2, FAILED: 3}[status]
