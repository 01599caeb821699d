"""Certificates and search reports: plain records that serialize to canonical JSON."""

from __future__ import annotations

from dataclasses import dataclass, field

PROVEN = "Proven"
REFUTED = "Refuted"
BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class Claim:
    name: str
    holds: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass
class Certificate:
    """A statement, the sub-claims it rests on, and exact evidence."""

    statement: str
    claims: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, name: str, holds: bool, detail: str = "") -> bool:
        self.claims.append(Claim(name, bool(holds), detail))
        return bool(holds)

    @property
    def verdict(self) -> str:
        return PROVEN if self.claims and all(c.holds for c in self.claims) else REFUTED

    def failed(self) -> list:
        return [c for c in self.claims if not c.holds]

    def to_dict(self):
        return {
            "statement": self.statement,
            "verdict": self.verdict,
            "claims": [c.to_dict() for c in self.claims],
            "evidence": self.evidence,
            "notes": list(self.notes),
        }


@dataclass
class SearchReport:
    statement: str
    verdict: str
    nodes_explored: int
    wall_time: float
    details: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self):
        return {
            "statement": self.statement,
            "verdict": self.verdict,
            "nodes_explored": self.nodes_explored,
            # timing is not an exact payload
            "diagnostics": {"wall_time_seconds": round(self.wall_time, 6)},
            "details": self.details,
            "witness": self.witness,
        }
