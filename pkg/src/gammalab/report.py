"""Verdict reports returned by every analysis and verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# status values
OK = "ok"
VACUOUS = "vacuous"
FALSIFICATION = "falsification"
BUDGET_EXHAUSTED = "budget_exhausted"


def jsonable(obj: Any) -> Any:
    """Convert tuples, sets and dataclass-free containers into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()  # numpy scalar
    return obj


@dataclass
class VerdictReport:
    """Outcome of a structural check or theorem verification.

    A false verdict always carries at least one witness.
    """

    verdict: bool
    witnesses: list[dict] = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=dict)
    hypothesis_notes: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    status: str = OK
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.verdict = bool(self.verdict)
        if not self.verdict and not self.witnesses:
            raise ValueError("a false verdict needs a witness")

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFICATION

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "status": self.status,
            "witnesses": jsonable(self.witnesses),
            "counters": jsonable(self.counters),
            "hypothesis_notes": jsonable(self.hypothesis_notes),
            "notes": list(self.notes),
            "details": jsonable(self.details),
        }
