"""Result record types shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class ViolationRecord:
    """One falsified (or otherwise notable) instance of a check.

    ``location`` is either an integer n or a ``(prev, next)`` pair.
    ``lhs``/``rhs`` are decimal renderings of the two compared sides,
    exact for integer comparisons. Re-evaluating the check at
    ``location`` with the same parameters reproduces the verdict.
    """

    check_id: str
    location: Any
    lhs: str
    rhs: str
    near_boundary: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        d = {
            "check_id": self.check_id,
            "location": list(self.location) if isinstance(self.location, tuple) else self.location,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "near_boundary": self.near_boundary,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class IntervalReport:
    """Prime count for one open interval (lo, hi), both ends excluded.

    ``found`` may undercount the interval when ``early_exited`` is set;
    it is then still >= required whenever ``satisfied`` holds, so an
    early-exited satisfied report never masquerades as an exact count.
    """

    lo: int
    hi: int
    required: int
    found: int
    witnesses: tuple = ()
    early_exited: bool = False
    satisfied: bool = False
    location: Any = None

    def to_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "required": self.required,
            "found": self.found,
            "witnesses": [int(w) for w in self.witnesses],
            "early_exited": self.early_exited,
            "satisfied": self.satisfied,
            "location": list(self.location) if isinstance(self.location, tuple) else self.location,
        }
