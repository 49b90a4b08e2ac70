"""Verdicts, witnesses and audit reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping

from ..mixture_space import Lottery
from ..representation import Ordering
from ..serialization import lottery_to_json, stream_to_json
from ..streams import Stream
from .oracle import MissingComparison, PreferenceOracle


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    FAIL_AT_HORIZON = "FAIL_AT_HORIZON"

    @property
    def failed(self) -> bool:
        return self in (Verdict.FAIL, Verdict.FAIL_AT_HORIZON)


@dataclass(frozen=True)
class Comparison:
    """One oracle query and its answer; ``verdict`` is ``None`` for a missing entry."""

    x: Stream
    y: Stream
    verdict: Ordering | None

    def to_dict(self, anchor: Lottery | None = None) -> dict:
        return {
            "x": stream_to_json(self.x, anchor),
            "y": stream_to_json(self.y, anchor),
            "verdict": None if self.verdict is None else self.verdict.symbol,
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, Lottery):
        return lottery_to_json(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, (list, tuple)):
        return [_jsonable(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(a) for k, a in v.items()}
    return v


@dataclass(frozen=True)
class Witness:
    """The comparisons that jointly exhibit a violation, plus the construction
    parameters (mixture weight, periods, lotteries) that produced them."""

    comparisons: tuple[Comparison, ...]
    details: Mapping[str, Any] = field(default_factory=dict)

    def replay(self, oracle: PreferenceOracle) -> bool:
        """Re-query ``oracle`` and report whether every verdict is reproduced."""
        for c in self.comparisons:
            try:
                v = oracle.compare(c.x, c.y)
            except MissingComparison:
                v = None
            if v != c.verdict:
                return False
        return True

    def to_dict(self, anchor: Lottery | None = None) -> dict:
        return {
            "comparisons": [c.to_dict(anchor) for c in self.comparisons],
            **{k: _jsonable(v) for k, v in self.details.items()},
        }


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    verdict: Verdict
    cases_checked: int = 0
    witness: Witness | None = None
    note: str = ""
    details: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict.failed and self.witness is None:
            raise ValueError(f"{self.axiom}: a failing verdict needs a witness")

    def to_dict(self, anchor: Lottery | None = None) -> dict:
        out: dict[str, Any] = {
            "axiom": self.axiom,
            "verdict": self.verdict.value,
            "cases_checked": self.cases_checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict(anchor)
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = _jsonable(dict(self.details))
        return out


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom results of one audit.

    ``refused`` is set when the anchor fails the interiority gate of an
    infinite-horizon audit; the remaining axioms are then not examined.
    """

    profile: str
    theorem: str
    results: tuple[AxiomResult, ...]
    testbed: Mapping[str, Any] = field(default_factory=dict)
    anchor_check: AxiomResult | None = None
    refused: bool = False
    anchor: Lottery | None = field(default=None, compare=False)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    @property
    def verdicts(self) -> dict[str, Verdict]:
        return {r.axiom: r.verdict for r in self.results}

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(r.axiom for r in self.results if r.verdict.failed)

    @property
    def all_pass(self) -> bool:
        return not self.refused and all(r.verdict is Verdict.PASS for r in self.results)

    @property
    def ok(self) -> bool:
        """No failures and no refusal; NOT_APPLICABLE results are tolerated."""
        return not self.refused and not self.failed

    @property
    def certified(self) -> str | None:
        if not self.ok:
            return None
        return f"hypotheses of the {self.theorem} hold on this testbed"

    def summary(self) -> str:
        lines = [f"profile {self.profile} ({self.theorem})"]
        if self.refused and self.anchor_check is not None:
            lines.append(f"  REFUSED: anchor interiority {self.anchor_check.verdict.value}")
        for r in self.results:
            extra = f"  [{r.note}]" if r.note else ""
            lines.append(f"  {r.axiom:<5} {r.verdict.value:<16} cases={r.cases_checked}{extra}")
        lines.append("  certified: " + (self.certified or "no"))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "profile": self.profile,
            "theorem": self.theorem,
            "testbed": _jsonable(dict(self.testbed)),
            "results": [r.to_dict(self.anchor) for r in self.results],
            "refused": self.refused,
            "certified": self.certified,
        }
        if self.anchor_check is not None:
            out["anchor_check"] = self.anchor_check.to_dict(self.anchor)
        return out
