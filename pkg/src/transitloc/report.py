"""SolveReport: the structured result printed by the command line."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .captation import captation_partition
from .model import Instance, Point, Solution
from .oracle import OracleResult

AGREEMENT_SLACK = 1e-6


@dataclass(frozen=True)
class OracleSection:
    objective: float
    error_bound: float
    agreement: bool


@dataclass(frozen=True)
class SolveReport:
    facility: Point
    entrance: Point
    objective: float
    captured: tuple[int, ...]
    anchor: Point
    orientation: str
    condition: str
    oracle: Optional[OracleSection] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("facility", "entrance", "anchor", "captured"):
            d[key] = list(d[key])
        if self.oracle is None:
            del d["oracle"]
        return d

    def to_json(self, pretty: bool = False) -> str:
        # float repr is the shortest string that round-trips, at most 17 significant digits
        return json.dumps(self.to_dict(), indent=2 if pretty else None, sort_keys=pretty, allow_nan=False)

    @classmethod
    def from_dict(cls, d: dict) -> "SolveReport":
        oracle = d.get("oracle")
        return cls(
            facility=tuple(d["facility"]),
            entrance=tuple(d["entrance"]),
            objective=d["objective"],
            captured=tuple(d["captured"]),
            anchor=tuple(d["anchor"]),
            orientation=d["orientation"],
            condition=d["condition"],
            oracle=OracleSection(**oracle) if oracle else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "SolveReport":
        return cls.from_dict(json.loads(text))


def oracle_agrees(objective: float, oracle: OracleResult) -> bool:
    return (
        objective <= oracle.best_objective + oracle.error_bound
        and oracle.best_objective >= objective - AGREEMENT_SLACK
    )


def build_report(instance: Instance, solution: Solution, oracle: Optional[OracleResult] = None) -> SolveReport:
    part = captation_partition(instance, solution.segment)
    section = None
    if oracle is not None:
        section = OracleSection(oracle.best_objective, oracle.error_bound, oracle_agrees(solution.objective, oracle))
    return SolveReport(
        facility=solution.segment.facility,
        entrance=solution.segment.entrance,
        objective=solution.objective,
        captured=part.captured,
        anchor=solution.anchor,
        orientation=solution.orientation,
        condition=solution.condition,
        oracle=section,
    )
