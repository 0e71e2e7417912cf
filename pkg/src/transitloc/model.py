"""Instance and solution data model, plus validation of raw input."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import (
    BadLength,
    BadPoint,
    BadSpeedup,
    EmptyPoints,
    NonPositiveWeight,
    ValidationError,
)

Point = tuple[float, float]

ORIENTATIONS = ("Q1-Q3", "Q2-Q4", "Q3-Q1", "Q4-Q2")
"""Quadrant-pair labels, entrance quadrant first, facility quadrant second."""

GRID_ENDPOINT = "GridEndpoint"
COORDINATE_PINNED = "CoordinatePinned"
DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class DemandPoint:
    x: float
    y: float
    w: float


@dataclass(frozen=True)
class Instance:
    """Demand points with weights, line length and speed factor.

    Treat as immutable; the numpy views below are read-only.
    """

    points: tuple[DemandPoint, ...]
    length: float
    speedup: float

    @cached_property
    def coords(self) -> np.ndarray:
        arr = np.array([(p.x, p.y) for p in self.points], dtype=float).reshape(-1, 2)
        arr.flags.writeable = False
        return arr

    @cached_property
    def weights(self) -> np.ndarray:
        arr = np.array([p.w for p in self.points], dtype=float)
        arr.flags.writeable = False
        return arr

    @property
    def transit_time(self) -> float:
        """Travel distance through the line, ell / k."""
        return self.length / self.speedup

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def __len__(self) -> int:
        return len(self.points)

    def with_points(self, points: Sequence[DemandPoint]) -> "Instance":
        return Instance(tuple(points), self.length, self.speedup)

    def scaled_weights(self, factor: float) -> "Instance":
        return self.with_points([DemandPoint(p.x, p.y, p.w * factor) for p in self.points])

    def with_speedup(self, k: float) -> "Instance":
        return Instance(self.points, self.length, k)

    def with_length(self, ell: float) -> "Instance":
        return Instance(self.points, ell, self.speedup)

    def to_dict(self) -> dict:
        return {
            "points": [{"x": p.x, "y": p.y, "w": p.w} for p in self.points],
            "length": self.length,
            "k": self.speedup,
        }


@dataclass(frozen=True)
class Segment:
    """Ordered pair (entrance e, facility x); the exit coincides with x."""

    entrance: Point
    facility: Point

    @property
    def euclidean_length(self) -> float:
        return math.hypot(self.entrance[0] - self.facility[0], self.entrance[1] - self.facility[1])

    def is_feasible(self, length: float, tol: float = 1e-9) -> bool:
        return abs(self.euclidean_length - length) <= tol * max(1.0, length)


@dataclass(frozen=True)
class Solution:
    segment: Segment
    objective: float
    anchor: Point
    orientation: str
    condition: str


def _finite(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _parse_point(i: int, raw: Any) -> DemandPoint:
    if isinstance(raw, Mapping):
        try:
            x, y, w = raw["x"], raw["y"], raw.get("w", 1.0)
        except KeyError as exc:
            raise BadPoint(f"points[{i}] is missing field {exc.args[0]!r}") from None
    elif isinstance(raw, Sequence) and not isinstance(raw, str) and len(raw) in (2, 3):
        x, y = raw[0], raw[1]
        w = raw[2] if len(raw) == 3 else 1.0
    else:
        raise BadPoint(f"points[{i}] must be an object {{x, y, w}} or a [x, y, w] list")
    if not (_finite(x) and _finite(y)):
        raise BadPoint(f"points[{i}] has a non-finite or non-numeric coordinate")
    if not _finite(w) or w <= 0:
        raise NonPositiveWeight(f"points[{i}].w must be a finite positive number, got {w!r}")
    return DemandPoint(float(x), float(y), float(w))


def validate_instance(raw: Mapping[str, Any]) -> Instance:
    """Build an Instance from parsed data, raising a ValidationError subclass on bad input.

    Accepted keys: ``points`` (list of ``{x, y, w}`` objects or ``[x, y, w]`` lists),
    ``length`` and ``k`` (``speedup`` is accepted as an alias).
    Duplicate points are kept as separate entries.
    """
    if not isinstance(raw, Mapping):
        raise ValidationError("instance must be an object with fields points, length, k")
    points = raw.get("points")
    if points is None or (isinstance(points, Sequence) and len(points) == 0):
        raise EmptyPoints("points: at least one demand point is required")
    if not isinstance(points, Sequence) or isinstance(points, str):
        raise BadPoint("points must be a list")
    parsed = tuple(_parse_point(i, p) for i, p in enumerate(points))

    length = raw.get("length")
    if not _finite(length) or length < 0:
        raise BadLength(f"length must be a finite number >= 0, got {length!r}")
    k = raw.get("k", raw.get("speedup"))
    if not _finite(k) or k < 1:
        raise BadSpeedup(f"speedup k must be a finite number >= 1, got {k!r}")
    return Instance(parsed, float(length), float(k))


def make_instance(points: Sequence[Sequence[float]], length: float, k: float) -> Instance:
    """Shorthand used by tests and examples: points as (x, y[, w]) tuples."""
    return validate_instance({"points": [list(p) for p in points], "length": length, "k": k})
