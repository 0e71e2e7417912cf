"""Planar helpers: rectilinear norm, quadrants, arcs and orientation reflections."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ORIENTATIONS, DemandPoint, Instance, Point


def l1_dist(p: Point, q: Point) -> float:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def quadrant_of(p: Point, anchor: Point) -> int:
    """Quadrant index of ``p`` relative to ``anchor``.

    Half-open convention: the anchor itself and points on its right/upper
    axes go to the quadrant with the larger coordinate, so
    Q1 = {p1 >= t1, p2 >= t2}, Q2 = {p1 < t1, p2 >= t2},
    Q3 = {p1 < t1, p2 < t2}, Q4 = {p1 >= t1, p2 < t2}.
    """
    right = p[0] >= anchor[0]
    up = p[1] >= anchor[1]
    if up:
        return 1 if right else 2
    return 4 if right else 3


@dataclass(frozen=True)
class Arc:
    center: Point
    radius: float
    theta_lo: float
    theta_hi: float

    def __post_init__(self):
        if not self.theta_lo <= self.theta_hi:
            raise ValueError("theta_lo must not exceed theta_hi")

    def point(self, theta: float) -> Point:
        return arc_point(self.center, theta, self.radius)


def arc_point(center: Point, theta: float, ell: float) -> Point:
    return (center[0] + ell * math.cos(theta), center[1] + ell * math.sin(theta))


def diagonal_angles(k: float) -> tuple[float, float]:
    """Angles where the entrance offset satisfies |sin - cos| = 1/k.

    Returns ``(theta_tilde, theta_bar)``; the steep point has
    (e2 - x2) - (e1 - x1) = ell/k, the shallow one the mirrored relation.
    """
    half = math.asin(1.0 / (k * math.sqrt(2.0)))
    return math.pi / 4 + half, math.pi / 4 - half


@dataclass(frozen=True)
class Reflection:
    """Coordinate sign flip; an L1 and Euclidean isometry and an involution."""

    sx: int = 1
    sy: int = 1

    def __call__(self, p: Point) -> Point:
        return (self.sx * p[0] + 0.0, self.sy * p[1] + 0.0)

    @property
    def inverse(self) -> "Reflection":
        return self

    @property
    def is_identity(self) -> bool:
        return self.sx == 1 and self.sy == 1


_ORIENTATION_SIGNS = {
    "Q1-Q3": Reflection(1, 1),
    "Q2-Q4": Reflection(-1, 1),
    "Q3-Q1": Reflection(-1, -1),
    "Q4-Q2": Reflection(1, -1),
}


def orientation_reflection(orientation: str) -> Reflection:
    try:
        return _ORIENTATION_SIGNS[orientation]
    except KeyError:
        raise ValueError(f"unknown orientation {orientation!r}; expected one of {ORIENTATIONS}") from None


def reflect_orientation(instance: Instance, orientation: str) -> tuple[Instance, Reflection]:
    """Reflect the instance so that ``orientation`` becomes Q1-Q3.

    Reflections act on coordinates about the origin axes (negation is exact
    in floating point); anchors must be mapped with the same reflection.
    Returns the reflected instance and the map back to original coordinates.
    """
    refl = orientation_reflection(orientation)
    if refl.is_identity:
        return instance, refl
    pts = [DemandPoint(refl.sx * p.x + 0.0, refl.sy * p.y + 0.0, p.w) for p in instance.points]
    return instance.with_points(pts), refl.inverse
