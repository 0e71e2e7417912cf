"""Weighted rectilinear 1-median set and the intersection-point grid."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import TOL
from .errors import EmptyInput
from .model import Instance, Point


@dataclass(frozen=True)
class MedianRectangle:
    x_interval: tuple[float, float]
    y_interval: tuple[float, float]

    def contains(self, p: Point, tol: float = TOL) -> bool:
        (xl, xh), (yl, yh) = self.x_interval, self.y_interval
        return xl - tol <= p[0] <= xh + tol and yl - tol <= p[1] <= yh + tol

    @property
    def corner(self) -> Point:
        return (self.x_interval[0], self.y_interval[0])


@dataclass(frozen=True)
class IntersectionPoints:
    all: tuple[Point, ...]
    in_median: tuple[Point, ...]


def weighted_coordinate_median(values: Sequence[float], weights: Sequence[float]) -> tuple[float, float]:
    """Minimizer interval of ``m -> sum w_i |m - v_i|``.

    m is optimal iff the weight strictly below m and the weight strictly
    above m are both at most half the total.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if v.size == 0 or v.shape != w.shape:
        raise EmptyInput("values and weights must be non-empty and of equal length")
    uniq, inv = np.unique(v, return_inverse=True)
    wsum = np.bincount(inv, weights=w)
    total = wsum.sum()
    half = 0.5 * total
    slack = 1e-12 * total
    below = np.concatenate(([0.0], np.cumsum(wsum)[:-1]))
    above = total - below - wsum
    ok = (below <= half + slack) & (above <= half + slack)
    idx = np.flatnonzero(ok)
    return float(uniq[idx[0]]), float(uniq[idx[-1]])


def median_rectangle(instance: Instance) -> MedianRectangle:
    c, w = instance.coords, instance.weights
    return MedianRectangle(weighted_coordinate_median(c[:, 0], w), weighted_coordinate_median(c[:, 1], w))


def median_objective(instance: Instance, m: Point | None = None) -> float:
    """Weighted rectilinear distance sum from ``m`` (default: a median corner)."""
    if m is None:
        m = median_rectangle(instance).corner
    c = instance.coords
    d = np.abs(c[:, 0] - m[0]) + np.abs(c[:, 1] - m[1])
    return float((instance.weights * d).sum())


def intersection_points(instance: Instance, tol: float = TOL) -> IntersectionPoints:
    xs = np.unique(instance.coords[:, 0])
    ys = np.unique(instance.coords[:, 1])
    grid = tuple((float(a), float(b)) for a in xs for b in ys)
    rect = median_rectangle(instance)
    return IntersectionPoints(grid, tuple(p for p in grid if rect.contains(p, tol)))
