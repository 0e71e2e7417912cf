"""Captation region: which demand points prefer the transit line.

``member_definitional`` is the reference test.  The closed form
(``region_params`` / ``member_closed_form``) describes the same region by
half-planes and is used for drawing and cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import TOL
from .errors import NotCanonical
from .model import Instance, Point, Segment

INTERIOR = "Interior"
BOUNDARY = "Boundary"
OUTSIDE = "Outside"
INSIDE = "Inside"


class RegionCase(str, Enum):
    DIAGONAL_LOW = "DiagonalLow"    # steep: x1 <= e1 <= e~1
    MIDDLE = "Middle"
    DIAGONAL_HIGH = "DiagonalHigh"  # shallow: e-1 <= e1 <= x1 + ell


@dataclass(frozen=True)
class RegionParams:
    h_minus: float
    h_plus: float
    v_minus: float
    v_plus: float
    c: float
    case: RegionCase


@dataclass(frozen=True)
class CaptationPartition:
    interior: tuple[int, ...]
    boundary: tuple[int, ...]
    outside: tuple[int, ...]

    @property
    def captured(self) -> tuple[int, ...]:
        """Indices in the closed region (interior and boundary)."""
        return tuple(sorted(self.interior + self.boundary))


def gap(a: Point, e: Point, x: Point, ell: float, k: float) -> float:
    """g = |x - a|_1 - |e - a|_1 - ell/k; non-negative iff a is captured."""
    return (abs(x[0] - a[0]) + abs(x[1] - a[1])) - (abs(e[0] - a[0]) + abs(e[1] - a[1])) - ell / k


def gaps(instance: Instance, segment: Segment) -> np.ndarray:
    c = instance.coords
    x, e = segment.facility, segment.entrance
    direct = np.abs(c[:, 0] - x[0]) + np.abs(c[:, 1] - x[1])
    via = np.abs(c[:, 0] - e[0]) + np.abs(c[:, 1] - e[1])
    return direct - via - instance.transit_time


def member_definitional(a: Point, e: Point, x: Point, ell: float, k: float, tol: float = TOL) -> str:
    g = gap(a, e, x, ell, k)
    if abs(g) <= tol:
        return BOUNDARY
    return INTERIOR if g > 0 else OUTSIDE


def region_params(e: Point, x: Point, ell: float, k: float, tol: float = TOL) -> RegionParams:
    u = e[0] - x[0]
    v = e[1] - x[1]
    if u < -tol or v < -tol:
        raise NotCanonical(f"entrance {e} is not up-right of facility {x}")
    r = ell / k
    s = (e[0] + e[1] + r) / 2
    h_minus = s + (x[1] - x[0]) / 2
    h_plus = (-e[0] + e[1] + r) / 2 + (x[0] + x[1]) / 2
    v_minus = s + (x[0] - x[1]) / 2
    v_plus = (e[0] - e[1] + r) / 2 + (x[0] + x[1]) / 2
    c = s + (x[0] + x[1]) / 2
    if v - u >= r:
        case = RegionCase.DIAGONAL_LOW
    elif u - v >= r:
        case = RegionCase.DIAGONAL_HIGH
    else:
        case = RegionCase.MIDDLE
    return RegionParams(h_minus, h_plus, v_minus, v_plus, c, case)


def member_closed_form(a: Point, e: Point, x: Point, ell: float, k: float, tol: float = TOL) -> str:
    p = region_params(e, x, ell, k, tol)
    a1, a2 = a
    diag = a1 + a2 >= p.c
    if p.case is RegionCase.DIAGONAL_LOW:
        inside = (a1 >= x[0] and a2 >= p.h_plus and diag) or (a1 < x[0] and a2 >= p.h_minus)
    elif p.case is RegionCase.MIDDLE:
        inside = a1 >= p.v_plus and a2 >= p.h_plus and diag
    else:
        inside = (a2 >= x[1] and a1 >= p.v_plus and diag) or (a2 < x[1] and a1 >= p.v_minus)
    return INSIDE if inside else OUTSIDE


def region_boundary(e: Point, x: Point, ell: float, k: float, reach: float) -> list[Point]:
    """Polyline of the region boundary, running ``reach`` past the corners.

    The region is unbounded up and to the right; the returned vertices go
    from its lower/left far end to its upper/right far end.
    """
    p = region_params(e, x, ell, k)
    u, v = e[0] - x[0], e[1] - x[1]
    x1, x2 = x
    far = reach + abs(x1) + abs(x2) + ell
    if p.case is RegionCase.DIAGONAL_LOW:
        pts = [(x1 - far, p.h_minus), (x1, p.h_minus), (x1 + u, p.h_plus), (x1 + far, p.h_plus)]
    elif p.case is RegionCase.MIDDLE:
        pts = [(p.v_plus, x2 + far), (p.v_plus, x2 + v), (x1 + u, p.h_plus), (x1 + far, p.h_plus)]
    else:
        pts = [(p.v_minus, x2 - far), (p.v_minus, x2), (p.v_plus, x2 + v), (p.v_plus, x2 + far)]
    return pts


def captation_partition(instance: Instance, segment: Segment, tol: float = TOL) -> CaptationPartition:
    g = gaps(instance, segment)
    interior = tuple(int(i) for i in np.flatnonzero(g > tol))
    boundary = tuple(int(i) for i in np.flatnonzero(np.abs(g) <= tol))
    outside = tuple(int(i) for i in np.flatnonzero(g < -tol))
    return CaptationPartition(interior, boundary, outside)
