"""Certify which endpoint condition a solver optimum satisfies and probe it locally."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import TOL
from .errors import ClassificationFailed, DegeneratePosition
from .geometry import orientation_reflection, reflect_orientation
from .median import median_rectangle
from .model import COORDINATE_PINNED, DEGENERATE, GRID_ENDPOINT, Instance, Point, Segment, Solution
from .objective import (
    AngleCheck,
    angle_condition_ii,
    evaluate,
    mixed_steps,
    safe_radius_horizontal,
    segment_angle,
    shift_horizontal,
    shift_mixed,
    swap_axes,
)
from .solver import on_grid, pinned_family, safe_radius_mixed

PROBE_STEPS = (1e-3, 1e-6)


@dataclass(frozen=True)
class ClassificationReport:
    condition: str
    endpoint: Optional[str] = None  # "facility" or "entrance" for grid endpoints
    pattern: Optional[str] = None  # "x2e1" or "x1e2" for pinned optima
    angle: Optional[AngleCheck] = None
    probes: tuple[tuple[str, float], ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def min_probe_delta(self) -> float:
        return min((d for _, d in self.probes), default=0.0)


def _pinned(value: float, coords: np.ndarray, tol: float) -> bool:
    return bool(np.min(np.abs(coords - value)) <= tol)


def _grid_endpoint(inst: Instance, seg: Segment, anchor: Point, tol: float) -> Optional[str]:
    ell = inst.length
    (e1, e2), (x1, x2) = seg.entrance, seg.facility
    t1, t2 = anchor
    if on_grid(seg.facility, inst, tol) and x1 <= t1 + tol and x2 <= t2 + tol and math.hypot(x1 - t1, x2 - t2) <= ell + tol:
        return "facility"
    if on_grid(seg.entrance, inst, tol) and e1 >= t1 - tol and e2 >= t2 - tol and math.hypot(e1 - t1, e2 - t2) <= ell + tol:
        return "entrance"
    return None


def _pinned_patterns(inst: Instance, seg: Segment, tol: float) -> list[str]:
    c = inst.coords
    (e1, e2), (x1, x2) = seg.entrance, seg.facility
    out = []
    if _pinned(x2, c[:, 1], tol) and _pinned(e1, c[:, 0], tol):
        out.append("x2e1")
    if _pinned(x1, c[:, 0], tol) and _pinned(e2, c[:, 1], tol):
        out.append("x1e2")
    return out


def _angle_check(inst: Instance, seg: Segment, pattern: str, tol: float) -> Optional[AngleCheck]:
    if pattern == "x1e2":
        inst, seg = swap_axes(inst, seg)
    theta = segment_angle(seg)
    if not 0 < theta < math.pi / 2:
        return None
    try:
        return angle_condition_ii(inst, seg, tol)
    except DegeneratePosition:
        return None


def _family_segment(inst: Instance, seg: Segment, pattern: str, theta: float) -> Segment:
    (e1, e2), (x1, x2) = seg.entrance, seg.facility
    if pattern == "x2e1":
        fam = pinned_family(pattern, x2, e1, inst.length)
    else:
        fam = pinned_family(pattern, x1, e2, inst.length)
    return fam.segment(theta)


def _is_flat(inst: Instance, seg: Segment, pattern: str, f0: float, tol: float) -> bool:
    theta = segment_angle(seg)
    vals = []
    for t in (theta - 1e-7, theta + 1e-7):
        if 0 <= t <= math.pi / 2:
            vals.append(evaluate(inst, _family_segment(inst, seg, pattern, t)))
    return all(abs(v - f0) <= tol for v in vals)


def _rotate(center: Point, p: Point, angle: float) -> Point:
    dx, dy = p[0] - center[0], p[1] - center[1]
    c, s = math.cos(angle), math.sin(angle)
    return (center[0] + c * dx - s * dy, center[1] + s * dx + c * dy)


def _generic_probes(inst: Instance, seg: Segment, f0: float) -> list[tuple[str, float]]:
    ell = inst.length
    e, x = seg.entrance, seg.facility
    out = []
    for h in PROBE_STEPS:
        for j in range(8):
            a = j * math.pi / 4
            d = (h * math.cos(a), h * math.sin(a))
            moved = Segment((e[0] + d[0], e[1] + d[1]), (x[0] + d[0], x[1] + d[1]))
            out.append((f"translate[{h:g},{j}]", evaluate(inst, moved) - f0))
        if ell > 0:
            for sgn in (-1, 1):
                rot = sgn * h / ell
                out.append((f"rotate-e[{h:g},{sgn}]", evaluate(inst, Segment(_rotate(x, e, rot), x)) - f0))
                out.append((f"rotate-x[{h:g},{sgn}]", evaluate(inst, Segment(e, _rotate(e, x, rot))) - f0))
    return out


def _shift_probes(inst: Instance, seg: Segment, f0: float, tol: float) -> list[tuple[str, float]]:
    """Both directions of the horizontal/vertical and mixed shifts, where generic."""
    out = []
    for label, (ii, ss) in (("", (inst, seg)), ("swapped ", swap_axes(inst, seg))):
        (e1, e2), (x1, x2) = ss.entrance, ss.facility
        if not (_pinned(x1, ii.coords[:, 0], tol) or _pinned(e1, ii.coords[:, 0], tol)):
            lam = 0.5 * safe_radius_horizontal(ii, ss, tol)
            if lam > 0:
                for sgn in (-1, 1):
                    out.append((f"{label}translation[{sgn}]", evaluate(ii, shift_horizontal(ss, sgn * lam)) - f0))
        theta = segment_angle(ss)
        if 0 < theta < math.pi / 2 and not (_pinned(x1, ii.coords[:, 0], tol) or _pinned(e2, ii.coords[:, 1], tol)):
            step = 0.5 * safe_radius_mixed(ii, ss, "x2e1")
            if step > 0:
                lo, hi = max(theta - step, 0.0), min(theta + step, math.pi / 2)
                lam1, beta1, lam2, beta2 = mixed_steps(ii.length, theta, lo, hi)
                out.append((f"{label}mixed[-]", evaluate(ii, shift_mixed(ss, -lam1, -beta1)) - f0))
                out.append((f"{label}mixed[+]", evaluate(ii, shift_mixed(ss, lam2, beta2)) - f0))
    return out


def classify_solution(instance: Instance, solution: Solution, tol: float = TOL) -> ClassificationReport:
    """Check the optimum against the endpoint conditions and local shifts.

    Raises ClassificationFailed when no condition holds or when a probe
    improves the objective by more than ``tol``.
    """
    inst, _ = reflect_orientation(instance, solution.orientation)
    fwd = orientation_reflection(solution.orientation)
    seg = Segment(fwd(solution.segment.entrance), fwd(solution.segment.facility))
    anchor = fwd(solution.anchor)
    f0 = evaluate(inst, seg)
    notes: list[str] = []

    endpoint = pattern = angle = None
    if instance.length == 0:
        if not (seg.entrance == seg.facility and median_rectangle(inst).contains(seg.facility, tol)):
            raise ClassificationFailed("zero-length solution is not a median point")
        condition = DEGENERATE
    else:
        endpoint = _grid_endpoint(inst, seg, anchor, tol)
        if endpoint is not None:
            condition = GRID_ENDPOINT
        else:
            condition = None
            patterns = _pinned_patterns(inst, seg, tol)
            for pat in patterns:
                angle = _angle_check(inst, seg, pat, tol)
                if angle is not None and angle.holds:
                    condition, pattern = COORDINATE_PINNED, pat
                    break
            if condition is None:
                flat = [pat for pat in patterns if _is_flat(inst, seg, pat, f0, tol)]
                if not flat:
                    raise ClassificationFailed(f"optimum {solution.segment} satisfies no endpoint condition")
                condition, pattern = DEGENERATE, flat[0]
                notes.append(f"objective is flat along the {flat[0]} family; an equal-valued grid endpoint exists")

    probes = _shift_probes(inst, seg, f0, tol) + _generic_probes(inst, seg, f0)
    worst = min(probes, key=lambda p: p[1], default=None)
    if worst is not None and worst[1] < -tol:
        raise ClassificationFailed(f"probe {worst[0]} improves the optimum by {-worst[1]:.3e}")
    return ClassificationReport(condition, endpoint, pattern, angle, tuple(probes), tuple(notes))
