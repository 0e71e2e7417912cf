"""Exact solver over the finite endpoint families.

For a fixed segment angle the objective is, per captation assignment, a
convex piecewise-linear function of the facility whose kinks lie on the
fundamental lines through x or through e.  Hence some optimum has
(x1 or e1 on a demand abscissa) and (x2 or e2 on a demand ordinate), which
gives four one-parameter families: facility on a grid point, entrance on a
grid point, and the two mixed pinning patterns.  Along each family every
coordinate is an affine function of cos(theta) or sin(theta), so between
breakpoints the objective is A + B cos(theta) + C sin(theta) and can be
minimized in closed form.

Everything runs in canonical orientation (entrance in Q1, facility in Q3 of
the anchor); the other three orientations are handled by reflection.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .config import TOL, TOL_THETA
from .errors import EmptyDomain
from .geometry import diagonal_angles, orientation_reflection, reflect_orientation
from .median import intersection_points, median_rectangle
from .model import (
    COORDINATE_PINNED,
    DEGENERATE,
    GRID_ENDPOINT,
    ORIENTATIONS,
    Instance,
    Point,
    Segment,
    Solution,
)
from .objective import evaluate, evaluate_many

FACILITY_AT_GRID = "FacilityAtGrid"
ENTRANCE_AT_GRID = "EntranceAtGrid"
PINNED_PAIR = "PinnedPair"

HALF_PI = math.pi / 2
QUARTER = math.pi / 4


@dataclass(frozen=True)
class CandidateFamily:
    """Segments x(theta) = x0 + xc cos(theta) + xs sin(theta), same for e.

    ``pins`` records what is held fixed: a grid point for the first two
    kinds, ``("x1e2", x1, e2)`` or ``("x2e1", x2, e1)`` for pinned pairs.
    """

    kind: str
    pins: tuple
    x0: Point
    xc: Point
    xs: Point
    e0: Point
    ec: Point
    es: Point
    theta_lo: float = 0.0
    theta_hi: float = HALF_PI

    def endpoints(self, theta) -> tuple[np.ndarray, np.ndarray]:
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        cos, sin = np.cos(th)[:, None], np.sin(th)[:, None]
        x = np.asarray(self.x0) + np.asarray(self.xc) * cos + np.asarray(self.xs) * sin
        e = np.asarray(self.e0) + np.asarray(self.ec) * cos + np.asarray(self.es) * sin
        return x, e

    def segment(self, theta: float) -> Segment:
        x, e = self.endpoints(theta)
        return Segment((float(e[0, 0]), float(e[0, 1])), (float(x[0, 0]), float(x[0, 1])))

    def coordinate_laws(self):
        """(c0, cc, cs, axis) for the four moving or fixed coordinates x1, x2, e1, e2."""
        return [
            (self.x0[0], self.xc[0], self.xs[0], 0),
            (self.x0[1], self.xc[1], self.xs[1], 1),
            (self.e0[0], self.ec[0], self.es[0], 0),
            (self.e0[1], self.ec[1], self.es[1], 1),
        ]

    def with_domain(self, lo: float, hi: float) -> "CandidateFamily":
        return CandidateFamily(self.kind, self.pins, self.x0, self.xc, self.xs, self.e0, self.ec, self.es, lo, hi)


def facility_family(p: Point, ell: float) -> CandidateFamily:
    return CandidateFamily(FACILITY_AT_GRID, (p,), p, (0.0, 0.0), (0.0, 0.0), p, (ell, 0.0), (0.0, ell))


def entrance_family(p: Point, ell: float) -> CandidateFamily:
    return CandidateFamily(ENTRANCE_AT_GRID, (p,), p, (-ell, 0.0), (0.0, -ell), p, (0.0, 0.0), (0.0, 0.0))


def pinned_family(pattern: str, x_pin: float, e_pin: float, ell: float) -> CandidateFamily:
    """``x1e2``: x1 = x_pin, e2 = e_pin.  ``x2e1``: x2 = x_pin, e1 = e_pin."""
    if pattern == "x1e2":
        base = (x_pin, e_pin)
        return CandidateFamily(PINNED_PAIR, (pattern, x_pin, e_pin), base, (0.0, 0.0), (0.0, -ell), base, (ell, 0.0), (0.0, 0.0))
    if pattern == "x2e1":
        base = (e_pin, x_pin)
        return CandidateFamily(PINNED_PAIR, (pattern, x_pin, e_pin), base, (-ell, 0.0), (0.0, 0.0), base, (0.0, 0.0), (0.0, ell))
    raise ValueError(f"unknown pinning pattern {pattern!r}")


def _interval_le(c0: float, cc: float, cs: float, bound: float) -> Optional[tuple[float, float]]:
    """Sub-interval of [0, pi/2] where c0 + cc cos + cs sin <= bound."""
    slack = bound - c0
    if cc == 0 and cs == 0:
        return (0.0, HALF_PI) if slack >= 0 else None
    if cc != 0:
        q = slack / cc
        if cc > 0:  # cos <= q
            if q >= 1:
                return 0.0, HALF_PI
            return None if q < 0 else (math.acos(q), HALF_PI)
        if q <= 0:  # cos >= q
            return 0.0, HALF_PI
        return None if q > 1 else (0.0, math.acos(q))
    q = slack / cs
    if cs > 0:  # sin <= q
        if q >= 1:
            return 0.0, HALF_PI
        return None if q < 0 else (0.0, math.asin(q))
    if q <= 0:  # sin >= q
        return 0.0, HALF_PI
    return None if q > 1 else (math.asin(q), HALF_PI)


def feasible_domain(family: CandidateFamily, anchor: Point, tol: float = TOL) -> Optional[tuple[float, float]]:
    """Angles keeping x in the closed Q3 and e in the closed Q1 of the anchor."""
    lo, hi = 0.0, HALF_PI
    laws = family.coordinate_laws()
    for idx, (c0, cc, cs, axis) in enumerate(laws):
        t = anchor[axis]
        if idx < 2:
            iv = _interval_le(c0, cc, cs, t + tol)
        else:
            iv = _interval_le(-c0, -cc, -cs, -t + tol)
        if iv is None:
            return None
        lo, hi = max(lo, iv[0]), min(hi, iv[1])
        if lo > hi:
            return None
    return lo, hi


def _crossings(c0: float, cc: float, cs: float, values: np.ndarray) -> np.ndarray:
    """Angles in [0, pi/2] where the coordinate law hits any of ``values``."""
    if cc != 0:
        q = (values - c0) / cc
        q = q[(q >= 0) & (q <= 1)]
        return np.arccos(q)
    if cs != 0:
        q = (values - c0) / cs
        q = q[(q >= 0) & (q <= 1)]
        return np.arcsin(q)
    return np.empty(0)


def _dedupe(angles: np.ndarray, tol_theta: float = TOL_THETA) -> np.ndarray:
    a = np.sort(np.asarray(angles, dtype=float))
    if a.size == 0:
        return a
    keep = np.concatenate(([True], np.diff(a) > tol_theta))
    return a[keep]


def _structural_breakpoints(instance: Instance, family: CandidateFamily) -> np.ndarray:
    lo, hi = family.theta_lo, family.theta_hi
    tilde, bar = diagonal_angles(instance.speedup)
    pts = [np.array([lo, hi, QUARTER, tilde, bar])]
    c = instance.coords
    for c0, cc, cs, axis in family.coordinate_laws():
        pts.append(_crossings(c0, cc, cs, np.unique(c[:, axis])))
    a = np.concatenate(pts)
    a = a[(a >= lo) & (a <= hi)]
    return _dedupe(a)


def _law_arrays(family: CandidateFamily):
    x0, xc, xs = (np.asarray(v, dtype=float) for v in (family.x0, family.xc, family.xs))
    e0, ec, es = (np.asarray(v, dtype=float) for v in (family.e0, family.ec, family.es))
    return x0, xc, xs, e0, ec, es


def _route_coefficients(instance: Instance, family: CandidateFamily, mids: np.ndarray):
    """Per (piece, point) coefficients (P, Q, R) of direct and transit distance.

    Each absolute value is resolved with its sign at the piece midpoint.
    """
    x0, xc, xs, e0, ec, es = _law_arrays(family)
    c = instance.coords
    x, e = family.endpoints(mids)
    sx = np.sign(x[:, None, :] - c[None, :, :])
    se = np.sign(e[:, None, :] - c[None, :, :])
    direct = ((sx * (x0 - c)).sum(-1), (sx * xc).sum(-1), (sx * xs).sum(-1))
    via = ((se * (e0 - c)).sum(-1) + instance.transit_time, (se * ec).sum(-1), (se * es).sum(-1))
    return direct, via


def _sinusoid_roots(P: np.ndarray, Q: np.ndarray, R: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Roots of P + Q cos + R sin strictly inside each (lo, hi) row."""
    H = np.hypot(Q, R)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(H > 0, -P / np.where(H > 0, H, 1.0), 2.0)
    ok = np.abs(ratio) <= 1
    if not ok.any():
        return np.empty(0)
    phi = np.arctan2(R, Q)[ok]
    delta = np.arccos(ratio[ok])
    lo_b = np.broadcast_to(lo[:, None], P.shape)[ok]
    hi_b = np.broadcast_to(hi[:, None], P.shape)[ok]
    out = []
    for base in (phi - delta, phi + delta):
        for shift in (-2 * math.pi, 0.0, 2 * math.pi):
            r = base + shift
            out.append(r[(r > lo_b) & (r < hi_b)])
    return np.concatenate(out)


def breakpoints(instance: Instance, family: CandidateFamily) -> list[float]:
    """Angles where the algebraic form of the objective along ``family`` may change.

    Includes the domain ends, pi/4, the two diagonal angles, coordinate
    crossings of the moving endpoint coordinates with demand coordinates and
    the captation flips of each demand point, all clipped to the domain.
    """
    return [float(t) for t in _all_breakpoints(instance, family)]


def _all_breakpoints(instance: Instance, family: CandidateFamily) -> np.ndarray:
    if family.theta_lo > family.theta_hi:
        raise EmptyDomain("family has an empty angle domain")
    base = _structural_breakpoints(instance, family)
    if base.size < 2:
        return base
    lo, hi = base[:-1], base[1:]
    direct, via = _route_coefficients(instance, family, 0.5 * (lo + hi))
    P, Q, R = (d - v for d, v in zip(direct, via))
    roots = _sinusoid_roots(P, Q, R, lo, hi)
    return _dedupe(np.concatenate((base, roots)))


@dataclass(frozen=True)
class PiecewiseSinusoid:
    """f(theta) = A + B cos(theta) + C sin(theta) on each (lo, hi, A, B, C) piece."""

    pieces: tuple[tuple[float, float, float, float, float], ...]

    def __call__(self, theta: float) -> float:
        for lo, hi, A, B, C in self.pieces:
            if lo <= theta <= hi:
                return A + B * math.cos(theta) + C * math.sin(theta)
        raise ValueError(f"theta={theta} outside the fitted domain")


def fit_pieces(instance: Instance, family: CandidateFamily) -> PiecewiseSinusoid:
    bps = _all_breakpoints(instance, family)
    if bps.size < 2:
        theta = float(bps[0]) if bps.size else family.theta_lo
        bps = np.array([theta, theta])
    lo, hi = bps[:-1], bps[1:]
    mids = 0.5 * (lo + hi)
    direct, via = _route_coefficients(instance, family, mids)
    cos, sin = np.cos(mids)[:, None], np.sin(mids)[:, None]
    d_val = direct[0] + direct[1] * cos + direct[2] * sin
    v_val = via[0] + via[1] * cos + via[2] * sin
    use_via = v_val < d_val
    w = instance.weights
    coeffs = [(np.where(use_via, v, d) * w).sum(-1) for d, v in zip(direct, via)]
    return PiecewiseSinusoid(
        tuple(
            (float(a), float(b), float(A), float(B), float(C))
            for a, b, A, B, C in zip(lo, hi, coeffs[0], coeffs[1], coeffs[2])
        )
    )


def piece_candidates(A: float, B: float, C: float, lo: float, hi: float) -> list[float]:
    """Endpoints plus the interior minimizer of A + B cos + C sin, if any."""
    out = [lo, hi] if hi > lo else [lo]
    if B == 0 and C == 0:
        return out
    theta = math.atan2(C, B) + math.pi
    for t in (theta - 2 * math.pi, theta, theta + 2 * math.pi):
        if lo < t < hi:
            out.append(t)
    return sorted(out)


def minimize_piece(
    A: float,
    B: float,
    C: float,
    lo: float,
    hi: float,
    raw_evaluator: Callable[[float], float],
) -> tuple[float, float]:
    """Minimize one sinusoid piece, scoring candidates with ``raw_evaluator``.

    Ties go to the smaller angle.
    """
    best_t, best_v = None, math.inf
    for t in piece_candidates(A, B, C, lo, hi):
        v = raw_evaluator(t)
        if v < best_v:
            best_t, best_v = t, v
    return best_t, best_v


@dataclass(frozen=True)
class FamilyOptimum:
    segment: Segment
    objective: float
    theta: float
    family: CandidateFamily = field(repr=False)


def optimize_family(instance: Instance, family: CandidateFamily) -> FamilyOptimum:
    if family.theta_lo > family.theta_hi:
        raise EmptyDomain("family has an empty angle domain")
    fitted = fit_pieces(instance, family)
    cands = []
    for lo, hi, A, B, C in fitted.pieces:
        cands.extend(piece_candidates(A, B, C, lo, hi))
    thetas = np.unique(np.asarray(cands, dtype=float))
    x, e = family.endpoints(thetas)
    values = evaluate_many(instance, x, e)
    i = int(np.argmin(values))
    theta = float(thetas[i])
    return FamilyOptimum(family.segment(theta), float(values[i]), theta, family)


def enumerate_families(instance: Instance, anchor: Point, tol: float = TOL) -> list[CandidateFamily]:
    """All feasible families for ``anchor`` in canonical orientation.

    Grid points must lie in the closed disk of radius ell around the anchor
    (facility in Q3, entrance in Q1); the angle domain keeps both endpoints
    in their closed quadrants.
    """
    ell = instance.length
    xs = np.unique(instance.coords[:, 0])
    ys = np.unique(instance.coords[:, 1])
    t1, t2 = anchor
    reach = ell + tol
    fams: list[CandidateFamily] = []

    def add(fam: CandidateFamily) -> None:
        dom = feasible_domain(fam, anchor, tol)
        if dom is not None:
            fams.append(fam.with_domain(*dom))

    for a in xs:
        for b in ys:
            p = (float(a), float(b))
            if math.hypot(a - t1, b - t2) > reach:
                continue
            if a <= t1 + tol and b <= t2 + tol:
                add(facility_family(p, ell))
            if a >= t1 - tol and b >= t2 - tol:
                add(entrance_family(p, ell))
    for a in xs[xs <= t1 + tol]:
        for b in ys[ys >= t2 - tol]:
            add(pinned_family("x1e2", float(a), float(b), ell))
    for b in ys[ys <= t2 + tol]:
        for a in xs[xs >= t1 - tol]:
            add(pinned_family("x2e1", float(b), float(a), ell))
    return fams


@dataclass(frozen=True)
class _Candidate:
    objective: float
    segment: Segment
    anchor: Point
    orientation: str
    kind: str

    def key(self):
        (e1, e2), (x1, x2) = self.segment.entrance, self.segment.facility
        rounded = tuple(round(v, 9) + 0.0 for v in (x1, x2, e1, e2))
        return (self.objective, rounded, (x1, x2, e1, e2), self.orientation, self.anchor, self.kind)


def _solve_task(args) -> Optional[_Candidate]:
    instance, anchor, orientation, tol = args
    refl_inst, back = reflect_orientation(instance, orientation)
    fwd = orientation_reflection(orientation)
    t = fwd(anchor)
    best: Optional[_Candidate] = None
    for fam in enumerate_families(refl_inst, t, tol):
        opt = optimize_family(refl_inst, fam)
        seg = Segment(back(opt.segment.entrance), back(opt.segment.facility))
        cand = _Candidate(opt.objective, seg, anchor, orientation, fam.kind)
        if best is None or cand.key() < best.key():
            best = cand
    return best


def on_grid(p: Point, instance: Instance, tol: float = TOL) -> bool:
    c = instance.coords
    return bool(np.min(np.abs(c[:, 0] - p[0])) <= tol and np.min(np.abs(c[:, 1] - p[1])) <= tol)


def solve(instance: Instance, tol: float = TOL, workers: Optional[int] = None) -> Solution:
    """Optimal segment over every median anchor and every quadrant orientation.

    With ``workers`` > 1 the (anchor, orientation) tasks run in a process
    pool; the reduction uses a total order so the result does not depend on
    scheduling.
    """
    if instance.length == 0:
        m = median_rectangle(instance).corner
        seg = Segment(m, m)
        return Solution(seg, evaluate(instance, seg), m, ORIENTATIONS[0], DEGENERATE)

    anchors = sorted(intersection_points(instance, tol).in_median)
    tasks = [(instance, t, o, tol) for t in anchors for o in ORIENTATIONS]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_task, tasks))
    else:
        results = [_solve_task(task) for task in tasks]
    found = [r for r in results if r is not None]
    best = min(found, key=_Candidate.key)
    seg = best.segment
    on_i = on_grid(seg.facility, instance, tol) or on_grid(seg.entrance, instance, tol)
    condition = GRID_ENDPOINT if on_i else COORDINATE_PINNED
    return Solution(seg, evaluate(instance, seg), best.anchor, best.orientation, condition)


def solve_all(instances: Sequence[Instance], tol: float = TOL) -> list[Solution]:
    return [solve(inst, tol) for inst in instances]


def safe_radius_mixed(instance: Instance, segment: Segment, pattern: str = "x2e1") -> float:
    """Half the angular distance from the segment to the nearest other breakpoint.

    The family is the one through ``segment`` that keeps the ``pattern``
    coordinates fixed; breakpoints at the current angle itself (boundary
    points, pi/4) are skipped.
    """
    (e1, e2), (x1, x2) = segment.entrance, segment.facility
    fam = pinned_family(pattern, x2, e1, instance.length) if pattern == "x2e1" else pinned_family(pattern, x1, e2, instance.length)
    theta = math.atan2(e2 - x2, e1 - x1)
    dist = np.abs(_all_breakpoints(instance, fam) - theta)
    dist = dist[dist > TOL_THETA]
    return 0.5 * float(dist.min()) if dist.size else 0.0
