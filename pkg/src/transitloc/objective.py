"""Objective evaluation and the finite-shift perturbation identities.

Segments here are in canonical orientation: the entrance lies up-right of
the facility, e = x + ell * (cos theta, sin theta) with theta in [0, pi/2].
Shifts follow two constructions:

* horizontal: x' = x - (lam, 0), e' = e - (lam, 0) and the mirrored x'', e'';
* mixed: the facility moves horizontally and the entrance vertically so the
  length is kept, x' = x - (lam1, 0), e' = e - (0, beta1) and
  x'' = x + (lam2, 0), e'' = e + (0, beta2).

Both predictions are exact as long as the shift stays below the safe radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .captation import gaps
from .config import TOL, TOL_ANGLE
from .errors import BadAngles, DegeneratePosition, LambdaTooLarge, NotCanonical
from .model import DemandPoint, Instance, Point, Segment

HORIZONTAL = "Horizontal"
VERTICAL = "Vertical"

BELOW_DIAG = "BelowDiag"
ABOVE_DIAG = "AboveDiag"
ON_DIAG = "OnDiag"

QUARTER = math.pi / 4


def travel_distance(a: Point, segment: Segment, ell: float, k: float) -> float:
    x, e = segment.facility, segment.entrance
    direct = abs(x[0] - a[0]) + abs(x[1] - a[1])
    via = abs(e[0] - a[0]) + abs(e[1] - a[1]) + ell / k
    return min(direct, via)


def evaluate_many(instance: Instance, facilities: np.ndarray, entrances: np.ndarray) -> np.ndarray:
    """Objective for a batch of segments given as (n, 2) endpoint arrays."""
    c = instance.coords
    fx = np.asarray(facilities, dtype=float)[:, None, :]
    ex = np.asarray(entrances, dtype=float)[:, None, :]
    direct = np.abs(fx[..., 0] - c[:, 0]) + np.abs(fx[..., 1] - c[:, 1])
    via = np.abs(ex[..., 0] - c[:, 0]) + np.abs(ex[..., 1] - c[:, 1]) + instance.transit_time
    return (np.minimum(direct, via) * instance.weights).sum(axis=-1)


def evaluate(instance: Instance, segment: Segment) -> float:
    return float(evaluate_many(instance, np.array([segment.facility]), np.array([segment.entrance]))[0])


@dataclass(frozen=True)
class WeightAggregates:
    w1: float
    w2: float
    w3: float
    w4: float
    w_plus: float
    w_minus: float
    w_dplus: float
    w_dminus: float
    axis: str

    @property
    def w_a(self) -> float:
        return self.w1 - self.w2 - self.w3 + self.w4

    @property
    def w_b(self) -> float:
        return self.w_plus - self.w_minus + self.w_dplus


@dataclass(frozen=True)
class PerturbationPrediction:
    delta_prime: float
    delta_dprime: float
    aggregates: WeightAggregates
    w_a: Optional[float] = None
    w_b: Optional[float] = None
    d_prime: Optional[float] = None
    d_dprime: Optional[float] = None
    regime: Optional[str] = None
    steps: Optional[tuple[float, float, float, float]] = None  # lam1, beta1, lam2, beta2


def _require_canonical(segment: Segment, tol: float) -> tuple[float, float]:
    u = segment.entrance[0] - segment.facility[0]
    v = segment.entrance[1] - segment.facility[1]
    if u < -tol or v < -tol:
        raise NotCanonical(f"entrance {segment.entrance} is not up-right of facility {segment.facility}")
    return u, v


def _require_generic(values: np.ndarray, ref: float, what: str, tol: float) -> None:
    if values.size and np.min(np.abs(values - ref)) <= tol:
        raise DegeneratePosition(f"a demand coordinate ties {what} = {ref!r}")


def _quadrants(coords: np.ndarray, anchor: Point) -> np.ndarray:
    right = coords[:, 0] >= anchor[0]
    up = coords[:, 1] >= anchor[1]
    return np.where(up, np.where(right, 1, 2), np.where(right, 4, 3))


def weight_aggregates(instance: Instance, segment: Segment, axis: str = HORIZONTAL, tol: float = TOL) -> WeightAggregates:
    """Weight sums over the index sets used by the shift identities.

    Quadrants are taken relative to the facility; ``axis`` selects whether
    captured points are split by their first coordinate against e1
    (horizontal) or their second against e2 (vertical).
    """
    _require_canonical(segment, tol)
    col = 0 if axis == HORIZONTAL else 1
    c, w = instance.coords, instance.weights
    split = segment.entrance[col]
    _require_generic(c[:, col], split, f"e{col + 1}", tol)

    g = gaps(instance, segment)
    interior = g > tol
    boundary = np.abs(g) <= tol
    captured = interior | boundary
    q = _quadrants(c, segment.facility)
    above = c[:, col] > split
    below = c[:, col] < split
    bnd = boundary & (q != 2)

    def total(mask):
        return float(w[mask].sum())

    return WeightAggregates(
        w1=total((q == 1) & ~captured),
        w2=total((q == 2) & ~interior),
        w3=total(q == 3),
        w4=total((q == 4) & ~captured),
        w_plus=total(interior & above),
        w_minus=total(interior & below),
        w_dplus=total(bnd & above),
        w_dminus=total(bnd & below),
        axis=axis,
    )


def safe_radius_horizontal(instance: Instance, segment: Segment, tol: float = TOL) -> float:
    """Half the distance to the nearest event of a joint horizontal shift.

    Events are coordinate crossings of x1 or e1 and sign changes of the
    captation gap of non-boundary points (its slope is at most 2 in magnitude).
    """
    c = instance.coords
    x1, e1 = segment.facility[0], segment.entrance[0]
    dist = np.concatenate((np.abs(c[:, 0] - x1), np.abs(c[:, 0] - e1)))
    g = gaps(instance, segment)
    slope = np.abs(np.sign(x1 - c[:, 0]) - np.sign(e1 - c[:, 0]))
    movable = (np.abs(g) > tol) & (slope > 0)
    if movable.any():
        dist = np.concatenate((dist, np.abs(g[movable]) / slope[movable]))
    return 0.5 * float(dist.min())


def predict_delta_horizontal(instance: Instance, segment: Segment, lam: float, tol: float = TOL) -> PerturbationPrediction:
    _require_canonical(segment, tol)
    c = instance.coords
    _require_generic(c[:, 0], segment.facility[0], "x1", tol)
    _require_generic(c[:, 0], segment.entrance[0], "e1", tol)
    safe = safe_radius_horizontal(instance, segment, tol)
    if not 0 < lam < safe:
        raise LambdaTooLarge(f"lambda={lam!r} must lie in (0, {safe!r})")
    ag = weight_aggregates(instance, segment, HORIZONTAL, tol)
    base = ag.w1 - ag.w2 - ag.w3 + ag.w4 + ag.w_plus - ag.w_minus
    delta_prime = (base + ag.w_dplus - ag.w_dminus) * lam
    delta_dprime = (-base - ag.w_dplus - ag.w_dminus) * lam
    return PerturbationPrediction(delta_prime, delta_dprime, ag)


def shift_horizontal(segment: Segment, lam: float) -> Segment:
    (e1, e2), (x1, x2) = segment.entrance, segment.facility
    return Segment((e1 + lam, e2), (x1 + lam, x2))


def mixed_steps(ell: float, theta: float, theta_p: float, theta_pp: float) -> tuple[float, float, float, float]:
    """(lam1, beta1, lam2, beta2) of the length-preserving mixed shifts."""
    lam1 = ell * (math.cos(theta_p) - math.cos(theta))
    beta1 = ell * (math.sin(theta) - math.sin(theta_p))
    lam2 = ell * (math.cos(theta) - math.cos(theta_pp))
    beta2 = ell * (math.sin(theta_pp) - math.sin(theta))
    return lam1, beta1, lam2, beta2


def mixed_regime(theta: float, theta_p: float, theta_pp: float) -> str:
    if theta_pp <= QUARTER:
        return BELOW_DIAG
    if theta_p >= QUARTER:
        return ABOVE_DIAG
    if abs(theta - QUARTER) <= 1e-12:
        return ON_DIAG
    raise BadAngles("theta' and theta'' straddle pi/4 while theta != pi/4")


def segment_angle(segment: Segment) -> float:
    return math.atan2(segment.entrance[1] - segment.facility[1], segment.entrance[0] - segment.facility[0])


def predict_delta_mixed(
    instance: Instance,
    segment: Segment,
    theta: float,
    theta_p: float,
    theta_pp: float,
    tol: float = TOL,
) -> PerturbationPrediction:
    if not 0 < theta_p < theta < theta_pp <= math.pi / 2:
        raise BadAngles(f"need 0 < theta' < theta < theta'' <= pi/2, got {theta_p}, {theta}, {theta_pp}")
    _require_canonical(segment, tol)
    if abs(segment_angle(segment) - theta) > 1e-9:
        raise BadAngles("theta does not match the segment direction")
    c = instance.coords
    _require_generic(c[:, 0], segment.facility[0], "x1", tol)
    _require_generic(c[:, 1], segment.entrance[1], "e2", tol)
    regime = mixed_regime(theta, theta_p, theta_pp)
    lam1, beta1, lam2, beta2 = mixed_steps(instance.length, theta, theta_p, theta_pp)

    ag = weight_aggregates(instance, segment, VERTICAL, tol)
    wdp, wdm = ag.w_dplus, ag.w_dminus
    if regime == BELOW_DIAG:
        d_prime = -wdm * beta1 + wdp * (lam1 - beta1)
        d_dprime = -wdm * lam2
    elif regime == ABOVE_DIAG:
        d_prime = -wdm * beta1
        d_dprime = -wdm * lam2 + wdp * (beta2 - lam2)
    else:
        d_prime = -wdm * beta1 + wdp * (lam1 - beta1)
        d_dprime = -wdm * lam2 + wdp * (beta2 - lam2)

    # Boundary points left of the facility are counted in w2 as if they kept
    # the direct route; the entrance moves vertically, so they may switch to
    # the line instead.  Both corrections are <= 0.
    g = gaps(instance, segment)
    q2_bnd = (np.abs(g) <= tol) & (_quadrants(c, segment.facility) == 2)
    if q2_bnd.any():
        w = instance.weights[q2_bnd]
        up = c[q2_bnd, 1] > segment.entrance[1]
        via_p = np.where(up, beta1, -beta1)
        via_pp = np.where(up, -beta2, beta2)
        d_prime += float((w * (np.minimum(-lam1, via_p) + lam1)).sum())
        d_dprime += float((w * (np.minimum(lam2, via_pp) - lam2)).sum())

    w_a, w_b = ag.w_a, ag.w_b
    return PerturbationPrediction(
        delta_prime=w_a * lam1 + w_b * beta1 + d_prime,
        delta_dprime=-w_a * lam2 - w_b * beta2 + d_dprime,
        aggregates=ag,
        w_a=w_a,
        w_b=w_b,
        d_prime=d_prime,
        d_dprime=d_dprime,
        regime=regime,
        steps=(lam1, beta1, lam2, beta2),
    )


def shift_mixed(segment: Segment, lam: float, beta: float) -> Segment:
    """x + (lam, 0), e + (0, beta); negative values give the primed shift."""
    (e1, e2), (x1, x2) = segment.entrance, segment.facility
    return Segment((e1, e2 + beta), (x1 + lam, x2))


@dataclass(frozen=True)
class AngleCheck:
    holds: bool
    w_a: float
    w_b: float


def angle_condition_ii(instance: Instance, segment: Segment, tol: float = TOL, tol_angle: float = TOL_ANGLE) -> AngleCheck:
    """Stationarity of a coordinate-pinned segment: tan(theta) = -w_b / w_a, w_b > 0 > w_a.

    Uses vertical aggregates, i.e. the facility's second and the entrance's
    first coordinate are the pinned ones.
    """
    ag = weight_aggregates(instance, segment, VERTICAL, tol)
    w_a, w_b = ag.w_a, ag.w_b
    if not (w_b > 0 and w_a < 0):
        return AngleCheck(False, w_a, w_b)
    t = math.tan(segment_angle(segment))
    return AngleCheck(abs(t + w_b / w_a) <= tol_angle * max(1.0, abs(t)), w_a, w_b)


def swap_axes(instance: Instance, segment: Segment) -> tuple[Instance, Segment]:
    """Mirror across the main diagonal; keeps canonical orientation."""
    pts = [DemandPoint(p.y, p.x, p.w) for p in instance.points]
    e, x = segment.entrance, segment.facility
    return instance.with_points(pts), Segment((e[1], e[0]), (x[1], x[0]))
