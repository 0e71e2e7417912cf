"""Random instance and configuration generators shared by the tests."""

from __future__ import annotations

import math

import numpy as np

from transitloc.model import DemandPoint, Instance, Segment, make_instance
from transitloc.geometry import arc_point


def random_instance(rng, m_max=8, coord=10.0, w_max=5.0, ell_max=5.0, k_max=10.0, m_min=1):
    m = int(rng.integers(m_min, m_max + 1))
    pts = [
        (float(rng.uniform(-coord, coord)), float(rng.uniform(-coord, coord)), float(rng.uniform(1e-3, w_max)))
        for _ in range(m)
    ]
    ell = float(rng.uniform(1e-3, ell_max))
    k = float(rng.uniform(1.0, k_max))
    return make_instance(pts, ell, k)


def integer_instance(rng, m_max=8, span=3, ell_max=5):
    """Small integer instances: lots of coordinate ties and exact boundaries."""
    m = int(rng.integers(1, m_max + 1))
    pts = [(int(rng.integers(-span, span + 1)), int(rng.integers(-span, span + 1)), int(rng.integers(1, 4))) for _ in range(m)]
    return make_instance(pts, float(rng.integers(1, ell_max + 1)), float(rng.choice([1, 2, 5, 10])))


def boundary_point(rng, x, e, r, spread=10.0):
    """A demand location with |x - a|_1 = |e - a|_1 + r, or None if the draw misses.

    One coordinate is drawn at random and the other solved for; the
    rectilinear gap is monotone piecewise-linear in each coordinate.
    """
    u, v = e[0] - x[0], e[1] - x[1]
    if rng.random() < 0.5:
        a1 = float(rng.uniform(x[0] - spread, e[0] + spread))
        target = r - (abs(x[0] - a1) - abs(e[0] - a1))
        if abs(target) >= v:
            return None
        return (a1, (x[1] + e[1] + target) / 2)
    a2 = float(rng.uniform(x[1] - spread, e[1] + spread))
    target = r - (abs(x[1] - a2) - abs(e[1] - a2))
    if abs(target) >= u:
        return None
    return ((x[0] + e[0] + target) / 2, a2)


def left_boundary_point(rng, x, e, r, spread=10.0):
    """Boundary point left of the facility; exists only for steep segments."""
    u, v = e[0] - x[0], e[1] - x[1]
    target = r + u
    if target >= v:
        return None
    return (float(x[0] - rng.uniform(0.1, spread)), (x[1] + e[1] + target) / 2)


def canonical_config(rng, theta_range=(0.0, math.pi / 2), theta=None, m_max=10, boundary=True):
    """Random canonical segment plus demand points, some on the region boundary."""
    ell = float(rng.uniform(0.5, 10.0))
    k = float(rng.uniform(1.0, 10.0))
    x = (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)))
    th = float(rng.uniform(*theta_range)) if theta is None else theta
    e = arc_point(x, th, ell)
    r = ell / k
    pts = []
    for _ in range(int(rng.integers(1, m_max + 1))):
        pts.append(DemandPoint(float(rng.uniform(-15, 15)), float(rng.uniform(-15, 15)), float(rng.uniform(0.1, 5))))
    if boundary:
        for _ in range(int(rng.integers(0, 4))):
            make = left_boundary_point if rng.random() < 0.3 else boundary_point
            a = make(rng, x, e, r)
            if a is not None:
                pts.append(DemandPoint(a[0], a[1], float(rng.uniform(0.1, 5))))
    return Instance(tuple(pts), ell, k), Segment(e, x), th


def generic(values, ref, gap=1e-6):
    return bool(np.min(np.abs(np.asarray(values) - ref)) > gap)


def horizontal_trial(rng, tol=1e-9):
    """One generic random horizontal-shift check, or None if the draw is degenerate.

    Returns (prediction, actual delta', actual delta'', lambda).
    """
    from transitloc.objective import evaluate, predict_delta_horizontal, safe_radius_horizontal, shift_horizontal

    inst, seg, _ = canonical_config(rng)
    c = inst.coords
    if not (generic(c[:, 0], seg.facility[0]) and generic(c[:, 0], seg.entrance[0])):
        return None
    lam = 0.5 * safe_radius_horizontal(inst, seg, tol)
    if lam <= 1e-9:
        return None
    pred = predict_delta_horizontal(inst, seg, lam, tol)
    f0 = evaluate(inst, seg)
    # primed = leftward shift, double-primed = rightward
    return pred, evaluate(inst, shift_horizontal(seg, -lam)) - f0, evaluate(inst, shift_horizontal(seg, lam)) - f0, lam


MIXED_RANGES = {
    "below": (0.05, math.pi / 4 - 0.05),
    "above": (math.pi / 4 + 0.05, math.pi / 2 - 0.05),
    "on": None,
}


def mixed_trial(rng, regime, tol=1e-9):
    """One generic random mixed-shift check in the given regime, or None."""
    from transitloc.objective import evaluate, predict_delta_mixed, shift_mixed
    from transitloc.solver import safe_radius_mixed

    rng_theta = MIXED_RANGES[regime]
    inst, seg, theta = canonical_config(rng, theta_range=rng_theta or (0, 1), theta=None if rng_theta else math.pi / 4)
    c = inst.coords
    if not (generic(c[:, 0], seg.facility[0]) and generic(c[:, 1], seg.entrance[1])):
        return None
    s = safe_radius_mixed(inst, seg)
    if regime == "below":
        s = min(s, math.pi / 4 - theta)
    elif regime == "above":
        s = min(s, theta - math.pi / 4)
    s = min(s, theta, math.pi / 2 - theta)
    if s <= 1e-7:
        return None
    pred = predict_delta_mixed(inst, seg, theta, theta - s, theta + s, tol)
    lam1, beta1, lam2, beta2 = pred.steps
    f0 = evaluate(inst, seg)
    d1 = evaluate(inst, shift_mixed(seg, -lam1, -beta1)) - f0
    d2 = evaluate(inst, shift_mixed(seg, lam2, beta2)) - f0
    return pred, d1, d2
