"""Brute-force reference: facility lattice crossed with uniformly spaced angles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadResolution
from .model import Instance, Segment
from .objective import evaluate

DEFAULT_GRID_N = 129
DEFAULT_ANGLE_N = 512


@dataclass(frozen=True)
class OracleResult:
    best_segment: Segment
    best_objective: float
    grid_step: float
    angle_step: float
    error_bound: float


def lattice(lo: float, hi: float, n: int) -> np.ndarray:
    # i / (n - 1) is rounded the same way for n and 2n - 1, so refined lattices nest exactly
    return lo + (hi - lo) * (np.arange(n) / (n - 1))


def brute_force(instance: Instance, grid_n: int = DEFAULT_GRID_N, angle_n: int = DEFAULT_ANGLE_N, rows_per_chunk: int = 8) -> OracleResult:
    """Search every (facility, angle) pair of the lattice over the whole plane.

    The lattice covers the demand bounding box grown by ell on each side.
    The true optimum lies in [best_objective - error_bound, best_objective].
    """
    if grid_n < 2 or angle_n < 4:
        raise BadResolution(f"need grid_n >= 2 and angle_n >= 4, got {grid_n}, {angle_n}")
    c, w = instance.coords, instance.weights
    ell, r = instance.length, instance.transit_time
    lo = c.min(axis=0) - ell
    hi = c.max(axis=0) + ell
    gx = lattice(lo[0], hi[0], grid_n)
    gy = lattice(lo[1], hi[1], grid_n)
    thetas = 2 * math.pi * (np.arange(angle_n) / angle_n)
    dx, dy = ell * np.cos(thetas), ell * np.sin(thetas)

    # (i, theta, m) and (j, theta, m) tables of |e - a| per coordinate
    ex = np.abs(gx[:, None, None] + dx[None, :, None] - c[None, None, :, 0])
    ey = np.abs(gy[:, None, None] + dy[None, :, None] - c[None, None, :, 1])
    direct_x = np.abs(gx[:, None] - c[None, :, 0])
    direct_y = np.abs(gy[:, None] - c[None, :, 1])

    best = (math.inf, 0, 0, 0)
    for start in range(0, grid_n, rows_per_chunk):
        rows = slice(start, min(start + rows_per_chunk, grid_n))
        direct = direct_x[rows, None, :] + direct_y[None, :, :]  # (i, j, m)
        via = ex[rows, None, :, :] + ey[None, :, :, :] + r  # (i, j, theta, m)
        d = np.minimum(direct[:, :, None, :], via)
        total = d @ w  # (i, j, theta)
        flat = int(np.argmin(total))
        val = float(total.flat[flat])
        if val < best[0]:
            i, j, t = np.unravel_index(flat, total.shape)
            best = (val, start + int(i), int(j), int(t))

    _, i, j, t = best
    x = (float(gx[i]), float(gy[j]))
    e = (x[0] + float(dx[t]), x[1] + float(dy[t]))
    grid_step = float(max(hi - lo) / (grid_n - 1))
    angle_step = 2 * math.pi / angle_n
    bound = instance.total_weight * (2 * grid_step + ell * angle_step)
    seg = Segment(e, x)
    return OracleResult(seg, evaluate(instance, seg), grid_step, angle_step, bound)
