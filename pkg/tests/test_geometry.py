import math

import numpy as np
from hypothesis import given, settings, strategies as st

from transitloc.geometry import (
    arc_point,
    diagonal_angles,
    l1_dist,
    orientation_reflection,
    quadrant_of,
    reflect_orientation,
)
from transitloc.model import ORIENTATIONS, make_instance

coord = st.floats(-1e3, 1e3, allow_nan=False)
point = st.tuples(coord, coord)


def test_l1_examples():
    assert l1_dist((0, 0), (3, 4)) == 7
    assert l1_dist((-1, 2), (-1, 2)) == 0


def test_quadrant_examples():
    t = (0.0, 0.0)
    assert quadrant_of((1, 1), t) == 1
    assert quadrant_of((-1, 1), t) == 2
    assert quadrant_of((-1, -1), t) == 3
    assert quadrant_of((1, -1), t) == 4
    # axis points go to the larger-coordinate side
    assert quadrant_of(t, t) == 1
    assert quadrant_of((0, -1), t) == 4
    assert quadrant_of((-1, 0), t) == 2


@given(point, point)
def test_quadrants_partition(p, t):
    q = quadrant_of(p, t)
    memberships = [
        p[0] >= t[0] and p[1] >= t[1],
        p[0] < t[0] and p[1] >= t[1],
        p[0] < t[0] and p[1] < t[1],
        p[0] >= t[0] and p[1] < t[1],
    ]
    assert sum(memberships) == 1 and memberships[q - 1]


def test_arc_point_example():
    p = arc_point((1.0, 1.0), math.pi / 2, 2.0)
    assert abs(p[0] - 1.0) < 1e-15 and p[1] == 3.0


def test_diagonal_angles_k1():
    tt, tb = diagonal_angles(1.0)
    assert abs(tt - math.pi / 2) < 1e-15
    assert abs(tb) < 1e-15


@given(st.floats(1.0, 100.0), st.floats(0.01, 100.0))
def test_diagonal_property(k, ell):
    tt, tb = diagonal_angles(k)
    x = (0.0, 0.0)
    e = arc_point(x, tt, ell)
    assert abs((e[1] - x[1]) - (e[0] - x[0]) - ell / k) <= 1e-12 * ell
    e = arc_point(x, tb, ell)
    assert abs((e[0] - x[0]) - (e[1] - x[1]) - ell / k) <= 1e-12 * ell
    assert tb <= math.pi / 4 <= tt


@given(point, point, st.sampled_from(ORIENTATIONS))
def test_reflection_isometry_involution(p, q, o):
    r = orientation_reflection(o)
    assert r(r(p)) == (p[0] + 0.0, p[1] + 0.0)
    assert l1_dist(r(p), r(q)) == l1_dist(p, q)
    assert math.dist(r(p), r(q)) == math.dist(p, q)


def test_reflect_orientation_maps_quadrants():
    inst = make_instance([(1, 2, 1), (-3, 4, 2)], 1, 2)
    for o, expect in zip(ORIENTATIONS, [(1, 2), (-1, 2), (-1, -2), (1, -2)]):
        refl_inst, back = reflect_orientation(inst, o)
        assert tuple(refl_inst.coords[0]) == expect
        assert back(tuple(refl_inst.coords[1])) == (-3.0, 4.0)
        assert np.array_equal(refl_inst.weights, inst.weights)
