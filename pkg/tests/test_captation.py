import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from transitloc.captation import (
    BOUNDARY,
    INSIDE,
    INTERIOR,
    OUTSIDE,
    RegionCase,
    captation_partition,
    gap,
    member_closed_form,
    member_definitional,
    region_boundary,
    region_params,
)
from transitloc.errors import NotCanonical
from transitloc.geometry import arc_point
from transitloc.model import Segment, make_instance

E, X = (3.0, 4.0), (0.0, 0.0)


@pytest.mark.parametrize(
    "a, g, status",
    [((0.0, 6.0), 0.0, BOUNDARY), ((4.0, 4.0), 6.0, INTERIOR), ((-10.0, -10.0), -8.0, OUTSIDE)],
)
def test_membership_examples(a, g, status):
    assert gap(a, E, X, 5.0, 5.0) == g
    assert member_definitional(a, E, X, 5.0, 5.0) == status


def test_region_params_steep():
    p = region_params(E, X, 5.0, 5.0)
    assert (p.h_minus, p.h_plus, p.v_minus, p.v_plus, p.c) == (4.0, 1.0, 4.0, 0.0, 4.0)
    assert p.case == RegionCase.DIAGONAL_LOW


def test_region_params_other_cases():
    assert region_params((4.0, 3.0), X, 5.0, 5.0).case == RegionCase.DIAGONAL_HIGH
    d = 5 / math.sqrt(2)
    assert region_params((d, d), X, 5.0, 5.0).case == RegionCase.MIDDLE


def test_not_canonical():
    with pytest.raises(NotCanonical):
        region_params((-3.0, 4.0), X, 5.0, 5.0)


coord = st.floats(-20, 20, allow_nan=False)


@given(
    st.tuples(coord, coord),
    st.tuples(st.floats(-5, 5), st.floats(-5, 5)),
    st.floats(0, math.pi / 2),
    st.floats(0.1, 10),
    st.floats(1, 10),
)
def test_closed_form_matches_definition(a, x, theta, ell, k):
    e = arc_point(x, theta, ell)
    assume(abs(gap(a, e, x, ell, k)) > 1e-6)
    d = member_definitional(a, e, x, ell, k)
    c = member_closed_form(a, e, x, ell, k)
    assert c == (INSIDE if d == INTERIOR else OUTSIDE)


@given(st.integers(0, 10_000), st.floats(1, 5), st.floats(1, 5))
def test_captured_set_grows_with_k(seed, k, factor):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-10, 10, size=(6, 2))
    inst = make_instance([(a, b, 1.0) for a, b in pts], 3.0, k)
    seg = Segment(arc_point((0.0, 0.0), 0.7, 3.0), (0.0, 0.0))
    lo = set(captation_partition(inst, seg).captured)
    hi = set(captation_partition(inst.with_speedup(k * factor), seg).captured)
    assert lo <= hi


def test_partition_example():
    inst = make_instance([(0, 6, 1), (4, 4, 2), (-10, -10, 1)], 5, 5)
    part = captation_partition(inst, Segment(E, X))
    assert (part.interior, part.boundary, part.outside) == ((1,), (0,), (2,))
    assert part.captured == (0, 1)


@pytest.mark.parametrize("e", [(3.0, 4.0), (4.0, 3.0), (5 / math.sqrt(2), 5 / math.sqrt(2))])
def test_boundary_polyline_lies_on_boundary(e):
    line = region_boundary(e, X, 5.0, 5.0, reach=30.0)
    assert len(line) >= 3
    for p in line:
        assert abs(gap(p, e, X, 5.0, 5.0)) <= 1e-9
