import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyspanner.cones import (
    ConeLabel,
    GeneralPositionError,
    SIDE_LEFT,
    SIDE_RIGHT,
    SIDE_WHOLE,
    SubconeRef,
    canonical_triangle,
    ccw_sorted,
    cone_of,
    direction_sector,
    key_compare,
    projection_key,
    split_cone_label,
    subcone_of,
    subcones,
)
from polyspanner.geom import ExactScalar
from polyspanner.scene import Scene

O = (0, 0)


def test_direction_sector_walks_counterclockwise():
    # one representative direction per 60-degree sector
    dirs = [(4, 1), (1, 4), (-4, 1), (-4, -1), (-1, -4), (4, -1)]
    assert [direction_sector(dx, dy) for dx, dy in dirs] == [0, 1, 2, 3, 4, 5]


def test_direction_sector_boundaries_raise():
    for bad in [(1, 0), (-1, 0)]:
        with pytest.raises(GeneralPositionError):
            direction_sector(*bad)
    with pytest.raises(ValueError):
        direction_sector(0, 0)


def test_cone_labels():
    assert str(cone_of(O, (1, 4))) == "C0+"
    assert str(cone_of(O, (-3, -3))) == "C1+"
    assert str(cone_of(O, (4, -3))) == "C2+"
    assert str(cone_of(O, (1, -4))) == "C0-"
    assert str(cone_of(O, (4, 1))) == "C1-"
    assert str(cone_of(O, (-4, 1))) == "C2-"


def test_cone_label_opposite():
    lab = ConeLabel(True, 2)
    assert lab.opposite() == ConeLabel(False, 2)
    assert lab.opposite().opposite() == lab


points = st.tuples(st.integers(-40, 40), st.integers(-40, 40))


@given(points, points)
def test_cone_duality(p, q):
    if p[1] == q[1]:
        return  # shared y puts q on a cone boundary of p
    assert cone_of(p, q) == cone_of(q, p).opposite()


def test_projection_key_values():
    # upward cone: key is twice the height difference
    assert projection_key(O, ConeLabel(True, 0), (1, 4)) == ExactScalar(8)
    # lower-left cone
    assert projection_key(O, ConeLabel(True, 1), (-3, -3)) == ExactScalar(3, 3)
    # membership is enforced
    with pytest.raises(ValueError):
        projection_key(O, ConeLabel(True, 0), (1, -4))


def test_key_compare_orders_by_projection():
    lab = ConeLabel(True, 0)
    near = projection_key(O, lab, (-1, 3))
    far = projection_key(O, lab, (1, 4))
    assert key_compare(lab, (-1, 3), (1, 4)) < 0
    assert near < far


@given(points, points)
def test_key_compare_antisymmetry(p, q):
    if p[1] <= 0 or q[1] <= 0:
        return
    lab = ConeLabel(True, 0)
    try:
        if cone_of(O, p) != lab or cone_of(O, q) != lab:
            return
    except GeneralPositionError:
        return
    assert key_compare(lab, p, q) == -key_compare(lab, q, p)


def test_canonical_triangle_unit_up():
    tri = canonical_triangle(O, (0, 1))
    apex, a, b, m = tri.float_points()
    assert apex == (0.0, 0.0)
    s = 1 / math.sqrt(3)
    assert a[0] == pytest.approx(-s) and a[1] == pytest.approx(1.0)
    assert b[0] == pytest.approx(s) and b[1] == pytest.approx(1.0)
    assert m == (0.0, 1.0)
    assert float(tri.height) == pytest.approx(1.0)


def test_canonical_triangle_requires_positive_cone():
    with pytest.raises(ValueError):
        canonical_triangle(O, (4, 1))  # C1- direction


def test_canonical_triangle_far_side_through_point():
    # far side is horizontal through v; m is its midpoint, above the apex
    tri = canonical_triangle((2, 3), (1, 7))
    _, a, b, m = tri.float_points()
    assert a[1] == b[1] == pytest.approx(7.0)
    assert m[0] == pytest.approx(2.0) and m[1] == pytest.approx(7.0)
    assert a[0] < 1 < b[0]  # v strictly between the far corners
    side = abs(b[0] - a[0])
    assert side == pytest.approx(8 / math.sqrt(3))
    assert float(tri.height) == pytest.approx(4.0)


SPIKE_UP = [(0, 0), (20, 100), (-5, 101)]


def split_scene(extra):
    return Scene(SPIKE_UP + extra, [[0, 1, 2]])


def test_split_cone_label_spike():
    sc = split_scene([(-60, 205), (70, 190)])
    lab = split_cone_label(sc, 0)
    assert lab == ConeLabel(True, 0)
    # free vertices and non-apex corners are unsplit
    assert split_cone_label(sc, 3) is None
    assert split_cone_label(sc, 1) is None


def test_subcone_sides_of_split_cone():
    sc = split_scene([(-60, 205), (70, 190)])
    left = subcone_of(sc, 0, 3)
    right = subcone_of(sc, 0, 4)
    assert left == SubconeRef(0, ConeLabel(True, 0), SIDE_LEFT)
    assert right == SubconeRef(0, ConeLabel(True, 0), SIDE_RIGHT)


def test_subcone_inside_wedge_raises():
    # direction between the two spike edges: hidden behind the obstacle
    sc = split_scene([(3, 150)])
    with pytest.raises(ValueError):
        subcone_of(sc, 0, 3)


def test_subcone_unsplit_is_whole():
    sc = split_scene([(-60, 205)])
    ref = subcone_of(sc, 3, 0)
    assert ref.side == SIDE_WHOLE
    assert ref.apex == 3


def test_subcones_enumeration():
    sc = split_scene([(-60, 205)])
    refs = subcones(sc, 0, positive=True)
    split = [r for r in refs if r.label == ConeLabel(True, 0)]
    assert [r.side for r in split] == [SIDE_RIGHT, SIDE_LEFT]
    whole = [r for r in refs if r.side == SIDE_WHOLE]
    assert len(whole) == 2  # the other two positive cones
    assert len(subcones(sc, 3, positive=False)) == 3


def test_ccw_sorted_within_cone():
    sc = Scene([(0, 0), (3, 14), (-3, 14), (1, 9)])
    out = ccw_sorted(sc, 0, [1, 2, 3])
    angles = [math.atan2(*reversed(sc.ipoint(i))) for i in out]
    assert angles == sorted(angles)
    assert out == [1, 3, 2]


def test_subcone_ref_str():
    ref = SubconeRef(5, ConeLabel(True, 0), SIDE_RIGHT)
    assert str(ref) == "C0+@5/right"
    assert str(SubconeRef(2, ConeLabel(False, 1))) == "C1-@2"
