"""The six pi/3 cones around a vertex, obstacle subcones, bisector keys.

Layout: positive cone 0 opens straight up; walking counterclockwise the
cones alternate positive and negative as (C0+, C2-, C1+, C0-, C2+, C1-).
Cone boundaries therefore lie on lines of slope 0, +sqrt(3), -sqrt(3),
which is exactly why general position bans vertex pairs on lines of
those slopes. The bisector of negative cone i points opposite to the
bisector of positive cone i, and p lies in positive cone i of q iff q
lies in negative cone i of p.

A vertex on an obstacle corner may have one of its cones split by the
two incident boundary edges; the two free angular parts are then
separate "subcones" (side "right" before the wedge in ccw order, side
"left" after it). Everything downstream works per subcone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional

from .geom import ExactScalar, cross, sign, sqrt3_sign


class GeneralPositionError(ValueError):
    """A direction lies exactly on a cone boundary (or equivalent tie)."""


@dataclass(frozen=True, order=True)
class ConeLabel:
    positive: bool
    index: int  # 0, 1 or 2

    def opposite(self) -> "ConeLabel":
        return ConeLabel(not self.positive, self.index)

    def __str__(self) -> str:
        return f"C{self.index}{'+' if self.positive else '-'}"


POSITIVE_LABELS = tuple(ConeLabel(True, i) for i in range(3))
NEGATIVE_LABELS = tuple(ConeLabel(False, i) for i in range(3))

# Sector k covers directions with angle in (60k, 60(k+1)) degrees.
_SECTOR_LABEL = (
    ConeLabel(False, 1),
    ConeLabel(True, 0),
    ConeLabel(False, 2),
    ConeLabel(True, 1),
    ConeLabel(False, 0),
    ConeLabel(True, 2),
)

SIDE_WHOLE = "whole"
SIDE_RIGHT = "right"  # clockwise of the obstacle wedge
SIDE_LEFT = "left"  # counterclockwise of the obstacle wedge


@dataclass(frozen=True, order=True)
class SubconeRef:
    """One free angular region of one cone at one vertex."""

    apex: int
    label: ConeLabel
    side: str = SIDE_WHOLE

    def __str__(self) -> str:
        tail = "" if self.side == SIDE_WHOLE else f"/{self.side}"
        return f"{self.label}@{self.apex}{tail}"


def direction_sector(dx, dy) -> int:
    """Sector 0..5 of a nonzero direction; boundary directions raise."""
    if dx == 0 and dy == 0:
        raise ValueError("zero direction has no cone")
    c0 = sign(dy)  # against boundary ray at 0 degrees
    c1 = sqrt3_sign(dy, -dx)  # against ray at 60 degrees
    c2 = sqrt3_sign(-dy, -dx)  # against ray at 120 degrees
    if c0 == 0 or c1 == 0 or c2 == 0:
        raise GeneralPositionError(
            f"direction ({dx}, {dy}) lies on a cone boundary"
        )
    if c0 > 0:
        if c1 < 0:
            return 0
        return 1 if c2 < 0 else 2
    if c1 > 0:
        return 3
    return 4 if c2 > 0 else 5


def cone_of(apex, p) -> ConeLabel:
    """Cone of apex containing p. Raises on boundary directions."""
    return _SECTOR_LABEL[direction_sector(p[0] - apex[0], p[1] - apex[1])]


def _key_parts(label: ConeLabel, dx, dy):
    """Rational pair (a, b) with doubled bisector projection a + b*sqrt3."""
    if label.positive:
        if label.index == 0:  # bisector (0, 1)
            return 2 * dy, 0
        if label.index == 1:  # bisector (-sqrt3/2, -1/2)
            return -dy, -dx
        return -dy, dx  # bisector (sqrt3/2, -1/2)
    if label.index == 0:  # bisector (0, -1)
        return -2 * dy, 0
    if label.index == 1:  # bisector (sqrt3/2, 1/2)
        return dy, dx
    return dy, -dx  # bisector (-sqrt3/2, 1/2)


def projection_key(apex, label: ConeLabel, p) -> ExactScalar:
    """Doubled projection of p onto the bisector of the labelled cone.

    Doubling keeps the value inside Q(sqrt 3) without introducing
    halves; only comparisons between keys of the same cone matter.
    """
    if cone_of(apex, p) != label:
        raise ValueError(f"point {p} is not in cone {label} of {apex}")
    a, b = _key_parts(label, p[0] - apex[0], p[1] - apex[1])
    return ExactScalar(a, b)


def key_compare(label: ConeLabel, d1, d2) -> int:
    """Exact sign of key(d1) - key(d2) for directions in the same cone."""
    a1, b1 = _key_parts(label, d1[0], d1[1])
    a2, b2 = _key_parts(label, d2[0], d2[1])
    return sqrt3_sign(a1 - a2, b1 - b2)


# --- canonical triangle ---------------------------------------------------

# cos/sin of the rotation taking cone 0 onto cone i (0, 120, 240 degrees),
# as ExactScalar values.
_ROT = (
    (ExactScalar(1), ExactScalar(0)),
    (ExactScalar(Fraction(-1, 2)), ExactScalar(0, Fraction(1, 2))),
    (ExactScalar(Fraction(-1, 2)), ExactScalar(0, Fraction(-1, 2))),
)


def _rotate(cos_t: ExactScalar, sin_t: ExactScalar, x: ExactScalar, y: ExactScalar):
    return (x * cos_t - y * sin_t, x * sin_t + y * cos_t)


@dataclass(frozen=True)
class CanonicalTriangle:
    """Triangle with apex u bounded by the two rays of the positive cone
    containing v and the perpendicular to the cone bisector through v.

    Corner a is on the counterclockwise cone boundary, b on the
    clockwise one, m is the midpoint of side ab (it lies on the
    bisector). Corner coordinates live in Q(sqrt 3) componentwise.
    """

    apex: tuple
    label: ConeLabel
    a: tuple  # (ExactScalar, ExactScalar)
    b: tuple
    m: tuple
    height: ExactScalar  # distance from apex to line ab along the bisector

    def float_points(self):
        def f(pt):
            return (float(pt[0]), float(pt[1]))

        return f(self.apex), f(self.a), f(self.b), f(self.m)


def canonical_triangle(u, v) -> CanonicalTriangle:
    """Canonical triangle of the pair (u, v); v must lie in a positive
    cone of u."""
    label = cone_of(u, v)
    if not label.positive:
        raise ValueError(f"{v} lies in negative cone {label} of {u}")
    cos_t, sin_t = _ROT[label.index]
    dx = ExactScalar.of(v[0] - u[0])
    dy = ExactScalar.of(v[1] - u[1])
    # Pull the direction back into cone 0's frame (rotate by -theta).
    bx, by = _rotate(cos_t, ExactScalar(0) - sin_t, dx, dy)
    h = by
    half = ExactScalar(by.b, Fraction(by.a, 3))  # h / sqrt(3)
    ux = ExactScalar.of(u[0])
    uy = ExactScalar.of(u[1])
    corners = []
    for local in ((ExactScalar(0) - half, h), (half, h), (ExactScalar(0), h)):
        wx, wy = _rotate(cos_t, sin_t, local[0], local[1])
        corners.append((ux + wx, uy + wy))
    return CanonicalTriangle(
        apex=(u[0], u[1]),
        label=label,
        a=corners[0],
        b=corners[1],
        m=corners[2],
        height=h,
    )


# --- obstacle wedges and subcones -----------------------------------------


def obstacle_wedge(scene, vi: int):
    """Directions (d_next, d_prev) of the boundary edges leaving vertex
    vi, or None when vi is not an obstacle corner. The obstacle interior
    near vi spans d_next counterclockwise to d_prev."""
    nb = scene.boundary_neighbors(vi)
    if nb is None:
        return None
    prev_i, next_i = nb
    px, py = scene.ipoint(vi)
    nx, ny = scene.ipoint(next_i)
    qx, qy = scene.ipoint(prev_i)
    return (nx - px, ny - py), (qx - px, qy - py)


def split_cone_label(scene, vi: int) -> Optional[ConeLabel]:
    """The cone of vi split in two by its obstacle wedge, if any.

    A cone splits only when both incident edge directions fall strictly
    inside it and the wedge occupies the middle (d_next clockwise of
    d_prev within the cone). A wedge that covers the cone except for a
    notch between the edges leaves a single free region: not a split.
    """
    w = obstacle_wedge(scene, vi)
    if w is None:
        return None
    dn, dp = w
    try:
        sn = direction_sector(dn[0], dn[1])
        sp = direction_sector(dp[0], dp[1])
    except GeneralPositionError:
        return None  # edge on a cone boundary: treat as non-splitting
    if sn != sp:
        return None
    if cross(dn[0], dn[1], dp[0], dp[1]) <= 0:
        return None
    return _SECTOR_LABEL[sn]


def subcone_of(scene, apex: int, p: int) -> SubconeRef:
    """Subcone of vertex apex containing vertex p.

    Directions strictly inside the obstacle wedge are unreachable by any
    visible vertex and raise ValueError; directions along a wedge edge
    classify with the free region they bound.
    """
    ax, ay = scene.ipoint(apex)
    px, py = scene.ipoint(p)
    dx, dy = px - ax, py - ay
    label = _SECTOR_LABEL[direction_sector(dx, dy)]
    if split_cone_label(scene, apex) != label:
        return SubconeRef(apex, label, SIDE_WHOLE)
    dn, dp = obstacle_wedge(scene, apex)
    c_n = cross(dx, dy, dn[0], dn[1])
    if c_n >= 0:  # at or clockwise of d_next
        return SubconeRef(apex, label, SIDE_RIGHT)
    c_p = cross(dp[0], dp[1], dx, dy)
    if c_p >= 0:  # at or counterclockwise of d_prev
        return SubconeRef(apex, label, SIDE_LEFT)
    raise ValueError(
        f"vertex {p} lies strictly inside the obstacle wedge at vertex {apex}"
    )


def subcones(scene, apex: int, positive: bool) -> list:
    """All subcone refs of one sign at a vertex, in deterministic order."""
    split = split_cone_label(scene, apex)
    out = []
    for label in POSITIVE_LABELS if positive else NEGATIVE_LABELS:
        if label == split:
            out.append(SubconeRef(apex, label, SIDE_RIGHT))
            out.append(SubconeRef(apex, label, SIDE_LEFT))
        else:
            out.append(SubconeRef(apex, label, SIDE_WHOLE))
    return out


def ccw_sorted(scene, apex: int, members: Iterable[int]) -> list:
    """Vertices sorted counterclockwise around apex; valid within one
    cone (angular extent below pi), where the cross product is a strict
    total order for scenes in general position."""
    ax, ay = scene.ipoint(apex)

    def cmp(u: int, v: int) -> int:
        ux, uy = scene.ipoint(u)
        vx, vy = scene.ipoint(v)
        return -sign(cross(ux - ax, uy - ay, vx - ax, vy - ay))

    return sorted(members, key=cmp_to_key(cmp))
