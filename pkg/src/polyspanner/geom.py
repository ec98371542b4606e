"""Exact 2D predicates over rational coordinates.

Every decision in this package reduces to the sign of an integer or
rational expression, so no predicate can flip under rounding. Points are
plain ``(x, y)`` tuples whose entries are ints or ``fractions.Fraction``
(the two mix freely in arithmetic). The only irrational values anywhere
in the pipeline are rational multiples of sqrt(3); ``ExactScalar``
carries those symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, Fraction]
Point = Sequence  # (x, y) with exact rational entries

CCW = 1
COLLINEAR = 0
CW = -1


def sign(x) -> int:
    """-1, 0 or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def sqrt3_sign(a, b) -> int:
    """Exact sign of a + b*sqrt(3) for rational a, b.

    When a and b disagree in sign the answer hinges on whether |a|
    beats sqrt(3)*|b|, i.e. on the sign of a*a - 3*b*b.
    """
    sa = sign(a)
    sb = sign(b)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    return sa * sign(a * a - 3 * b * b)


def cross(ux, uy, vx, vy):
    return ux * vy - uy * vx


def orient(p, q, r) -> int:
    """Orientation of the triple p, q, r: CCW, COLLINEAR or CW."""
    return sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def strictly_inside_segment(p, a, b) -> bool:
    """True iff p lies on the open segment (a, b)."""
    if orient(a, b, p) != COLLINEAR:
        return False
    if a[0] != b[0]:
        lo, hi = (a[0], b[0]) if a[0] < b[0] else (b[0], a[0])
        return lo < p[0] < hi
    lo, hi = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
    return lo < p[1] < hi


def _axis_interval_overlap_positive(a, b, c, d) -> bool:
    # All four points collinear; compare parameter intervals on the
    # axis where the common line actually extends.
    ax = 0 if a[0] != b[0] else 1
    lo1, hi1 = (a[ax], b[ax]) if a[ax] <= b[ax] else (b[ax], a[ax])
    lo2, hi2 = (c[ax], d[ax]) if c[ax] <= d[ax] else (d[ax], c[ax])
    return min(hi1, hi2) > max(lo1, lo2)


def segments_properly_intersect(a, b, c, d) -> bool:
    """True iff the relative interiors of segments ab and cd cross.

    Touching at an endpoint is not proper; collinear overlap of positive
    length is.
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        if a == b or c == d:
            return False
        return _axis_interval_overlap_positive(a, b, c, d)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect_closed(a, b, c, d) -> bool:
    """True iff closed segments ab and cd share at least one point."""
    if orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0:
        return True

    # Any remaining intersection puts an endpoint of one segment on the
    # other (collinear overlaps included).
    def on_closed(p, s, t):
        if orient(s, t, p) != COLLINEAR:
            return False
        return (
            min(s[0], t[0]) <= p[0] <= max(s[0], t[0])
            and min(s[1], t[1]) <= p[1] <= max(s[1], t[1])
        )

    return (
        on_closed(c, a, b)
        or on_closed(d, a, b)
        or on_closed(a, c, d)
        or on_closed(b, c, d)
    )


def polygon_signed_area2(poly) -> Rational:
    """Twice the signed area; positive iff the ring is counterclockwise."""
    total = 0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - y1 * x2
    return total


def point_in_polygon(p, poly) -> int:
    """+1 strictly inside, 0 on the boundary, -1 strictly outside.

    Exact even-odd crossing count with an upward ray; edges are treated
    half-open in y so a crossing at a shared vertex is counted once.
    """
    x, y = p[0], p[1]
    inside = False
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if (
            orient(a, b, p) == COLLINEAR
            and min(a[0], b[0]) <= x <= max(a[0], b[0])
            and min(a[1], b[1]) <= y <= max(a[1], b[1])
        ):
            return 0
        if (a[1] > y) != (b[1] > y):
            o = orient(a, b, p)
            if b[1] > a[1]:
                if o > 0:
                    inside = not inside
            else:
                if o < 0:
                    inside = not inside
    return 1 if inside else -1


def segment_polygon_hits(a, b, poly) -> list:
    """Sorted parameters t in [0, 1] where segment a + t*(b-a) meets the
    polygon boundary. Collinear overlaps contribute both overlap ends."""
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    ts = set()

    def param_of(p):
        if abx != 0:
            return Fraction(p[0] - a[0], abx)
        return Fraction(p[1] - a[1], aby)

    n = len(poly)
    for i in range(n):
        c = poly[i]
        d = poly[(i + 1) % n]
        cdx = d[0] - c[0]
        cdy = d[1] - c[1]
        denom = cross(abx, aby, cdx, cdy)
        if denom != 0:
            acx = c[0] - a[0]
            acy = c[1] - a[1]
            t = Fraction(cross(acx, acy, cdx, cdy), denom)
            s = Fraction(cross(acx, acy, abx, aby), denom)
            if 0 <= t <= 1 and 0 <= s <= 1:
                ts.add(t)
            continue
        if orient(a, b, c) != COLLINEAR:
            continue
        # Collinear edge: clip its parameter interval to [0, 1].
        t1 = param_of(c)
        t2 = param_of(d)
        lo, hi = (t1, t2) if t1 <= t2 else (t2, t1)
        lo = max(lo, Fraction(0))
        hi = min(hi, Fraction(1))
        if lo <= hi:
            ts.add(lo)
            ts.add(hi)
    return sorted(ts)


def segment_properly_intersects_polygon(a, b, poly) -> bool:
    """True iff the open segment (a, b) meets the open interior of poly.

    Touching the boundary, passing through vertices, or running along a
    boundary edge does not count. The segment is cut at every boundary
    hit and each open piece is classified by its midpoint, which is
    exact because all cut parameters are rational.
    """
    if a == b:
        return False
    ts = segment_polygon_hits(a, b, poly)
    cuts = [Fraction(0)]
    for t in ts:
        if 0 < t < 1:
            cuts.append(t)
    cuts.append(Fraction(1))
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    for t0, t1 in zip(cuts, cuts[1:]):
        tm = (t0 + t1) / 2
        mid = (a[0] + tm * abx, a[1] + tm * aby)
        if point_in_polygon(mid, poly) > 0:
            return True
    return False


@dataclass(frozen=True)
class ExactScalar:
    """Exact element a + b*sqrt(3) of Q(sqrt 3).

    Closed under addition, subtraction and multiplication; ordered by
    exact sign computation.
    """

    a: Rational
    b: Rational = 0

    @classmethod
    def of(cls, value: Rational) -> "ExactScalar":
        return cls(value, 0)

    def sign(self) -> int:
        return sqrt3_sign(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        other = _coerce(other)
        return ExactScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return ExactScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return ExactScalar(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        # (a + b r)(c + d r) with r*r = 3
        return ExactScalar(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 3 ** 0.5

    def __repr__(self) -> str:
        return f"ExactScalar({self.a!r}, {self.b!r})"


SQRT3 = ExactScalar(0, 1)


def _coerce(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    return ExactScalar(value, 0)
