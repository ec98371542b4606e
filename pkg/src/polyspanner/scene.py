"""Point sets with vertex-disjoint polygonal obstacles.

A scene is a list of exact rational vertices plus obstacles given as
index rings. Obstacle corners are ordinary vertices; rings are
normalized to counterclockwise at construction. Internally every vertex
also gets integer coordinates on a common denominator so the hot
predicates run on plain ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

from .geom import (
    COLLINEAR,
    cross,
    orient,
    point_in_polygon,
    polygon_signed_area2,
    segments_intersect_closed,
    sign,
)


class SceneError(ValueError):
    pass


class Scene:
    """Immutable vertex set plus obstacle rings (counterclockwise)."""

    __slots__ = (
        "vertices",
        "obstacles",
        "scale",
        "ipoints",
        "_memberships",
        "_boundary_prev_next",
        "_ipolygons",
        "_ibboxes",
    )

    def __init__(self, vertices: Sequence, obstacles: Sequence = ()):
        vs = []
        for v in vertices:
            x, y = v[0], v[1]
            vs.append((Fraction(x), Fraction(y)))
        self.vertices = tuple(vs)
        n = len(vs)

        rings = []
        for ring in obstacles:
            idx = tuple(int(i) for i in ring)
            for i in idx:
                if not 0 <= i < n:
                    raise SceneError(f"obstacle index {i} out of range (n={n})")
            if len(idx) >= 3 and polygon_signed_area2(
                [self.vertices[i] for i in idx]
            ) < 0:
                idx = idx[::-1]
            rings.append(idx)
        self.obstacles = tuple(rings)

        denom = 1
        for x, y in self.vertices:
            denom = math.lcm(denom, x.denominator, y.denominator)
        self.scale = denom
        self.ipoints = tuple(
            (int(x * denom), int(y * denom)) for x, y in self.vertices
        )

        memberships: dict[int, list] = {}
        prev_next: dict[int, tuple] = {}
        for oi, ring in enumerate(self.obstacles):
            k = len(ring)
            for pos, vi in enumerate(ring):
                memberships.setdefault(vi, []).append((oi, pos))
                prev_next.setdefault(vi, (ring[pos - 1], ring[(pos + 1) % k]))
        self._memberships = memberships
        self._boundary_prev_next = prev_next
        self._ipolygons = tuple(
            tuple(self.ipoints[i] for i in ring) for ring in self.obstacles
        )
        self._ibboxes = tuple(
            (
                min(p[0] for p in poly),
                min(p[1] for p in poly),
                max(p[0] for p in poly),
                max(p[1] for p in poly),
            )
            for poly in self._ipolygons
        )

    # -- basic accessors -----------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def point(self, i: int):
        return self.vertices[i]

    def ipoint(self, i: int):
        return self.ipoints[i]

    def ipolygon(self, oi: int):
        return self._ipolygons[oi]

    def ibbox(self, oi: int):
        return self._ibboxes[oi]

    def memberships(self, vi: int) -> list:
        return self._memberships.get(vi, [])

    def boundary_neighbors(self, vi: int) -> Optional[tuple]:
        """(prev, next) along the obstacle boundary through vi, if any."""
        return self._boundary_prev_next.get(vi)

    def obstacle_edges(self):
        for oi, ring in enumerate(self.obstacles):
            k = len(ring)
            for pos in range(k):
                yield ring[pos], ring[(pos + 1) % k]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scene)
            and self.vertices == other.vertices
            and self.obstacles == other.obstacles
        )

    def __hash__(self):
        return hash((self.vertices, self.obstacles))

    def __repr__(self) -> str:
        return f"Scene(n={self.n}, obstacles={len(self.obstacles)})"


# --- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    indices: tuple = ()


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(scene: Scene) -> ValidationResult:
    """Check every scene invariant; returns all violations found."""
    out = []

    seen: dict[tuple, int] = {}
    for i, p in enumerate(scene.ipoints):
        if p in seen:
            out.append(
                Violation(
                    "duplicate-vertex",
                    f"vertices {seen[p]} and {i} coincide",
                    (seen[p], i),
                )
            )
        else:
            seen[p] = i

    for oi, ring in enumerate(scene.obstacles):
        if len(ring) < 3:
            out.append(
                Violation("degenerate-obstacle", f"obstacle {oi} has fewer than 3 vertices", (oi,))
            )
            continue
        if len(set(ring)) != len(ring):
            out.append(
                Violation("repeated-index", f"obstacle {oi} repeats a vertex index", (oi,))
            )
            continue
        out.extend(_simplicity_violations(scene, oi))

    shared: dict[int, list] = {}
    for vi, mem in scene._memberships.items():
        obs = sorted({oi for oi, _ in mem})
        if len(obs) > 1:
            shared[vi] = obs
    for vi, obs in sorted(shared.items()):
        out.append(
            Violation(
                "shared-vertex",
                f"vertex {vi} belongs to obstacles {obs}",
                (vi, *obs),
            )
        )

    out.extend(_disjointness_violations(scene, shared))
    out.extend(_containment_violations(scene))
    return ValidationResult(tuple(out))


def _simplicity_violations(scene: Scene, oi: int):
    ring = scene.obstacles[oi]
    k = len(ring)
    pts = [scene.ipoint(i) for i in ring]
    out = []
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        # Adjacent edge turning back on itself.
        c = pts[(i + 2) % k]
        if (
            orient(a, b, c) == COLLINEAR
            and (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0
        ):
            out.append(
                Violation(
                    "non-simple-obstacle",
                    f"obstacle {oi} folds back at vertex {ring[(i + 1) % k]}",
                    (oi,),
                )
            )
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue  # adjacent around the wrap
            c, d = pts[j], pts[(j + 1) % k]
            if segments_intersect_closed(a, b, c, d):
                out.append(
                    Violation(
                        "non-simple-obstacle",
                        f"obstacle {oi} edges {i} and {j} intersect",
                        (oi,),
                    )
                )
    return out


def _disjointness_violations(scene: Scene, shared: dict):
    out = []
    m = len(scene.obstacles)
    for oa in range(m):
        for ob in range(oa + 1, m):
            if _bboxes_disjoint(scene.ibbox(oa), scene.ibbox(ob)):
                continue
            ra, rb = scene.obstacles[oa], scene.obstacles[ob]
            if set(ra) & set(rb):
                continue  # already reported as shared-vertex
            hit = False
            pa, pb = scene.ipolygon(oa), scene.ipolygon(ob)
            for i in range(len(ra)):
                a, b = pa[i], pa[(i + 1) % len(ra)]
                for j in range(len(rb)):
                    c, d = pb[j], pb[(j + 1) % len(rb)]
                    if segments_intersect_closed(a, b, c, d):
                        hit = True
                        break
                if hit:
                    break
            if not hit:
                # Boundaries are disjoint; check nesting.
                if point_in_polygon(pa[0], pb) > 0 or point_in_polygon(pb[0], pa) > 0:
                    hit = True
            if hit:
                out.append(
                    Violation(
                        "obstacles-intersect",
                        f"obstacles {oa} and {ob} are not disjoint",
                        (oa, ob),
                    )
                )
    return out


def _containment_violations(scene: Scene):
    out = []
    for oi in range(len(scene.obstacles)):
        ring = set(scene.obstacles[oi])
        poly = scene.ipolygon(oi)
        bx0, by0, bx1, by1 = scene.ibbox(oi)
        for vi in range(scene.n):
            if vi in ring:
                continue
            x, y = scene.ipoint(vi)
            if not (bx0 <= x <= bx1 and by0 <= y <= by1):
                continue
            if point_in_polygon((x, y), poly) > 0:
                out.append(
                    Violation(
                        "vertex-inside-obstacle",
                        f"vertex {vi} lies in the interior of obstacle {oi}",
                        (vi, oi),
                    )
                )
    return out


def _bboxes_disjoint(a, b) -> bool:
    return a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1]


# --- general position -------------------------------------------------------


@dataclass(frozen=True)
class GeneralPositionReport:
    parallel_violations: tuple  # pairs (i, j) on a cone-boundary slope
    collinear_violations: tuple  # triples (i, j, k)

    @property
    def ok(self) -> bool:
        return not self.parallel_violations and not self.collinear_violations


def check_general_position(scene: Scene) -> GeneralPositionReport:
    """Flag vertex pairs on lines of slope {0, +sqrt3, -sqrt3} and
    collinear vertex triples. All tests are exact."""
    pts = scene.ipoints
    n = len(pts)
    parallel = []
    for i in range(n):
        xi, yi = pts[i]
        for j in range(i + 1, n):
            dx = pts[j][0] - xi
            dy = pts[j][1] - yi
            # dy*dy == 3*dx*dx has no nonzero rational solutions but the
            # test keeps the predicate honest for any exact input.
            if dy == 0 or dy * dy == 3 * dx * dx:
                parallel.append((i, j))

    collinear = []
    for i in range(n):
        xi, yi = pts[i]
        by_dir: dict[tuple, list] = {}
        for j in range(i + 1, n):
            dx = pts[j][0] - xi
            dy = pts[j][1] - yi
            g = math.gcd(dx, dy)
            if g == 0:
                continue  # duplicate point; reported by validate
            dx //= g
            dy //= g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            by_dir.setdefault((dx, dy), []).append(j)
        for members in by_dir.values():
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    collinear.append((i, members[a], members[b]))

    return GeneralPositionReport(tuple(parallel), tuple(collinear))


# --- perturbation ------------------------------------------------------------


def perturb_by_rotation(scene: Scene, k: int) -> Scene:
    """Rotate the whole scene about the origin by the rational-trig
    angle with cos = (k^2-1)/(k^2+1), sin = 2k/(k^2+1).

    Rotation preserves every orientation predicate and all distances;
    it can repair cone-boundary-parallel pairs (the angle shrinks as k
    grows) but never collinear triples.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    den = k * k + 1
    c = Fraction(k * k - 1, den)
    s = Fraction(2 * k, den)
    rotated = [(x * c - y * s, x * s + y * c) for x, y in scene.vertices]
    return Scene(rotated, scene.obstacles)


# --- shared-vertex splitting -------------------------------------------------


def _inward_dir(prev_pt, v_pt, next_pt):
    """A rational direction strictly inside the obstacle wedge at a
    corner (the wedge spans d_next counterclockwise to d_prev)."""
    d1 = (next_pt[0] - v_pt[0], next_pt[1] - v_pt[1])
    d2 = (prev_pt[0] - v_pt[0], prev_pt[1] - v_pt[1])
    o = sign(cross(d1[0], d1[1], d2[0], d2[1]))
    s = (d1[0] + d2[0], d1[1] + d2[1])
    if o > 0:  # convex corner: positive combination stays inside
        return s
    if o < 0:  # reflex corner: the antipode lands inside
        return (-s[0], -s[1])
    return (-d1[1], d1[0])  # straight corner: interior is on the left


def _gap_dir(g1, g2):
    """A rational direction strictly inside the gap from g1
    counterclockwise to g2."""
    o = sign(cross(g1[0], g1[1], g2[0], g2[1]))
    s = (g1[0] + g2[0], g1[1] + g2[1])
    if o > 0:
        return s
    if o < 0:
        return (-s[0], -s[1])
    if s == (0, 0):  # gap of exactly pi
        return (-g1[1], g1[0])
    raise SceneError("degenerate gap at shared vertex (overlapping edges)")


def split_shared_vertices(
    scene: Scene, mode: Literal["passable", "blocked"]
) -> Scene:
    """Replace each vertex shared by two obstacles with two nearby
    vertices.

    passable: each obstacle keeps its own copy, pulled slightly into its
    own interior, which opens a channel between the polygons.
    blocked: the two obstacles are merged into one simple polygon whose
    boundary pinches through the old contact point, sealing the channel.
    The offset is a rational epsilon, halved until the result validates
    and introduces no new general-position violations.
    """
    if mode not in ("passable", "blocked"):
        raise ValueError(f"unknown mode {mode!r}")
    current = scene
    for _ in range(scene.n + 1):
        target = _first_shared_vertex(current)
        if target is None:
            return current
        current = _split_one(current, target, mode)
    raise SceneError("shared vertices keep reappearing")  # pragma: no cover


def _first_shared_vertex(scene: Scene) -> Optional[int]:
    for vi in range(scene.n):
        obs = sorted({oi for oi, _ in scene.memberships(vi)})
        if len(obs) >= 3:
            raise SceneError(
                f"vertex {vi} is shared by {len(obs)} obstacles; cannot split"
            )
        if len(obs) == 2:
            return vi
    return None


def _split_one(scene: Scene, vi: int, mode: str) -> Scene:
    obs = sorted({oi for oi, _ in scene.memberships(vi)})
    oa, ob = obs
    ring_a = scene.obstacles[oa]
    ring_b = scene.obstacles[ob]
    pa = ring_a.index(vi)
    pb = ring_b.index(vi)
    v = scene.point(vi)
    prev_a, next_a = scene.point(ring_a[pa - 1]), scene.point(ring_a[(pa + 1) % len(ring_a)])
    prev_b, next_b = scene.point(ring_b[pb - 1]), scene.point(ring_b[(pb + 1) % len(ring_b)])

    if mode == "passable":
        dir1 = _inward_dir(prev_a, v, next_a)
        dir2 = _inward_dir(prev_b, v, next_b)
    else:
        # Pinch vertices seal the two gaps between the wedges.
        dir1 = _gap_dir(
            (prev_a[0] - v[0], prev_a[1] - v[1]),
            (next_b[0] - v[0], next_b[1] - v[1]),
        )
        dir2 = _gap_dir(
            (prev_b[0] - v[0], prev_b[1] - v[1]),
            (next_a[0] - v[0], next_a[1] - v[1]),
        )

    eps = Fraction(1, 4)
    for _ in range(200):
        first = (v[0] + eps * dir1[0], v[1] + eps * dir1[1])
        second = (v[0] + eps * dir2[0], v[1] + eps * dir2[1])
        vertices = list(scene.vertices)
        vertices[vi] = first
        vertices.append(second)
        new_idx = len(vertices) - 1

        obstacles = list(scene.obstacles)
        if mode == "passable":
            ring = list(ring_b)
            ring[pb] = new_idx
            obstacles[ob] = tuple(ring)
        else:
            # vi's slot -> pinch of gap 1, appended vertex -> gap 2.
            merged = (
                [vi]
                + [ring_b[(pb + 1 + t) % len(ring_b)] for t in range(len(ring_b) - 1)]
                + [new_idx]
                + [ring_a[(pa + 1 + t) % len(ring_a)] for t in range(len(ring_a) - 1)]
            )
            obstacles = [r for t, r in enumerate(obstacles) if t not in (oa, ob)]
            obstacles.append(tuple(merged))

        candidate = Scene(vertices, obstacles)
        if validate(candidate).ok:
            # Vertices other than the two copies kept their coordinates,
            # so any violation touching the copies is new; the rest are
            # pre-existing and not this function's problem.
            rep = check_general_position(candidate)
            changed = {vi, new_idx}
            fresh = [
                viol
                for viol in rep.parallel_violations + rep.collinear_violations
                if set(viol) & changed
            ]
            if not fresh:
                return candidate
        eps /= 2
    raise SceneError(f"could not separate shared vertex {vi}")
