"""Executable forms of every property the spanner chain promises.

Exact predicates decide planarity, canonical-path membership, and
triangle emptiness. Metric statements (stretch factors, per-edge path
bounds) run in floating point with a relative tolerance of 1e-9, which
dominates double-precision accumulation error at the coordinate scales
this package targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .cones import canonical_triangle, subcone_of, subcones
from .geom import (
    CW,
    ExactScalar,
    cross,
    orient,
    point_in_polygon,
    segment_properly_intersects_polygon,
    segments_properly_intersect,
    sign,
    sqrt3_sign,
    strictly_inside_segment,
)
from .scene import Scene, check_general_position, validate
from .spanners import (
    build_g10,
    build_g15,
    build_g_infinity,
    canonical_sequence,
    compute_charges,
    g7_transform,
)
from .visibility import Graph, visibility_graph

REL_TOL = 1e-9


def edge_length(scene: Scene, u: int, v: int) -> float:
    ux, uy = scene.point(u)
    vx, vy = scene.point(v)
    return math.sqrt(float((vx - ux) ** 2 + (vy - uy) ** 2))


def distance_matrix(scene: Scene, g: Graph) -> np.ndarray:
    """All-pairs shortest-path distances with Euclidean edge weights,
    one single-source run per vertex."""
    n = scene.n
    rows, cols, data = [], [], []
    for u, v in g.edges:
        w = edge_length(scene, u, v)
        rows.extend((u, v))
        cols.extend((v, u))
        data.extend((w, w))
    mat = csr_matrix((data, (rows, cols)), shape=(n, n))
    return shortest_path(mat, method="D", directed=False)


# --- stretch ----------------------------------------------------------------


@dataclass
class StretchReport:
    max_ratio: float
    witness_pair: Optional[tuple]
    sub_dist: np.ndarray = field(repr=False)
    base_dist: np.ndarray = field(repr=False)

    def ratio(self, u: int, v: int) -> float:
        return float(self.sub_dist[u, v] / self.base_dist[u, v])

    def within(self, bound: float) -> bool:
        return self.max_ratio <= bound * (1.0 + REL_TOL)


def stretch_factor(
    scene: Scene,
    sub: Graph,
    base: Graph,
    sub_dist: Optional[np.ndarray] = None,
    base_dist: Optional[np.ndarray] = None,
) -> StretchReport:
    """Largest d_sub(x,y) / d_base(x,y) over pairs connected in base.

    A pair disconnected in sub but connected in base yields an infinite
    ratio. Precomputed distance matrices may be passed in.
    """
    if sub.n != scene.n or base.n != scene.n:
        raise ValueError("graphs must share the scene's vertex set")
    if sub_dist is None:
        sub_dist = distance_matrix(scene, sub)
    if base_dist is None:
        base_dist = distance_matrix(scene, base)
    n = scene.n
    if n < 2:
        return StretchReport(1.0, None, sub_dist, base_dist)
    with np.errstate(divide="ignore", invalid="ignore"):
        comparable = np.isfinite(base_dist) & (base_dist > 0)
        ratios = np.where(comparable, sub_dist / base_dist, 0.0)
    iu, ju = np.triu_indices(n, k=1)
    vals = ratios[iu, ju]
    if vals.size == 0 or not comparable[iu, ju].any():
        return StretchReport(1.0, None, sub_dist, base_dist)
    k = int(np.argmax(vals))
    return StretchReport(
        float(vals[k]), (int(iu[k]), int(ju[k])), sub_dist, base_dist
    )


# --- planarity and degrees --------------------------------------------------


@dataclass(frozen=True)
class PlanarityReport:
    crossing_pairs: tuple
    obstacle_conflicts: tuple

    @property
    def ok(self) -> bool:
        return not self.crossing_pairs and not self.obstacle_conflicts


def check_planarity(scene: Scene, g: Graph) -> PlanarityReport:
    """Exhaustive exact pairwise crossing test plus obstacle-interior
    test. Edges sharing an endpoint never count as crossing."""
    edges = g.sorted_edges()
    pts = [scene.ipoint(i) for i in range(scene.n)]
    crossings = []
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1 :]:
            if a == c or a == d or b == c or b == d:
                continue
            if segments_properly_intersect(pts[a], pts[b], pts[c], pts[d]):
                crossings.append(((a, b), (c, d)))
    conflicts = []
    for a, b in edges:
        lo_x = min(pts[a][0], pts[b][0])
        hi_x = max(pts[a][0], pts[b][0])
        lo_y = min(pts[a][1], pts[b][1])
        hi_y = max(pts[a][1], pts[b][1])
        for oi in range(len(scene.obstacles)):
            bx0, by0, bx1, by1 = scene.ibbox(oi)
            if hi_x < bx0 or bx1 < lo_x or hi_y < by0 or by1 < lo_y:
                continue
            if segment_properly_intersects_polygon(
                pts[a], pts[b], scene.ipolygon(oi)
            ):
                conflicts.append(((a, b), oi))
    return PlanarityReport(tuple(crossings), tuple(conflicts))


@dataclass(frozen=True)
class DegreeReport:
    max_degree: int
    histogram: tuple  # sorted (degree, count) pairs


def degree_report(g: Graph) -> DegreeReport:
    degrees = [g.degree(v) for v in range(g.n)]
    hist: dict[int, int] = {}
    for d in degrees:
        hist[d] = hist.get(d, 0) + 1
    return DegreeReport(max(degrees, default=0), tuple(sorted(hist.items())))


# --- per-edge path bound ----------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    witnesses: tuple

    @property
    def ok(self) -> bool:
        return not self.witnesses


def per_edge_bound(theta: float) -> float:
    """Path-length factor sqrt(3)*cos(theta) + sin(theta) for the angle
    between the pair's segment and its cone bisector."""
    return math.sqrt(3.0) * math.cos(theta) + math.sin(theta)


def check_per_edge_bound_ginf(
    scene: Scene,
    ginf: Graph,
    vis: Optional[Graph] = None,
    ginf_dist: Optional[np.ndarray] = None,
) -> WitnessReport:
    """Every visibility edge (u, v), read from the endpoint whose
    positive cone holds the other, has a ginf path no longer than the
    angle-dependent factor times the Euclidean distance."""
    if vis is None:
        vis = visibility_graph(scene)
    if ginf_dist is None:
        ginf_dist = distance_matrix(scene, ginf)
    bad = []
    for u, v in vis.sorted_edges():
        ref = subcone_of(scene, u, v)
        apex, far = (u, v) if ref.label.positive else (v, u)
        tri = canonical_triangle(scene.point(apex), scene.point(far))
        (ax, ay), _, _, (mx, my) = tri.float_points()
        fx, fy = (float(c) for c in scene.point(far))
        bis = (mx - ax, my - ay)
        seg = (fx - ax, fy - ay)
        dot = bis[0] * seg[0] + bis[1] * seg[1]
        norm = math.hypot(*bis) * math.hypot(*seg)
        cos_t = max(-1.0, min(1.0, dot / norm))
        bound = per_edge_bound(math.acos(cos_t)) * edge_length(scene, u, v)
        have = float(ginf_dist[u, v])
        if have > bound * (1.0 + REL_TOL):
            bad.append(((u, v), have, bound))
    return WitnessReport(tuple(bad))


# --- structural property checks ----------------------------------------------


def _all_sequences(scene: Scene, ginf: Graph):
    for apex in range(scene.n):
        for ref in subcones(scene, apex, positive=False):
            seq = canonical_sequence(scene, ginf, apex, ref)
            if len(seq.vertices) > 1:
                yield seq


def check_canonical_paths(
    scene: Scene, ginf: Graph, g15: Graph
) -> WitnessReport:
    """Consecutive canonical-sequence members are joined by a g15 edge."""
    missing = []
    for seq in _all_sequences(scene, ginf):
        for p, q in seq.consecutive_pairs():
            if not g15.has_edge(p, q):
                missing.append((seq.apex, p, q))
    return WitnessReport(tuple(missing))


def check_empty_triangles(scene: Scene, ginf: Graph) -> WitnessReport:
    """The triangle spanned by the apex and two consecutive canonical
    members contains no vertex in its open interior and no obstacle
    piece crosses into it."""
    bad = []
    for seq in _all_sequences(scene, ginf):
        u = seq.apex
        for p, q in seq.consecutive_pairs():
            tri = [scene.ipoint(u), scene.ipoint(p), scene.ipoint(q)]
            if orient(*tri) == CW:
                tri.reverse()
            for w in range(scene.n):
                if w in (u, p, q):
                    continue
                if point_in_polygon(scene.ipoint(w), tri) > 0:
                    bad.append((u, p, q, "vertex", w))
            for a, b in scene.obstacle_edges():
                if segment_properly_intersects_polygon(
                    scene.ipoint(a), scene.ipoint(b), tri
                ):
                    bad.append((u, p, q, "obstacle-edge", (a, b)))
    return WitnessReport(tuple(bad))


# --- independent construction oracle ----------------------------------------


def _oracle_sector(dx, dy) -> int:
    """Sector 0..5 via half-plane signs; boundary hits raise ValueError."""
    above = sign(dy)
    s60 = sqrt3_sign(dy, -dx)
    s120 = sqrt3_sign(-dy, -dx)
    if above == 0 or s60 == 0 or s120 == 0:
        raise ValueError(f"direction ({dx}, {dy}) on a cone boundary")
    if above > 0:
        if s60 < 0:
            return 0
        if s120 < 0:
            return 1
        return 2
    if s60 > 0:
        return 3
    if s120 > 0:
        return 4
    return 5


# Doubled bisector projection (a, b) ~ a + b*sqrt(3) for a direction in
# each positive sector.
def _oracle_key(sector: int, dx, dy) -> tuple:
    if sector == 1:
        return 2 * dy, 0
    if sector == 3:
        return -dy, -dx
    if sector == 5:
        return -dy, dx
    raise ValueError(f"sector {sector} is not positive")


def _oracle_visible(scene: Scene, u: int, v: int) -> bool:
    a = scene.ipoint(u)
    b = scene.ipoint(v)
    for w in range(scene.n):
        if w not in (u, v) and strictly_inside_segment(scene.ipoint(w), a, b):
            return False
    for oi in range(len(scene.obstacles)):
        if segment_properly_intersects_polygon(a, b, scene.ipolygon(oi)):
            return False
    return True


def _oracle_wedge_side(scene: Scene, u: int, dx, dy, sector: int) -> int:
    """0 for an unsplit sector, 1/2 for the clockwise/counterclockwise
    side of a sector split by the obstacle corner at u. Raises if the
    direction points strictly into the obstacle wedge."""
    nb = scene.boundary_neighbors(u)
    if nb is None:
        return 0
    ux, uy = scene.ipoint(u)
    prev_i, next_i = nb
    nx, ny = scene.ipoint(next_i)
    px, py = scene.ipoint(prev_i)
    dn = (nx - ux, ny - uy)
    dp = (px - ux, py - uy)
    try:
        sn = _oracle_sector(dn[0], dn[1])
        sp = _oracle_sector(dp[0], dp[1])
    except ValueError:
        return 0
    if sn != sector or sp != sector:
        return 0
    if sign(cross(dn[0], dn[1], dp[0], dp[1])) <= 0:
        return 0
    if sign(cross(dx, dy, dn[0], dn[1])) >= 0:
        return 1
    if sign(cross(dp[0], dp[1], dx, dy)) >= 0:
        return 2
    raise ValueError(f"direction ({dx}, {dy}) inside the wedge at {u}")


def oracle_g_infinity(scene: Scene) -> Graph:
    """Brute-force restatement of the cone-spanner definition: per
    vertex, per positive subcone, the visible vertex with the smallest
    bisector projection. Shares only the exact predicates with the
    builder."""
    report = check_general_position(scene)
    if not report.ok:
        raise ValueError("scene is not in general position")
    edges = set()
    for u in range(scene.n):
        ux, uy = scene.ipoint(u)
        best: dict[tuple, tuple] = {}
        for v in range(scene.n):
            if v == u:
                continue
            vx, vy = scene.ipoint(v)
            dx, dy = vx - ux, vy - uy
            sector = _oracle_sector(dx, dy)
            if sector not in (1, 3, 5):
                continue
            if not _oracle_visible(scene, u, v):
                continue
            side = _oracle_wedge_side(scene, u, dx, dy, sector)
            key = _oracle_key(sector, dx, dy)
            slot = (sector, side)
            if slot in best:
                ka, kb = best[slot][0]
                cmp = sqrt3_sign(key[0] - ka, key[1] - kb)
                if cmp == 0:
                    raise ValueError(
                        f"projection tie between {best[slot][1]} and {v} at {u}"
                    )
                if cmp > 0:
                    continue
            best[slot] = (key, v)
        for _, v in best.values():
            edges.add((u, v) if u < v else (v, u))
    return Graph(scene.n, edges)


# --- the full suite ---------------------------------------------------------


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f": {self.detail}" if self.detail and not self.ok else ""
        return f"{status} {self.name}{tail}"


GRAPH_NAMES = ("vis", "ginf", "g15", "g10", "g7")


def build_all(scene: Scene, substitutions: Optional[dict] = None):
    """The five graphs of the pipeline plus the g7 transformation log,
    with named graphs optionally replaced by externally supplied ones
    (replacement happens after honest construction, so downstream
    graphs are built from the genuine pipeline)."""
    vis = visibility_graph(scene)
    ginf = build_g_infinity(scene, vis)
    g15 = build_g15(scene, ginf)
    g10 = build_g10(scene, ginf)
    g7res = g7_transform(scene, ginf, g10)
    graphs = {
        "vis": vis,
        "ginf": ginf,
        "g15": g15,
        "g10": g10,
        "g7": g7res.graph,
    }
    for name, g in (substitutions or {}).items():
        if name not in graphs:
            raise ValueError(f"unknown graph name {name!r}")
        if g.n != scene.n:
            raise ValueError(f"substituted {name} has {g.n} vertices, scene has {scene.n}")
        graphs[name] = g
    return graphs, g7res


def _fmt_pair(pair) -> str:
    return f"({pair[0]},{pair[1]})" if pair else "-"


def run_verification(
    scene: Scene, substitutions: Optional[dict] = None
) -> list:
    """All checks on one scene, in stable order. Substitutions replace
    one or more of the five pipeline graphs before checking (the
    remaining graphs are still built honestly), so a corrupted edge
    list surfaces as failed checks."""
    outcomes: list[CheckOutcome] = []

    vres = validate(scene)
    outcomes.append(
        CheckOutcome(
            "scene-valid",
            vres.ok,
            "; ".join(v.detail for v in vres.violations[:3]),
        )
    )
    gp = check_general_position(scene)
    outcomes.append(
        CheckOutcome(
            "general-position",
            gp.ok,
            f"{len(gp.parallel_violations)} parallel pair(s), "
            f"{len(gp.collinear_violations)} collinear triple(s)",
        )
    )
    if not (vres.ok and gp.ok):
        return outcomes

    graphs, g7res = build_all(scene, substitutions)
    vis, ginf = graphs["vis"], graphs["ginf"]
    g15, g10, g7 = graphs["g15"], graphs["g10"], graphs["g7"]

    oracle = oracle_g_infinity(scene)
    diff = ginf.edges ^ oracle.edges
    outcomes.append(
        CheckOutcome(
            "oracle-equivalence(ginf)",
            ginf.edges == oracle.edges,
            f"{len(diff)} differing edge(s): {sorted(diff)[:4]}",
        )
    )

    chain_ok = (
        g10.is_subgraph_of(g15)
        and g15.is_subgraph_of(ginf)
        and ginf.is_subgraph_of(vis)
    )
    outcomes.append(
        CheckOutcome(
            "subgraph-chain",
            chain_ok,
            "expected g10 within g15 within ginf within vis",
        )
    )
    added = {t.added_xy for t in g7res.transformations if t.added_xy}
    extras = g7.edges - g10.edges
    outcomes.append(
        CheckOutcome(
            "g7-extra-edges",
            extras <= added,
            f"unexplained extra edge(s): {sorted(extras - added)[:4]}",
        )
    )

    for name in ("ginf", "g15", "g10", "g7"):
        rep = check_planarity(scene, graphs[name])
        outcomes.append(
            CheckOutcome(
                f"planarity({name})",
                rep.ok,
                f"{len(rep.crossing_pairs)} crossing(s), "
                f"{len(rep.obstacle_conflicts)} obstacle conflict(s)",
            )
        )

    for name, cap in (("g15", 15), ("g10", 10), ("g7", 7)):
        rep = degree_report(graphs[name])
        outcomes.append(
            CheckOutcome(
                f"degree({name}<={cap})",
                rep.max_degree <= cap,
                f"max degree {rep.max_degree}",
            )
        )

    try:
        ledger = compute_charges(scene, g10, ginf)
        totals = ledger.vertex_totals(scene.n)
        uncovered = [v for v in range(scene.n) if totals[v] < g10.degree(v)]
        neg_over = [
            (str(ref), len(cs))
            for ref, cs in ledger.items()
            if not ref.label.positive and len(cs) > 1
        ]
        pos_over = [
            (str(ref), len(cs))
            for ref, cs in ledger.items()
            if ref.label.positive and len(cs) > 2
        ]
        outcomes.append(
            CheckOutcome(
                "charges(cover-degree)",
                not uncovered,
                f"vertices undercharged: {uncovered[:4]}",
            )
        )
        outcomes.append(
            CheckOutcome(
                "charges(negative-cap-1)",
                not neg_over,
                f"overcharged: {neg_over[:4]}",
            )
        )
        outcomes.append(
            CheckOutcome(
                "charges(positive-cap-2)",
                not pos_over,
                f"overcharged: {pos_over[:4]}",
            )
        )
    except ValueError as exc:
        # A substituted graph can violate the cone structure the charging
        # scheme relies on; surface that as a failed charge check.
        for name in (
            "charges(cover-degree)",
            "charges(negative-cap-1)",
            "charges(positive-cap-2)",
        ):
            outcomes.append(CheckOutcome(name, False, str(exc)))

    dists = {name: distance_matrix(scene, graphs[name]) for name in GRAPH_NAMES}
    stretch_specs = (
        ("ginf", "vis", 2.0),
        ("g15", "ginf", 3.0),
        ("g10", "ginf", 3.0),
        ("g7", "ginf", 3.0),
        ("g15", "vis", 6.0),
        ("g10", "vis", 6.0),
        ("g7", "vis", 6.0),
    )
    for sub_name, base_name, bound in stretch_specs:
        rep = stretch_factor(
            scene,
            graphs[sub_name],
            graphs[base_name],
            dists[sub_name],
            dists[base_name],
        )
        outcomes.append(
            CheckOutcome(
                f"stretch({sub_name}|{base_name}<={bound:g})",
                rep.within(bound),
                f"max ratio {rep.max_ratio:.12g} at {_fmt_pair(rep.witness_pair)}",
            )
        )

    def witness_check(name, fn, describe):
        try:
            rep = fn()
            outcomes.append(
                CheckOutcome(name, rep.ok, describe(rep.witnesses))
            )
        except ValueError as exc:
            outcomes.append(CheckOutcome(name, False, str(exc)))

    witness_check(
        "per-edge-bound(ginf|vis)",
        lambda: check_per_edge_bound_ginf(scene, ginf, vis, dists["ginf"]),
        lambda ws: f"{len(ws)} edge(s) over bound: {[w[0] for w in ws[:4]]}",
    )
    witness_check(
        "canonical-path-edges(g15)",
        lambda: check_canonical_paths(scene, ginf, g15),
        lambda ws: f"missing path edge(s): {ws[:4]}",
    )
    witness_check(
        "empty-canonical-triangles(ginf)",
        lambda: check_empty_triangles(scene, ginf),
        lambda ws: f"occupied triangle(s): {ws[:4]}",
    )
    return outcomes
