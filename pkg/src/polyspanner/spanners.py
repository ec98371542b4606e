"""Cone spanners of the visibility graph and their degree-bounded
thinnings.

Construction chain:

* ``build_g_infinity``: per vertex and per positive subcone, keep one
  edge to the visible vertex whose projection on the cone bisector is
  smallest. Plane 2-spanner of the visibility graph.
* ``build_g15``: per negative subcone keep only the clockwise extreme,
  the counterclockwise extreme, and the projection-closest edge.
  Degree at most 15.
* ``build_g10``: per negative subcone keep the closest edge plus the
  path joining angularly consecutive neighbors (the canonical path).
  Degree at most 10.
* ``build_g7``: rewires vertices whose positive cone is paid for twice
  by the same canonical path. Degree at most 7.

Every edge of the first graph lies in a positive cone of exactly one
endpoint and a negative cone of the other, so "per negative subcone"
decisions cover each edge exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cones import (
    ConeLabel,
    GeneralPositionError,
    SIDE_LEFT,
    SIDE_RIGHT,
    SIDE_WHOLE,
    SubconeRef,
    ccw_sorted,
    key_compare,
    split_cone_label,
    subcone_of,
    subcones,
)
from .scene import Scene, check_general_position
from .visibility import Graph, visibility_graph


def _require_general_position(scene: Scene) -> None:
    report = check_general_position(scene)
    if not report.ok:
        raise GeneralPositionError(
            f"scene is not in general position: "
            f"{len(report.parallel_violations)} boundary-parallel pair(s), "
            f"{len(report.collinear_violations)} collinear triple(s)"
        )


def _edge(u: int, v: int) -> tuple:
    return (u, v) if u < v else (v, u)


def _closest(scene: Scene, apex: int, label: ConeLabel, members) -> int:
    ax, ay = scene.ipoint(apex)
    best = None
    best_d = None
    for v in members:
        vx, vy = scene.ipoint(v)
        d = (vx - ax, vy - ay)
        if best is None or key_compare(label, d, best_d) < 0:
            best = v
            best_d = d
    return best


def build_g_infinity(scene: Scene, vis: Optional[Graph] = None) -> Graph:
    """One edge per nonempty positive subcone, to the visible vertex
    with the smallest bisector projection."""
    _require_general_position(scene)
    if vis is None:
        vis = visibility_graph(scene)
    edges = set()
    for u in range(scene.n):
        groups: dict[SubconeRef, list] = {}
        for v in vis.neighbors(u):
            ref = subcone_of(scene, u, v)
            if ref.label.positive:
                groups.setdefault(ref, []).append(v)
        for ref, members in groups.items():
            edges.add(_edge(u, _closest(scene, u, ref.label, members)))
    return Graph(scene.n, edges)


@dataclass(frozen=True)
class CanonicalSequence:
    """Neighbors of the apex inside one negative subcone, in
    counterclockwise order around the apex."""

    apex: int
    subcone: SubconeRef
    vertices: tuple

    def consecutive_pairs(self):
        return list(zip(self.vertices, self.vertices[1:]))


def canonical_sequence(
    scene: Scene, ginf: Graph, apex: int, subcone: SubconeRef
) -> CanonicalSequence:
    if subcone.apex != apex or subcone.label.positive:
        raise ValueError(f"{subcone} is not a negative subcone of vertex {apex}")
    members = [
        v for v in ginf.neighbors(apex) if subcone_of(scene, apex, v) == subcone
    ]
    return CanonicalSequence(apex, subcone, tuple(ccw_sorted(scene, apex, members)))


def _negative_sequences(scene: Scene, ginf: Graph, apex: int):
    """Nonempty canonical sequences at a vertex, deterministic order."""
    out = []
    for ref in subcones(scene, apex, positive=False):
        seq = canonical_sequence(scene, ginf, apex, ref)
        if seq.vertices:
            out.append(seq)
    return out


def build_g15(scene: Scene, ginf: Graph) -> Graph:
    """Keep the two angular extremes and the projection-closest edge of
    every negative subcone."""
    edges = set()
    for u in range(scene.n):
        for seq in _negative_sequences(scene, ginf, u):
            members = seq.vertices
            closest = _closest(scene, u, seq.subcone.label, members)
            for v in (members[0], members[-1], closest):
                edges.add(_edge(u, v))
    return Graph(scene.n, edges)


def build_g10(scene: Scene, ginf: Graph) -> Graph:
    """Keep the closest edge of every negative subcone plus the
    canonical path joining consecutive sequence members."""
    edges = set()
    for u in range(scene.n):
        for seq in _negative_sequences(scene, ginf, u):
            closest = _closest(scene, u, seq.subcone.label, seq.vertices)
            edges.add(_edge(u, closest))
            for p, q in seq.consecutive_pairs():
                edges.add(_edge(p, q))
    return Graph(scene.n, edges)


# --- the charging ledger ----------------------------------------------------


@dataclass(frozen=True)
class Charge:
    """One unit charged to a subcone for one graph edge.

    Scenarios: A/B are the two endpoint charges of a closest edge (A at
    the positive end, B at the negative end); C/D are the endpoint
    charges of a canonical-path edge (C lands in the positive cone that
    contains the path owner, D in an empty negative cone). owner and
    owner_subcone identify the canonical sequence that created the
    charge.
    """

    edge: tuple
    scenario: str
    owner: int
    owner_subcone: SubconeRef


class ChargeLedger:
    """Charges grouped by the subcone that pays for them."""

    def __init__(self):
        self.by_subcone: dict[SubconeRef, list] = {}

    def add(self, ref: SubconeRef, charge: Charge) -> None:
        self.by_subcone.setdefault(ref, []).append(charge)

    def remove(self, ref: SubconeRef, charge: Charge) -> None:
        self.by_subcone[ref].remove(charge)
        if not self.by_subcone[ref]:
            del self.by_subcone[ref]

    def remove_edge(self, edge: tuple) -> None:
        for ref in list(self.by_subcone):
            kept = [c for c in self.by_subcone[ref] if c.edge != edge]
            if kept:
                self.by_subcone[ref] = kept
            else:
                del self.by_subcone[ref]

    def charges_of_edge(self, edge: tuple) -> list:
        out = []
        for ref, charges in self.by_subcone.items():
            for c in charges:
                if c.edge == edge:
                    out.append((ref, c))
        return out

    def vertex_totals(self, n: int) -> list:
        totals = [0] * n
        for ref, charges in self.by_subcone.items():
            totals[ref.apex] += len(charges)
        return totals

    def items(self):
        return self.by_subcone.items()


def _positive_subcone_containing(scene: Scene, apex: int, v: int) -> SubconeRef:
    ref = subcone_of(scene, apex, v)
    if not ref.label.positive:
        raise ValueError(f"vertex {v} is not in a positive cone of {apex}")
    return ref


def _scenario_d_target(scene: Scene, vertex: int, index: int, side_hint: str) -> SubconeRef:
    """Negative cone paying for a scenario-D charge. The geometry keeps
    this cone unsplit; if an obstacle splits it anyway, charge the side
    adjacent to the canonical path's positive cone."""
    label = ConeLabel(False, index)
    if split_cone_label(scene, vertex) == label:
        return SubconeRef(vertex, label, side_hint)
    return SubconeRef(vertex, label, SIDE_WHOLE)


def compute_charges(
    scene: Scene, g10: Graph, ginf: Optional[Graph] = None
) -> ChargeLedger:
    """Charge every edge of g10 to subcones of both endpoints.

    Closest edges pay scenario B at the sequence owner and scenario A at
    the chosen vertex. A canonical-path edge lies in a negative cone of
    one endpoint (scenario C, charged to the positive subcone containing
    the owner) and a positive cone of the other (scenario D, charged to
    the adjacent empty negative cone).
    """
    if ginf is None:
        ginf = build_g_infinity(scene)
    ledger = ChargeLedger()
    for u in range(scene.n):
        for seq in _negative_sequences(scene, ginf, u):
            j = seq.subcone.label.index
            closest = _closest(scene, u, seq.subcone.label, seq.vertices)
            e = _edge(u, closest)
            ledger.add(seq.subcone, Charge(e, "B", u, seq.subcone))
            ledger.add(
                _positive_subcone_containing(scene, closest, u),
                Charge(e, "A", u, seq.subcone),
            )
            for p, q in seq.consecutive_pairs():
                e = _edge(p, q)
                # Looking from p toward its ccw successor q.
                lab_pq = subcone_of(scene, p, q).label
                if not lab_pq.positive:
                    # scenario C at p; the edge sits in the negative cone
                    # adjacent (ccw) to the cone containing u.
                    ledger.add(
                        _positive_subcone_containing(scene, p, u),
                        Charge(e, "C", u, seq.subcone),
                    )
                else:
                    ledger.add(
                        _scenario_d_target(scene, p, (j + 1) % 3, SIDE_LEFT),
                        Charge(e, "D", u, seq.subcone),
                    )
                # Looking from q toward its cw predecessor p.
                lab_qp = subcone_of(scene, q, p).label
                if not lab_qp.positive:
                    ledger.add(
                        _positive_subcone_containing(scene, q, u),
                        Charge(e, "C", u, seq.subcone),
                    )
                else:
                    ledger.add(
                        _scenario_d_target(scene, q, (j - 1) % 3, SIDE_RIGHT),
                        Charge(e, "D", u, seq.subcone),
                    )
    return ledger


# --- the degree-7 transformation ---------------------------------------------


@dataclass(frozen=True)
class Transformation:
    """Record of one double-charge resolution at vertex v.

    x and y are the path neighbors of v (x on the side of the path
    owner's closest vertex). absorbed means only bookkeeping changed;
    otherwise edge (v, y) was removed, (x, y) added, and possibly
    (x, w) removed as well.
    """

    owner: int
    owner_subcone: SubconeRef
    v: int
    x: int
    y: int
    absorbed: bool
    removed_vy: Optional[tuple] = None
    added_xy: Optional[tuple] = None
    removed_xw: Optional[tuple] = None
    uncharged_xw: Optional[tuple] = None


@dataclass(frozen=True)
class G7Result:
    graph: Graph
    transformations: tuple


def _is_closest_in_own_subcone(scene, ginf, apex, member) -> bool:
    ref = subcone_of(scene, apex, member)
    seq = canonical_sequence(scene, ginf, apex, ref)
    return member == _closest(scene, apex, ref.label, seq.vertices)


def g7_transform(scene: Scene, ginf: Graph, g10: Graph) -> G7Result:
    """Resolve every positive subcone charged twice by one canonical
    path, scanning vertices in index order and keeping the ledger
    current after each application."""
    ledger = compute_charges(scene, g10, ginf)
    edges = set(g10.edges)
    transcript = []

    candidates = []
    for ref in sorted(ledger.by_subcone):
        if not ref.label.positive:
            continue
        groups: dict[tuple, list] = {}
        for c in ledger.by_subcone[ref]:
            if c.scenario == "C":
                groups.setdefault((c.owner, c.owner_subcone), []).append(c)
        for key, cs in sorted(groups.items()):
            if len(cs) == 2:
                candidates.append((ref, key))

    for ref, (owner, owner_sub) in candidates:
        current = [
            c
            for c in ledger.by_subcone.get(ref, [])
            if c.scenario == "C" and (c.owner, c.owner_subcone) == (owner, owner_sub)
        ]
        if len(current) != 2:
            continue  # an earlier application already resolved this cone
        v = ref.apex
        seq = canonical_sequence(scene, ginf, owner, owner_sub)
        order = list(seq.vertices)
        i = order.index(v)
        closest = _closest(scene, owner, owner_sub.label, order)
        # Both charged edges are the path edges at v; x sits on the same
        # side of v as the owner's closest vertex.
        if order.index(closest) < i:
            x, y = order[i - 1], order[i + 1]
        else:
            x, y = order[i + 1], order[i - 1]

        charge_vx = next((c for c in current if c.edge == _edge(v, x)), None)
        charge_vy = next((c for c in current if c.edge == _edge(v, y)), None)
        if charge_vx is None or charge_vy is None:
            continue  # an overlapping application already rewired one edge

        if _is_closest_in_own_subcone(scene, ginf, v, x):
            ledger.remove(ref, charge_vx)
            transcript.append(
                Transformation(owner, owner_sub, v, x, y, absorbed=True)
            )
            continue
        if _is_closest_in_own_subcone(scene, ginf, v, y):
            ledger.remove(ref, charge_vy)
            transcript.append(
                Transformation(owner, owner_sub, v, x, y, absorbed=True)
            )
            continue

        # Structural step: (v, y) goes away, (x, y) arrives.
        e_vy = _edge(v, y)
        e_xy = _edge(x, y)
        y_side = [
            (r, c)
            for r, c in ledger.charges_of_edge(e_vy)
            if r.apex == y
        ]
        ledger.remove_edge(e_vy)
        edges.discard(e_vy)
        edges.add(e_xy)
        for r, c in y_side:
            ledger.add(r, Charge(e_xy, c.scenario, c.owner, c.owner_subcone))

        # At x the new edge takes over the slot of (x, w) when that edge
        # is redundant or removable; w is x's neighbor on the canonical
        # path of v through x's subcone.
        removed_xw = None
        uncharged_xw = None
        sub_x = subcone_of(scene, v, x)
        vseq = canonical_sequence(scene, ginf, v, sub_x).vertices
        xi = vseq.index(x)
        w = None
        if len(vseq) > 1:
            if xi == 0:
                w = vseq[1]
            elif xi == len(vseq) - 1:
                w = vseq[-2]
            else:
                # The path structure makes x an endpoint; stay total if
                # an unexpected interior position shows up.
                w = vseq[xi + 1]
        slot = _positive_subcone_containing(scene, x, v)
        if w is not None:
            lab_w = subcone_of(scene, x, w).label
            if lab_w == ConeLabel(False, ref.label.index):
                e_xw = _edge(x, w)
                if _is_closest_in_own_subcone(scene, ginf, x, w):
                    # (x, w) was double counted at x; free its path charge.
                    for r, c in ledger.charges_of_edge(e_xw):
                        if r == slot and c.scenario == "C":
                            ledger.remove(r, c)
                            uncharged_xw = e_xw
                            break
                else:
                    ledger.remove_edge(e_xw)
                    edges.discard(e_xw)
                    removed_xw = e_xw
        ledger.add(slot, Charge(e_xy, "C", v, sub_x))
        transcript.append(
            Transformation(
                owner,
                owner_sub,
                v,
                x,
                y,
                absorbed=False,
                removed_vy=e_vy,
                added_xy=e_xy,
                removed_xw=removed_xw,
                uncharged_xw=uncharged_xw,
            )
        )

    return G7Result(Graph(scene.n, edges), tuple(transcript))


def build_g7(scene: Scene, ginf: Graph, g10: Graph) -> Graph:
    return g7_transform(scene, ginf, g10).graph
