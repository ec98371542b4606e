import math

import numpy as np
import pytest

from tests.conftest import load_scene

from polyspanner.scene import Scene
from polyspanner.spanners import build_g15, build_g_infinity
from polyspanner.verify import (
    REL_TOL,
    check_canonical_paths,
    check_empty_triangles,
    check_per_edge_bound_ginf,
    check_planarity,
    degree_report,
    distance_matrix,
    edge_length,
    oracle_g_infinity,
    per_edge_bound,
    run_verification,
    stretch_factor,
)
from polyspanner.visibility import Graph, visibility_graph


def test_distance_matrix_triangle():
    sc = Scene([(0, 0), (3, 4), (6, 1)])
    g = Graph(3, [(0, 1), (1, 2)])
    d = distance_matrix(sc, g)
    assert d[0, 1] == pytest.approx(5.0)
    assert d[0, 2] == pytest.approx(5.0 + math.sqrt(18))
    assert d[0, 0] == 0.0


def test_stretch_identity_is_one(nonconvex):
    g = visibility_graph(nonconvex)
    rep = stretch_factor(nonconvex, g, g)
    assert rep.max_ratio == 1.0
    assert rep.within(1.0)


def test_stretch_detour():
    sc = Scene([(0, 0), (10, 1), (11, 11), (1, 10)])
    base = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    sub = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = stretch_factor(sc, sub, base)
    detour = edge_length(sc, 0, 1) + edge_length(sc, 1, 2)
    direct = edge_length(sc, 0, 2)
    assert rep.max_ratio == pytest.approx(detour / direct)
    assert rep.witness_pair == (0, 2)
    assert not rep.within(1.0)


def test_stretch_disconnected_sub_is_infinite():
    sc = Scene([(0, 0), (10, 1), (5, 8)])
    base = Graph(3, [(0, 1), (1, 2), (0, 2)])
    sub = Graph(3, [(0, 1)])
    rep = stretch_factor(sc, sub, base)
    assert math.isinf(rep.max_ratio)
    assert not rep.within(1e9)


def test_per_edge_bound_spot_values():
    assert per_edge_bound(0.0) == pytest.approx(math.sqrt(3), rel=1e-12)
    assert per_edge_bound(math.pi / 6) == pytest.approx(2.0, rel=1e-12)
    # interior values stay between the extremes
    assert math.sqrt(3) < per_edge_bound(0.2) < 2.0


def test_per_edge_bound_holds_on_fixture(split_cones):
    vis = visibility_graph(split_cones)
    ginf = build_g_infinity(split_cones, vis)
    rep = check_per_edge_bound_ginf(split_cones, ginf, vis)
    assert rep.ok


def test_planarity_flags_crossing():
    sc = Scene([(0, 0), (10, 1), (11, 11), (1, 10)])
    rep = check_planarity(sc, Graph(4, [(0, 2), (1, 3)]))
    assert not rep.ok
    assert rep.crossing_pairs == (((0, 2), (1, 3)),)


def test_planarity_ignores_shared_endpoints():
    sc = Scene([(0, 0), (10, 1), (11, 11), (1, 10)])
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert check_planarity(sc, star).ok


def test_planarity_flags_obstacle_conflict():
    sc = Scene([(0, 17), (40, 18), (10, 10), (30, 11), (20, 25)], [[2, 3, 4]])
    rep = check_planarity(sc, Graph(5, [(0, 1)]))
    assert not rep.ok
    assert rep.obstacle_conflicts


def test_degree_report():
    rep = degree_report(Graph(4, [(0, 1), (0, 2), (0, 3)]))
    assert rep.max_degree == 3
    assert dict(rep.histogram) == {1: 3, 3: 1}


# scene with vertex 3 strictly inside the triangle of vertices 0, 1, 2;
# an honest build would never join 0 to both 1 and 2 here
CONTROL = Scene([(0, 0), (30, 5), (8, 10), (12, 6)])


def test_empty_triangle_checker_negative_control():
    mutated = Graph(4, [(0, 1), (0, 2)])
    rep = check_empty_triangles(CONTROL, mutated)
    assert not rep.ok
    assert (0, 1, 2, "vertex", 3) in rep.witnesses


def test_empty_triangle_checker_positive(split_cones):
    vis = visibility_graph(split_cones)
    ginf = build_g_infinity(split_cones, vis)
    assert check_empty_triangles(split_cones, ginf).ok


def test_canonical_path_checker_negative_control():
    ginf = Graph(4, [(0, 1), (0, 2), (1, 2)])
    pruned = Graph(4, [(0, 1), (0, 2)])  # path edge (1, 2) dropped
    rep = check_canonical_paths(CONTROL, ginf, pruned)
    assert not rep.ok
    assert (0, 1, 2) in rep.witnesses


def test_canonical_path_checker_positive(split_cones):
    vis = visibility_graph(split_cones)
    ginf = build_g_infinity(split_cones, vis)
    g15 = build_g15(split_cones, ginf)
    assert check_canonical_paths(split_cones, ginf, g15).ok


def test_oracle_matches_builder_on_fixtures(micro3, split_cones, nonconvex):
    for scene in (micro3, split_cones, nonconvex):
        ginf = build_g_infinity(scene)
        assert oracle_g_infinity(scene) == ginf


def test_run_verification_all_pass(split_cones):
    outcomes = run_verification(split_cones)
    assert outcomes and all(o.ok for o in outcomes)
    names = [o.name for o in outcomes]
    assert names[0] == "scene-valid"
    assert "stretch(ginf|vis<=2)" in names
    assert "empty-canonical-triangles(ginf)" in names


def test_run_verification_line_format(micro3):
    lines = [o.line() for o in run_verification(micro3)]
    assert all(line.startswith("PASS ") for line in lines)


def test_run_verification_detects_missing_ginf_edge(micro3):
    mutated = Graph(3, [(0, 1)])
    outcomes = {o.name: o for o in run_verification(micro3, {"ginf": mutated})}
    assert not outcomes["oracle-equivalence(ginf)"].ok
    assert not outcomes["subgraph-chain"].ok


def test_run_verification_detects_overfull_degree(split_cones):
    star = Graph(12, [(0, i) for i in range(1, 12)])
    outcomes = {o.name: o for o in run_verification(split_cones, {"g7": star})}
    assert not outcomes["degree(g7<=7)"].ok
    assert not outcomes["g7-extra-edges"].ok


def test_run_verification_detects_crossing_substitute(split_cones):
    from polyspanner.geom import segments_properly_intersect

    vis = visibility_graph(split_cones)
    ginf = build_g_infinity(split_cones, vis)
    g15 = build_g15(split_cones, ginf)
    pts = [split_cones.ipoint(i) for i in range(split_cones.n)]
    edges = vis.sorted_edges()
    crossing = next(
        (e, f)
        for i, e in enumerate(edges)
        for f in edges[i + 1:]
        if not set(e) & set(f)
        and segments_properly_intersect(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])
    )
    mutated = Graph(split_cones.n, set(g15.edges) | set(crossing))
    outcomes = {
        o.name: o for o in run_verification(split_cones, {"g15": mutated})
    }
    assert not outcomes["planarity(g15)"].ok


def test_run_verification_detects_broken_canonical_path(split_cones):
    vis = visibility_graph(split_cones)
    ginf = build_g_infinity(split_cones, vis)
    g15 = build_g15(split_cones, ginf)
    # (8, 4) joins consecutive members of the sequence (11, 8, 4) at 7
    pruned = Graph(split_cones.n, set(g15.edges) - {(4, 8)})
    outcomes = {
        o.name: o for o in run_verification(split_cones, {"g15": pruned})
    }
    assert not outcomes["canonical-path-edges(g15)"].ok


def test_rel_tol_is_tight():
    assert REL_TOL == 1e-9
