"""Visibility graphs among polygonal obstacles.

Two vertices see each other when the open segment between them avoids
every obstacle interior. Touching obstacle corners or running along a
boundary edge is fine; a third vertex sitting on the open segment
blocks it (that only happens outside general position, but the
predicate stays total).
"""

from __future__ import annotations

from typing import Iterable

from .geom import segment_properly_intersects_polygon, strictly_inside_segment
from .scene import Scene


class Graph:
    """Undirected graph on vertices 0..n-1 with a frozen edge set."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable = ()):
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop edge at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(norm)
        self._adj = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict:
        if self._adj is None:
            adj = {u: [] for u in range(self.n)}
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = {u: tuple(sorted(vs)) for u, vs in adj.items()}
        return self._adj

    def neighbors(self, u: int) -> tuple:
        return self.adjacency()[u]

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def max_degree(self) -> int:
        return max((len(v) for v in self.adjacency().values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and self.edges <= other.edges

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def visible(scene: Scene, u: int, v: int) -> bool:
    """True iff vertices u and v see each other."""
    if u == v:
        return False
    a = scene.ipoint(u)
    b = scene.ipoint(v)
    for w in range(scene.n):
        if w != u and w != v and strictly_inside_segment(scene.ipoint(w), a, b):
            return False
    sx0, sx1 = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
    sy0, sy1 = (a[1], b[1]) if a[1] <= b[1] else (b[1], a[1])
    for oi in range(len(scene.obstacles)):
        bx0, by0, bx1, by1 = scene.ibbox(oi)
        if sx1 < bx0 or bx1 < sx0 or sy1 < by0 or by1 < sy0:
            continue
        if segment_properly_intersects_polygon(a, b, scene.ipolygon(oi)):
            return False
    return True


def visibility_graph(scene: Scene) -> Graph:
    """All mutually visible vertex pairs. Plain O(n^2 * obstacle edges);
    exact and fast enough for desk-scale scenes."""
    edges = []
    for u in range(scene.n):
        for v in range(u + 1, scene.n):
            if visible(scene, u, v):
                edges.append((u, v))
    return Graph(scene.n, edges)
