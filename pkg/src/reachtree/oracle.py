"""Brute-force ground truth for reachability queries.

Deliberately naive: plain BFS over the raw edge lists, no indexing. Every
property test in the suite compares index answers against these functions.
Reachability is reflexive (the empty path), so a spatial query vertex whose
own coordinate lies in the rectangle answers TRUE.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import GeosocialGraph, Rect2D

_MATRIX_LIMIT = 2000


def range_reach_bfs(g: GeosocialGraph, q: int, r: Rect2D) -> bool:
    """BFS from q; TRUE on the first visited vertex with a coordinate in r."""
    if not 0 <= q < g.vertex_count:
        raise IndexError(f"vertex id {q} out of range [0, {g.vertex_count})")
    coords = g.coords
    p = coords[q]
    if p is not None and r.contains(p.x, p.y):
        return True
    visited = bytearray(g.vertex_count)
    visited[q] = 1
    queue = deque([q])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if visited[v]:
                continue
            visited[v] = 1
            p = coords[v]
            if p is not None and r.contains(p.x, p.y):
                return True
            queue.append(v)
    return False


@dataclass
class ReachabilityMatrix:
    """Dense reachability, one bitmask row per source vertex."""

    n: int
    rows: list[int]

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)


def full_matrix(g: GeosocialGraph) -> ReachabilityMatrix:
    """n BFS runs; reflexive. Guarded to small graphs (n <= 2000)."""
    n = g.vertex_count
    if n > _MATRIX_LIMIT:
        raise ValueError(f"reachability matrix limited to n <= {_MATRIX_LIMIT}, got {n}")
    rows: list[int] = []
    for src in range(n):
        seen = 1 << src
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                bit = 1 << v
                if not seen & bit:
                    seen |= bit
                    queue.append(v)
        rows.append(seen)
    return ReachabilityMatrix(n, rows)
