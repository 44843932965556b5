"""Strongly connected components and the condensation DAG.

The SCC routine is an iterative single-pass lowlink computation with an
explicit recursion stack, so multi-million-vertex graphs do not hit the
interpreter recursion limit.

Two decomposition modes:

* FULL: components over every vertex.
* SOCIAL_ONLY: components over the subgraph that excludes spatial sinks
  (spatial vertices without outgoing edges). A spatial vertex that does have
  outgoing edges stays in the decomposition and is treated like a social
  vertex, while still contributing its own coordinate to its component's
  spatial member list. Excluded vertices get component id EXCLUDED.

In SOCIAL_ONLY mode ``member_spatial[c]`` holds the spatial vertices that
are direct out-neighbors of any member of c, plus spatial members of c
itself; in FULL mode it holds exactly the spatial members of c.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum

from .graph import GeosocialGraph

EXCLUDED = -1


class Mode(Enum):
    FULL = "full"
    SOCIAL_ONLY = "social_only"


class CycleError(RuntimeError):
    """Topological ordering found a cycle; the condensation is corrupt."""


@dataclass
class Condensation:
    """Component membership plus the acyclic component-level graph.

    comp_of[v] is the component of vertex v, or EXCLUDED for vertices left
    out of the decomposition (SOCIAL_ONLY mode only). dag_adjacency holds
    deduplicated, sorted successor lists without self-edges. topo_order is
    the unique smallest-id-first topological order of the components.
    """

    mode: Mode
    comp_of: list[int]
    comp_count: int
    dag_adjacency: list[list[int]]
    member_spatial: list[list[int]]
    topo_order: list[int] = field(default_factory=list)

    def members(self) -> list[list[int]]:
        """Vertex lists per component, ascending within each component."""
        out: list[list[int]] = [[] for _ in range(self.comp_count)]
        for v, c in enumerate(self.comp_of):
            if c != EXCLUDED:
                out[c].append(v)
        return out


def _tarjan(n: int, adjacency: list[list[int]], participates: list[bool]) -> tuple[list[int], int]:
    """Assign component ids to participating vertices; others get EXCLUDED."""
    comp_of = [EXCLUDED] * n
    order = [0] * n        # discovery index per vertex
    lowlink = [0] * n
    visited = [False] * n
    on_stack = [False] * n
    scc_stack: list[int] = []
    comp_count = 0
    counter = 0

    for root in range(n):
        if visited[root] or not participates[root]:
            continue
        # explicit DFS frames: (vertex, index into its adjacency list)
        work = [(root, 0)]
        while work:
            v, edge_i = work.pop()
            if edge_i == 0:
                visited[v] = True
                order[v] = lowlink[v] = counter
                counter += 1
                scc_stack.append(v)
                on_stack[v] = True
            recurse = False
            nbrs = adjacency[v]
            while edge_i < len(nbrs):
                w = nbrs[edge_i]
                edge_i += 1
                if not participates[w]:
                    continue
                if not visited[w]:
                    work.append((v, edge_i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    if order[w] < lowlink[v]:
                        lowlink[v] = order[w]
            if recurse:
                continue
            if lowlink[v] == order[v]:
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = False
                    comp_of[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
    return comp_of, comp_count


def _kahn_order(comp_count: int, dag_adjacency: list[list[int]]) -> list[int]:
    indegree = [0] * comp_count
    for nbrs in dag_adjacency:
        for c in nbrs:
            indegree[c] += 1
    heap = [c for c in range(comp_count) if indegree[c] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        c = heapq.heappop(heap)
        order.append(c)
        for d in dag_adjacency[c]:
            indegree[d] -= 1
            if indegree[d] == 0:
                heapq.heappush(heap, d)
    if len(order) != comp_count:
        raise CycleError("component graph contains a cycle")
    return order


def condense(g: GeosocialGraph, mode: Mode = Mode.FULL) -> Condensation:
    """Decompose g into strongly connected components under the given mode."""
    n = g.vertex_count
    if mode is Mode.FULL:
        participates = [True] * n
    else:
        participates = [
            g.coords[v] is None or len(g.adjacency[v]) > 0 for v in range(n)
        ]

    comp_of, comp_count = _tarjan(n, g.adjacency, participates)

    edge_sets: list[set[int]] = [set() for _ in range(comp_count)]
    spatial_sets: list[set[int]] = [set() for _ in range(comp_count)]
    coords = g.coords
    for v in range(n):
        cv = comp_of[v]
        if cv == EXCLUDED:
            continue
        if coords[v] is not None:
            spatial_sets[cv].add(v)
        for w in g.adjacency[v]:
            cw = comp_of[w]
            if cw == EXCLUDED:
                # spatial sink: contributes a point, never a DAG edge
                spatial_sets[cv].add(w)
            else:
                if cw != cv:
                    edge_sets[cv].add(cw)
                if mode is Mode.SOCIAL_ONLY and coords[w] is not None:
                    spatial_sets[cv].add(w)

    dag_adjacency = [sorted(s) for s in edge_sets]
    member_spatial = [sorted(s) for s in spatial_sets]
    topo = _kahn_order(comp_count, dag_adjacency)
    return Condensation(
        mode=mode,
        comp_of=comp_of,
        comp_count=comp_count,
        dag_adjacency=dag_adjacency,
        member_spatial=member_spatial,
        topo_order=topo,
    )


def topological_order(c: Condensation) -> list[int]:
    """Recompute the deterministic topological order of c's components.

    Ties are broken by smallest component id. Raises CycleError if the
    component graph is not acyclic, which would mean condense() is broken.
    """
    return _kahn_order(c.comp_count, c.dag_adjacency)
