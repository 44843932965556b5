"""Geosocial graph model and file ingestion.

A geosocial graph is a directed graph in which a subset of vertices carry a
2D coordinate ("venues" in LBSN data); the rest ("users") are non-spatial.

File formats (UTF-8 text, ``#``-prefixed comment lines ignored):

* edge file:  ``src<ws>dst`` per line, nonnegative integer ids
* coord file: ``id<ws>x<ws>y`` per line

External ids are densified to ``0..n-1`` in order of first appearance
(edge file first, then coord file); the original ids are retained in
``GeosocialGraph.original_ids`` for reporting. Self-loops and duplicate
edges are dropped with counters.
"""

from __future__ import annotations

import hashlib
import math
import random
import sys
from array import array
from dataclasses import dataclass


class GraphFormatError(ValueError):
    """Raised for unreadable or malformed graph input files."""


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")


@dataclass(frozen=True)
class Rect2D:
    """Axis-aligned rectangle; containment is closed on all four boundaries."""

    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self) -> None:
        for v in (self.min_x, self.min_y, self.max_x, self.max_y):
            if not math.isfinite(v):
                raise ValueError("non-finite rectangle coordinate")
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise ValueError(
                f"inverted rectangle [{self.min_x},{self.max_x}]x[{self.min_y},{self.max_y}]"
            )

    def contains(self, x: float, y: float) -> bool:
        return self.min_x <= x <= self.max_x and self.min_y <= y <= self.max_y

    def contains_point(self, p: Point2D) -> bool:
        return self.contains(p.x, p.y)


class GeosocialGraph:
    """Immutable-after-construction directed graph with optional coordinates.

    Attributes:
        vertex_count: number of vertices n (dense ids 0..n-1).
        adjacency: per-vertex ordered list of out-neighbors.
        coords: per-vertex Point2D or None.
        spatial_ids: frozenset of vertices with a coordinate.
        edge_count: number of edges m after dedup/self-loop removal.
        original_ids: dense id -> external id.
        dropped_self_loops / dropped_duplicate_edges: ingestion counters.
    """

    __slots__ = (
        "vertex_count",
        "adjacency",
        "coords",
        "spatial_ids",
        "edge_count",
        "original_ids",
        "dropped_self_loops",
        "dropped_duplicate_edges",
    )

    def __init__(
        self,
        adjacency: list[list[int]],
        coords: list[Point2D | None],
        original_ids: list[int] | None = None,
        dropped_self_loops: int = 0,
        dropped_duplicate_edges: int = 0,
    ) -> None:
        n = len(adjacency)
        if len(coords) != n:
            raise ValueError("adjacency and coords lengths differ")
        for u, nbrs in enumerate(adjacency):
            for v in nbrs:
                if not 0 <= v < n:
                    raise ValueError(f"edge {u}->{v} references invalid vertex")
        self.vertex_count = n
        self.adjacency = adjacency
        self.coords = coords
        self.spatial_ids = frozenset(v for v in range(n) if coords[v] is not None)
        self.edge_count = sum(len(nbrs) for nbrs in adjacency)
        self.original_ids = original_ids if original_ids is not None else list(range(n))
        self.dropped_self_loops = dropped_self_loops
        self.dropped_duplicate_edges = dropped_duplicate_edges

    @property
    def spatial_count(self) -> int:
        return len(self.spatial_ids)

    def out_degree(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex id {v} out of range [0, {self.vertex_count})")
        return len(self.adjacency[v])

    def is_spatial(self, v: int) -> bool:
        return self.coords[v] is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeosocialGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.adjacency == other.adjacency
            and self.coords == other.coords
            and self.original_ids == other.original_ids
        )

    def __repr__(self) -> str:
        return (
            f"GeosocialGraph(n={self.vertex_count}, m={self.edge_count}, "
            f"p={self.spatial_count})"
        )


def _data_lines(path: str):
    """Yield (line_number, stripped_line) for non-comment, non-blank lines."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                yield lineno, line
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc


def load_graph(edges_path: str, coords_path: str) -> GeosocialGraph:
    """Load a geosocial graph from an edge file and a coordinate file.

    Ids are densified in order of first appearance. Self-loops and duplicate
    edges are dropped (counted). Raises GraphFormatError on malformed lines
    (with file and line number), non-finite coordinates, or two coordinate
    lines assigning differing values to one vertex.
    """
    dense_of: dict[int, int] = {}
    original_ids: list[int] = []
    adjacency: list[list[int]] = []
    seen_edges: list[set[int]] = []
    self_loops = 0
    dup_edges = 0

    def intern(ext_id: int) -> int:
        dense = dense_of.get(ext_id)
        if dense is None:
            dense = len(original_ids)
            dense_of[ext_id] = dense
            original_ids.append(ext_id)
            adjacency.append([])
            seen_edges.append(set())
        return dense

    for lineno, line in _data_lines(edges_path):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"{edges_path}:{lineno}: expected 'src dst', got {line!r}")
        try:
            src_ext, dst_ext = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"{edges_path}:{lineno}: non-integer vertex id") from exc
        if src_ext < 0 or dst_ext < 0:
            raise GraphFormatError(f"{edges_path}:{lineno}: negative vertex id")
        src = intern(src_ext)
        dst = intern(dst_ext)
        if src == dst:
            self_loops += 1
            continue
        if dst in seen_edges[src]:
            dup_edges += 1
            continue
        seen_edges[src].add(dst)
        adjacency[src].append(dst)

    coord_of: dict[int, Point2D] = {}
    for lineno, line in _data_lines(coords_path):
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"{coords_path}:{lineno}: expected 'id x y', got {line!r}")
        try:
            ext_id = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError as exc:
            raise GraphFormatError(f"{coords_path}:{lineno}: malformed id or coordinate") from exc
        if ext_id < 0:
            raise GraphFormatError(f"{coords_path}:{lineno}: negative vertex id")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GraphFormatError(f"{coords_path}:{lineno}: non-finite coordinate")
        dense = intern(ext_id)
        point = Point2D(x, y)
        prev = coord_of.get(dense)
        if prev is not None and prev != point:
            raise GraphFormatError(
                f"{coords_path}:{lineno}: vertex {ext_id} reassigned from "
                f"({prev.x}, {prev.y}) to ({x}, {y})"
            )
        coord_of[dense] = point

    coords: list[Point2D | None] = [coord_of.get(v) for v in range(len(original_ids))]
    return GeosocialGraph(
        adjacency,
        coords,
        original_ids,
        dropped_self_loops=self_loops,
        dropped_duplicate_edges=dup_edges,
    )


def write_graph(g: GeosocialGraph, edges_path: str, coords_path: str) -> None:
    """Write a graph back to the two-file format using dense ids.

    Vertices with neither an incident edge nor a coordinate do not appear in
    either file and therefore cannot survive a reload; the format has no way
    to declare an isolated non-spatial vertex.
    """
    with open(edges_path, "w", encoding="utf-8") as fh:
        for u, nbrs in enumerate(g.adjacency):
            for v in nbrs:
                fh.write(f"{u} {v}\n")
    with open(coords_path, "w", encoding="utf-8") as fh:
        for v in sorted(g.spatial_ids):
            p = g.coords[v]
            fh.write(f"{v} {p.x!r} {p.y!r}\n")


def _sample_pairs(rng: random.Random, count: int, space: int, decode) -> list[tuple[int, int]]:
    """Sample `count` distinct pairs out of an integer pair space of `space`."""
    if count > space // 2:
        keys = rng.sample(range(space), count)
        return [decode(k) for k in keys]
    chosen: set[int] = set()
    out: list[tuple[int, int]] = []
    while len(out) < count:
        k = rng.randrange(space)
        if k in chosen:
            continue
        chosen.add(k)
        out.append(decode(k))
    return out


def generate_graph(
    n_users: int,
    n_venues: int,
    social_density: float,
    checkin_density: float,
    seed: int,
) -> GeosocialGraph:
    """Generate a synthetic LBSN-shaped graph, deterministic per seed.

    Users occupy ids 0..n_users-1 and carry no coordinate; venues follow and
    are spatial sinks with coordinates uniform in the unit square. Edge
    counts are round(n_users * density) user->user and user->venue pairs,
    sampled without duplicates or self-loops.
    """
    if n_users < 0 or n_venues < 0:
        raise ValueError("vertex counts must be nonnegative")
    if social_density < 0 or checkin_density < 0:
        raise ValueError("densities must be nonnegative")

    n_social = round(n_users * social_density)
    n_checkin = round(n_users * checkin_density)
    max_social = n_users * (n_users - 1)
    max_checkin = n_users * n_venues
    if n_social > max_social:
        raise ValueError(
            f"social_density {social_density} implies {n_social} edges, "
            f"over the simple-graph maximum {max_social}"
        )
    if n_checkin > max_checkin:
        raise ValueError(
            f"checkin_density {checkin_density} implies {n_checkin} edges, "
            f"over the maximum {max_checkin}"
        )

    rng = random.Random(seed)
    n = n_users + n_venues
    adjacency: list[list[int]] = [[] for _ in range(n)]

    def decode_social(k: int) -> tuple[int, int]:
        u, r = divmod(k, n_users - 1)
        return u, r if r < u else r + 1

    def decode_checkin(k: int) -> tuple[int, int]:
        u, r = divmod(k, n_venues)
        return u, n_users + r

    for u, v in _sample_pairs(rng, n_social, max_social, decode_social):
        adjacency[u].append(v)
    for u, v in _sample_pairs(rng, n_checkin, max_checkin, decode_checkin):
        adjacency[u].append(v)

    coords: list[Point2D | None] = [None] * n
    for v in range(n_users, n):
        coords[v] = Point2D(rng.random(), rng.random())
    return GeosocialGraph(adjacency, coords)


def graph_fingerprint(g: GeosocialGraph) -> tuple[int, int, int, bytes]:
    """(n, m, p, 16-byte digest of the edge stream) identifying a graph."""
    flat = array("q")
    for u, nbrs in enumerate(g.adjacency):
        for v in nbrs:
            flat.append(u)
            flat.append(v)
    if sys.byteorder == "big":
        flat.byteswap()
    digest = hashlib.sha256(flat.tobytes()).digest()[:16]
    return (g.vertex_count, g.edge_count, g.spatial_count, digest)
