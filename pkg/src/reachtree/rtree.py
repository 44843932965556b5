"""Static 2D R-tree over labeled points, bulk loaded with sort-tile-recursive
packing.

The tree is never updated after construction. Packing distributes entries
evenly over ceil(N/M) groups per level, which keeps every non-root node
between ceil(M/2) and M entries and all leaves at the same depth. Build
order is canonical (points sorted by x, y, id before tiling), so any
permutation of the same multiset produces the same tree.
"""

from __future__ import annotations

import math
from .graph import Point2D, Rect2D


class _Node:
    __slots__ = ("min_x", "min_y", "max_x", "max_y", "children", "entries", "count")

    def __init__(self, children, entries, count):
        self.children = children  # list[_Node] or None for leaves
        self.entries = entries    # list[(x, y, vid)] or None for internal nodes
        self.count = count        # points in this subtree
        if entries is not None:
            xs = [e[0] for e in entries]
            ys = [e[1] for e in entries]
        else:
            xs = [c.min_x for c in children] + [c.max_x for c in children]
            ys = [c.min_y for c in children] + [c.max_y for c in children]
        self.min_x = min(xs)
        self.max_x = max(xs)
        self.min_y = min(ys)
        self.max_y = max(ys)


def _even_splits(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def _tile(items: list, M: int, xkey, ykey) -> list[list]:
    """Partition items into ceil(len/M) spatially clustered groups."""
    n = len(items)
    group_count = -(-n // M)
    if group_count == 1:
        return [items]
    slice_count = math.isqrt(group_count)
    if slice_count * slice_count < group_count:
        slice_count += 1
    groups_per_slice = _even_splits(group_count, slice_count)
    group_sizes = _even_splits(n, group_count)

    by_x = sorted(items, key=xkey)
    groups: list[list] = []
    pos = 0
    gi = 0
    for slice_groups in groups_per_slice:
        take = sum(group_sizes[gi : gi + slice_groups])
        chunk = sorted(by_x[pos : pos + take], key=ykey)
        pos += take
        cpos = 0
        for _ in range(slice_groups):
            size = group_sizes[gi]
            groups.append(chunk[cpos : cpos + size])
            cpos += size
            gi += 1
    return groups


class RTree2D:
    """Bulk-loaded R-tree; query with intersects() / count_in().

    An empty tree is a distinguished zero-size value with no root.
    """

    __slots__ = ("root", "size", "fanout", "height")

    def __init__(self, root: _Node | None, size: int, fanout: int, height: int):
        self.root = root
        self.size = size
        self.fanout = fanout
        self.height = height

    @classmethod
    def bulk_build(cls, points: list[tuple[Point2D, int]], fanout: int = 16) -> "RTree2D":
        """Build from (point, vertex id) pairs; duplicates are kept.

        Raises ValueError for fanout < 2.
        """
        if fanout < 2:
            raise ValueError(f"fanout must be >= 2, got {fanout}")
        if not points:
            return cls(None, 0, fanout, 0)
        entries = sorted((p.x, p.y, vid) for p, vid in points)
        leaf_groups = _tile(entries, fanout, xkey=lambda e: (e[0], e[1], e[2]),
                            ykey=lambda e: (e[1], e[0], e[2]))
        level = [_Node(None, grp, len(grp)) for grp in leaf_groups]
        height = 1
        while len(level) > 1:
            node_items = _tile(
                level,
                fanout,
                xkey=lambda nd: (nd.min_x + nd.max_x, nd.min_y + nd.max_y),
                ykey=lambda nd: (nd.min_y + nd.max_y, nd.min_x + nd.max_x),
            )
            level = [
                _Node(grp, None, sum(nd.count for nd in grp)) for grp in node_items
            ]
            height += 1
        return cls(level[0], len(entries), fanout, height)

    def intersects(self, r: Rect2D) -> bool:
        """True iff any stored point lies in r (closed boundaries)."""
        if self.root is None:
            return False
        rminx, rminy, rmaxx, rmaxy = r.min_x, r.min_y, r.max_x, r.max_y
        stack = [self.root]
        while stack:
            node = stack.pop()
            if (
                node.max_x < rminx
                or node.min_x > rmaxx
                or node.max_y < rminy
                or node.min_y > rmaxy
            ):
                continue
            if node.entries is not None:
                for x, y, _vid in node.entries:
                    if rminx <= x <= rmaxx and rminy <= y <= rmaxy:
                        return True
            else:
                stack.extend(node.children)
        return False

    def count_in(self, r: Rect2D) -> int:
        """Exact number of stored points inside r (closed boundaries)."""
        if self.root is None:
            return 0
        rminx, rminy, rmaxx, rmaxy = r.min_x, r.min_y, r.max_x, r.max_y
        total = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            if (
                node.max_x < rminx
                or node.min_x > rmaxx
                or node.max_y < rminy
                or node.min_y > rmaxy
            ):
                continue
            if (
                rminx <= node.min_x
                and node.max_x <= rmaxx
                and rminy <= node.min_y
                and node.max_y <= rmaxy
            ):
                total += node.count
                continue
            if node.entries is not None:
                for x, y, _vid in node.entries:
                    if rminx <= x <= rmaxx and rminy <= y <= rmaxy:
                        total += 1
            else:
                stack.extend(node.children)
        return total

    def points(self):
        """Yield all stored (x, y, vertex id) entries."""
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.entries is not None:
                yield from node.entries
            else:
                stack.extend(node.children)

    def node_count(self) -> int:
        if self.root is None:
            return 0
        total = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            total += 1
            if node.children is not None:
                stack.extend(node.children)
        return total

    def memory_footprint(self) -> int:
        """Deterministic size accounting in bytes.

        header 24 (size, fanout, height)
        + 40 per node (4 rectangle floats at 8 bytes, 8 bytes bookkeeping)
        + 24 per stored point (x, y at 8 bytes, 8-byte vertex id).
        """
        return 24 + 40 * self.node_count() + 24 * self.size

    def check_invariants(self) -> None:
        """Walk the structure; raise AssertionError on any violation."""
        if self.root is None:
            assert self.size == 0 and self.height == 0, "empty tree with nonzero size"
            return
        assert self.size > 0
        min_fill = -(-self.fanout // 2)
        leaf_depths = set()
        seen_points = 0

        def walk(node: _Node, depth: int, is_root: bool) -> None:
            nonlocal seen_points
            assert node.min_x <= node.max_x and node.min_y <= node.max_y
            if node.entries is not None:
                leaf_depths.add(depth)
                assert node.count == len(node.entries)
                assert 1 <= len(node.entries) <= self.fanout
                if not is_root:
                    assert len(node.entries) >= min_fill, "leaf under min fill"
                for x, y, _vid in node.entries:
                    assert node.min_x <= x <= node.max_x, "point outside leaf box"
                    assert node.min_y <= y <= node.max_y, "point outside leaf box"
                seen_points += len(node.entries)
            else:
                width = len(node.children)
                assert width <= self.fanout, "fanout exceeded"
                if is_root:
                    assert width >= 1
                else:
                    assert width >= min_fill, "internal node under min fill"
                assert node.count == sum(c.count for c in node.children)
                for child in node.children:
                    assert child.min_x >= node.min_x and child.max_x <= node.max_x, (
                        "child box escapes parent"
                    )
                    assert child.min_y >= node.min_y and child.max_y <= node.max_y, (
                        "child box escapes parent"
                    )
                    walk(child, depth + 1, False)

        walk(self.root, 0, True)
        assert len(leaf_depths) == 1, "leaves at unequal depths"
        assert seen_points == self.size, "size does not match stored points"


def bulk_build(points: list[tuple[Point2D, int]], fanout: int = 16) -> RTree2D:
    return RTree2D.bulk_build(points, fanout)
