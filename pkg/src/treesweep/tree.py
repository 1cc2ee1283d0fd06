"""Undirected tree graphs and the structural quantities the sweep protocols use.

Nodes are integers ``1..n``. Trees are immutable after construction and safe
to share between concurrently running node executors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotATreeError


@dataclass(frozen=True)
class Tree:
    """Undirected tree on nodes ``1..n`` with sorted per-node neighbor lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]  # index 0 unused

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as (i, j) pairs with i < j, sorted."""
        return [(i, j) for i in self.nodes for j in self.adj[i] if i < j]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]


@dataclass(frozen=True)
class RootedTree:
    """A tree plus a root, with parent/children maps from BFS traversal.

    Node labels are kept as-is; the orientation lives entirely in the
    ``parent`` and ``children`` maps.
    """

    tree: Tree
    root: int
    parent: dict[int, int]  # absent for root
    children: dict[int, tuple[int, ...]]
    level: dict[int, int] = field(repr=False)

    def bfs_order(self) -> list[int]:
        """Nodes sorted root-first by level, ties by label."""
        return sorted(self.tree.nodes, key=lambda i: (self.level[i], i))


def build_tree(n: int, edges) -> Tree:
    """Validate an edge list and build a :class:`Tree`.

    Raises :class:`NotATreeError` if the edges do not form a connected
    acyclic graph on ``n`` nodes.
    """
    if n < 1:
        raise NotATreeError("bad node id", f"n={n}")
    seen = set()
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    count = 0
    for i, j in edges:
        i, j = int(i), int(j)
        if not (1 <= i <= n and 1 <= j <= n):
            raise NotATreeError("bad node id", f"({i},{j})")
        if i == j:
            raise NotATreeError("self-loop", f"({i},{j})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise NotATreeError("duplicate edge", f"({i},{j})")
        seen.add(key)
        adj[i].add(j)
        adj[j].add(i)
        count += 1
    if count != n - 1:
        # n-1 edges + connected <=> tree; too many edges on n nodes => cycle
        raise NotATreeError("cycle" if count > n - 1 else "disconnected",
                            f"{count} edges on {n} nodes")
    if _reachable_count(adj, n) != n:
        raise NotATreeError("disconnected")
    return Tree(n=n, adj=tuple(tuple(sorted(s)) for s in adj))


def _reachable_count(adj, n: int) -> int:
    seen = {1}
    queue = deque([1])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen)


def root_at(tree: Tree, root: int) -> RootedTree:
    """Orient the tree away from ``root`` by breadth-first traversal."""
    if not 1 <= root <= tree.n:
        raise NotATreeError("bad node id", f"root={root}")
    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {i: [] for i in tree.nodes}
    level = {root: 0}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in tree.neighbors(i):
            if j not in level:
                level[j] = level[i] + 1
                parent[j] = i
                children[i].append(j)
                queue.append(j)
    return RootedTree(
        tree=tree,
        root=root,
        parent=parent,
        children={i: tuple(c) for i, c in children.items()},
        level=level,
    )


def leaves(tree: Tree) -> frozenset[int]:
    """Nodes with at most one neighbor (includes an isolated single node)."""
    return frozenset(i for i in tree.nodes if tree.degree(i) <= 1)


def leaves_excluding(tree: Tree, root: int) -> frozenset[int]:
    """Leaves with the designated root removed."""
    return leaves(tree) - {root}


def bfs_levels(tree: Tree, source: int) -> dict[int, int]:
    """Distance from ``source`` to every node."""
    level = {source: 0}
    queue = deque([source])
    while queue:
        i = queue.popleft()
        for j in tree.neighbors(i):
            if j not in level:
                level[j] = level[i] + 1
                queue.append(j)
    return level


def distance(tree: Tree, i: int, j: int) -> int:
    """Number of edges on the unique simple path between ``i`` and ``j``."""
    if i == j:
        return 0
    return bfs_levels(tree, i)[j]


def distance_matrix(tree: Tree):
    """All-pairs distances as a nested dict, one BFS per node."""
    return {i: bfs_levels(tree, i) for i in tree.nodes}


def depth(rooted: RootedTree) -> int:
    """Maximum distance from the root to any node."""
    return max(rooted.level.values())


def eccentricity(tree: Tree, i: int) -> int:
    return max(bfs_levels(tree, i).values())


def central_nodes(tree: Tree) -> frozenset[int]:
    """Nodes of minimum eccentricity, computed exhaustively.

    On a tree this set has one or two elements; when two, they are adjacent.
    """
    ecc = {i: eccentricity(tree, i) for i in tree.nodes}
    best = min(ecc.values())
    return frozenset(i for i, e in ecc.items() if e == best)
