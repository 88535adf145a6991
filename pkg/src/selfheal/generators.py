"""Initial graph builders: preferential attachment, k-ary trees, fixtures."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .rng import SplitMix64


@dataclass
class TreeShape:
    """Level/child structure of a complete k-ary tree, kept for the adversary.

    Nodes are indexed in breadth-first order (root = 0), so node v's children
    are arity*v+1 .. arity*v+arity.  tin/tout are preorder intervals giving
    O(1) original-subtree membership tests.
    """

    arity: int
    depth: int
    level_of: np.ndarray
    parent_of: np.ndarray
    children_of: list[list[int]]
    levels: list[list[int]] = field(repr=False)
    _tin: np.ndarray = field(repr=False, default=None)
    _tout: np.ndarray = field(repr=False, default=None)

    def is_descendant(self, u: int, v: int) -> bool:
        """True when u lies strictly inside v's original subtree."""
        return self._tin[v] < self._tin[u] <= self._tout[v]

    def subtree_levels(self, s: int) -> list[list[int]]:
        """Nodes of s's original subtree grouped by level, deepest first."""
        groups = [[s]]
        frontier = [s]
        while True:
            nxt = [c for v in frontier for c in self.children_of[v]]
            if not nxt:
                break
            groups.append(nxt)
            frontier = nxt
        groups.reverse()
        return groups


def preferential_attachment(n: int, m: int, seed) -> Graph:
    """Clique-seeded preferential attachment graph on n nodes.

    Starts from a clique on m+1 nodes; each later node attaches m edges to
    distinct existing nodes sampled from a degree urn (one urn slot per
    endpoint of every edge), redrawing duplicate targets.  Bit-reproducible
    for equal (n, m, seed).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < m + 1:
        raise ValueError("need n >= m + 1")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    urn: list[int] = []
    for u, v in edges:
        urn.append(u)
        urn.append(v)
    for source in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            t = urn[rng.randrange(len(urn))]
            if t not in targets:
                targets.add(t)
        for t in sorted(targets):
            edges.append((t, source))
            urn.append(t)
            urn.append(source)
    return Graph.from_edges(n, edges)


def complete_kary_tree(arity: int, depth: int) -> tuple[Graph, TreeShape]:
    """Complete arity-ary tree of the given depth, with its level structure."""
    if arity < 2:
        raise ValueError("arity must be >= 2")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = (arity ** (depth + 1) - 1) // (arity - 1)
    level_of = np.zeros(n, dtype=np.int32)
    parent_of = np.full(n, -1, dtype=np.int32)
    children_of: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for v in range(1, n):
        p = (v - 1) // arity
        parent_of[v] = p
        level_of[v] = level_of[p] + 1
        children_of[p].append(v)
        edges.append((p, v))
    levels = [[] for _ in range(depth + 1)]
    for v in range(n):
        levels[int(level_of[v])].append(v)
    tin = np.zeros(n, dtype=np.int64)
    tout = np.zeros(n, dtype=np.int64)
    clock = 0
    stack: list[tuple[int, bool]] = [(0, False)]
    while stack:
        v, done = stack.pop()
        if done:
            tout[v] = clock
            continue
        clock += 1
        tin[v] = clock
        stack.append((v, True))
        for c in reversed(children_of[v]):
            stack.append((c, False))
    shape = TreeShape(arity, depth, level_of, parent_of, children_of, levels, tin, tout)
    return Graph.from_edges(n, edges), shape


def fixture(kind: str, n: int) -> Graph:
    """Small named topologies for tests: line, star (hub = 0), cycle."""
    if kind == "line":
        if n < 1:
            raise ValueError("line needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "star":
        if n < 1:
            raise ValueError("star needs n >= 1")
        return Graph.from_edges(n, [(0, i) for i in range(1, n)])
    if kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    raise ValueError(f"unknown fixture kind {kind!r}")
