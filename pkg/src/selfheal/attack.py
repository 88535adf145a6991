"""Attack strategies: who dies each round.

Pick functions raise on impossible picks; the attack driver objects used by
the harness translate terminal situations (empty graph, no edges left, level
attack finished) into None, which ends the run.
"""

from __future__ import annotations

import numpy as np

from .generators import TreeShape
from .graph import Graph, NodeId
from .rng import SplitMix64


def pick_max_node(g: Graph, rng: SplitMix64) -> NodeId:
    """Highest-degree live node; ties go to the lowest original id."""
    if g.n_alive == 0:
        raise ValueError("empty graph")
    deg = np.where(g.alive, g.deg, -1)
    candidates = np.flatnonzero(deg == deg.max())
    return int(candidates[np.argmin(g.original_id[candidates])])


def pick_neighbor_of_max(g: Graph, rng: SplitMix64) -> NodeId:
    """Uniformly random live neighbor of the current max-degree node."""
    hub = pick_max_node(g, rng)
    neighbors = sorted(g.adj[hub])
    if not neighbors:
        raise ValueError("all live nodes are isolated")
    return neighbors[rng.randrange(len(neighbors))]


def pick_random(g: Graph, rng: SplitMix64) -> NodeId:
    """Uniformly random live node."""
    live = g.live_nodes()
    if not len(live):
        raise ValueError("empty graph")
    return int(live[rng.randrange(len(live))])


class MaxNodeAttack:
    def pick(self, g: Graph, rng: SplitMix64) -> NodeId | None:
        return None if g.n_alive == 0 else pick_max_node(g, rng)


class NeighborOfMaxAttack:
    def pick(self, g: Graph, rng: SplitMix64) -> NodeId | None:
        try:
            return pick_neighbor_of_max(g, rng)
        except ValueError:
            return None


class RandomAttack:
    def pick(self, g: Graph, rng: SplitMix64) -> NodeId | None:
        return None if g.n_alive == 0 else pick_random(g, rng)


def prune_sequence(shape: TreeShape, g: Graph, r: NodeId, s: NodeId):
    """Victims of s's original subtree, leaf levels first, ending with s.

    Within a level the lowest original id dies first; already-deleted nodes
    are skipped.  s must lie strictly inside r's original subtree.
    """
    if not shape.is_descendant(s, r):
        raise ValueError(f"{s} is not inside the original subtree of {r}")
    for level_nodes in shape.subtree_levels(s):
        for v in sorted(level_nodes, key=lambda u: g.original_id[u]):
            if g.alive[v]:
                yield v


class LevelAttack:
    """Level-by-level deletion of an (M+2)-ary tree, pruning excess children.

    Walks levels depth-1 down to 0.  For each live node v, its current
    children are the live G-neighbors that were original descendants of v;
    when more than M+2 remain, the excess with the least degree increase are
    pruned (whole original subtrees, bottom-up) before v itself is deleted.
    Returns None once the root has been emitted.
    """

    def __init__(self, shape: TreeShape, degree_bound: int):
        if shape.arity != degree_bound + 2:
            raise ValueError(
                f"level attack with M={degree_bound} needs an {degree_bound + 2}-ary tree,"
                f" got arity {shape.arity}"
            )
        self.shape = shape
        self.m = degree_bound
        self._iter = None
        self._graph = None

    def pick(self, g: Graph, rng: SplitMix64) -> NodeId | None:
        if self._iter is None:
            if g.n_initial != len(self.shape.level_of):
                raise ValueError("graph does not match the attack's tree shape")
            self._graph = g
            self._iter = self._drive(g)
        elif g is not self._graph:
            raise ValueError("level attack is bound to a single run")
        return next(self._iter, None)

    def _drive(self, g: Graph):
        shape = self.shape
        keep = self.m + 2
        for level in range(shape.depth - 1, -1, -1):
            for v in shape.levels[level]:
                if not g.alive[v]:
                    continue
                children = [u for u in g.adj[v] if shape.is_descendant(u, v)]
                excess = len(children) - keep
                if excess > 0:
                    doomed = sorted(
                        children,
                        key=lambda u: (int(g.deg[u] - g.deg0[u]), g.original_id[u]),
                    )[:excess]
                    for s in doomed:
                        yield from prune_sequence(shape, g, v, s)
                yield v


def make_attack(tag: str, shape: TreeShape | None = None):
    """Build an attack driver from its config string."""
    if tag == "max":
        return MaxNodeAttack()
    if tag == "nms":
        return NeighborOfMaxAttack()
    if tag == "random":
        return RandomAttack()
    if tag.startswith("level:"):
        try:
            m = int(tag.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"malformed level attack {tag!r}") from None
        if m < 1:
            raise ValueError("level attack needs M >= 1")
        if shape is None:
            raise ValueError("level attack requires a k-ary tree graph")
        return LevelAttack(shape, m)
    raise ValueError(f"unknown attack {tag!r}")
