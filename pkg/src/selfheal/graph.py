"""Evolving network state and the primitive round mechanics.

The graph carries two symmetric edge sets over the same stable node ids:
the real edges E (``adj``) and the healing edges E' added by repair
(``heal_adj``, always a subset of E).  Per-node attributes live in parallel
numpy arrays indexed by node id; ids are assigned once and never reused, so
dead nodes are just masked out of ``alive``.

Round mechanics are free functions so the pipeline order stays explicit and
testable: capture_and_delete -> transfer_weight -> (healer plan) ->
apply_plan -> propagate_component_id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels

NodeId = int


class DeadNodeError(RuntimeError):
    """An operation referenced a deleted or unknown node (a harness bug)."""


class ForestMergeError(RuntimeError):
    """Propagation seeds ended up in more than one E' component."""


@dataclass(frozen=True)
class NodeState:
    """Read-only snapshot of one node's bookkeeping."""

    original_id: float
    component_id: float
    weight: int
    initial_degree: int
    id_change_count: int
    messages_sent: int
    messages_received: int


@dataclass(frozen=True)
class DeletionContext:
    """Everything captured about a victim at deletion time, pre-mutation.

    Neighbor ids, component labels, original ids and degree increases are
    snapshot before any edge is removed, so healers and weight transfer see
    a consistent picture regardless of later mutation.
    """

    victim: NodeId
    victim_weight: int
    victim_component_id: float
    g_neighbors: frozenset[NodeId]
    gprime_neighbors: frozenset[NodeId]
    neighbor_component_ids: dict[NodeId, float]
    neighbor_original_ids: dict[NodeId, float]
    neighbor_deltas: dict[NodeId, int]


class Graph:
    """Mutable undirected graph with healing-edge subset and node state."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("graph needs at least one node")
        self.n_initial = n
        self.n_alive = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.heal_adj: list[set[int]] = [set() for _ in range(n)]
        self.alive = np.ones(n, dtype=bool)
        self.deg = np.zeros(n, dtype=np.int32)
        self.deg0 = np.zeros(n, dtype=np.int32)
        self.original_id = np.full(n, np.nan, dtype=np.float64)
        self.component_id = np.full(n, np.nan, dtype=np.float64)
        self.weight = np.ones(n, dtype=np.int64)
        self.id_changes = np.zeros(n, dtype=np.int32)
        self.msg_sent = np.zeros(n, dtype=np.int64)
        self.msg_recv = np.zeros(n, dtype=np.int64)
        self.total_live_weight = n
        self.dropped_weight = 0
        self.total_messages = 0
        self.initial_adj: list[tuple[int, ...]] = []
        self._init_dists: np.ndarray | None = None

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g._add_initial_edge(u, v)
        g._freeze_initial()
        return g

    def _add_initial_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop ({u},{v})")
        if v in self.adj[u]:
            raise ValueError(f"duplicate edge ({u},{v})")
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.deg[u] += 1
        self.deg[v] += 1

    def _freeze_initial(self) -> None:
        self.deg0 = self.deg.copy()
        self.initial_adj = [tuple(sorted(s)) for s in self.adj]

    # -- identity ---------------------------------------------------------

    def assign_original_ids(self, rng) -> None:
        """Draw each node's fixed random id in [0,1); duplicates are redrawn."""
        seen: set[float] = set()
        for v in range(self.n_initial):
            r = rng.random()
            while r in seen:
                r = rng.random()
            seen.add(r)
            self.original_id[v] = r
            self.component_id[v] = r

    def set_original_ids(self, ids) -> None:
        """Fix original ids explicitly (fixtures and hand traces)."""
        ids = list(ids)
        if len(ids) != self.n_initial or len(set(ids)) != len(ids):
            raise ValueError("need one distinct id per node")
        self.original_id[:] = ids
        self.component_id[:] = ids

    # -- views ------------------------------------------------------------

    def node_state(self, v: NodeId) -> NodeState:
        self.check_alive(v)
        return NodeState(
            original_id=float(self.original_id[v]),
            component_id=float(self.component_id[v]),
            weight=int(self.weight[v]),
            initial_degree=int(self.deg0[v]),
            id_change_count=int(self.id_changes[v]),
            messages_sent=int(self.msg_sent[v]),
            messages_received=int(self.msg_recv[v]),
        )

    def live_nodes(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def has_heal_edge(self, u: int, v: int) -> bool:
        return v in self.heal_adj[u]

    def edge_count(self) -> int:
        return int(self.deg[self.alive].sum()) // 2

    def heal_edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n_initial) for v in self.heal_adj[u] if u < v}

    def check_alive(self, v: NodeId) -> None:
        if not (0 <= v < self.n_initial) or not self.alive[v]:
            raise DeadNodeError(f"node {v} is not live")

    def is_connected(self) -> bool:
        """True when all live nodes form one component (trivially for n<=1)."""
        if self.n_alive <= 1:
            return True
        start = int(np.argmax(self.alive))
        return kernels.reach_count(self.adj, start) == self.n_alive

    def initial_all_dists(self) -> np.ndarray:
        """All-pairs BFS distances of the t=0 graph, computed once."""
        if self._init_dists is None:
            sources = np.arange(self.n_initial, dtype=np.int32)
            self._init_dists = kernels.all_dists(self.initial_adj, sources)
        return self._init_dists


# -- round primitives -------------------------------------------------------


def capture_and_delete(g: Graph, v: NodeId) -> DeletionContext:
    """Snapshot the victim's neighborhood, then remove it from E and E'.

    Weight transfer is deliberately not performed here; the caller sequences
    it explicitly (see transfer_weight).
    """
    g.check_alive(v)
    g_nbrs = frozenset(g.adj[v])
    gp_nbrs = frozenset(g.heal_adj[v])
    ctx = DeletionContext(
        victim=v,
        victim_weight=int(g.weight[v]),
        victim_component_id=float(g.component_id[v]),
        g_neighbors=g_nbrs,
        gprime_neighbors=gp_nbrs,
        neighbor_component_ids={u: float(g.component_id[u]) for u in g_nbrs},
        neighbor_original_ids={u: float(g.original_id[u]) for u in g_nbrs},
        neighbor_deltas={u: int(g.deg[u] - g.deg0[u]) for u in g_nbrs},
    )
    for u in g_nbrs:
        g.adj[u].remove(v)
        g.deg[u] -= 1
    for u in gp_nbrs:
        g.heal_adj[u].remove(v)
    g.adj[v] = set()
    g.heal_adj[v] = set()
    g.deg[v] = 0
    g.alive[v] = False
    g.n_alive -= 1
    g.total_live_weight -= ctx.victim_weight
    return ctx


def unique_neighbors(ctx: DeletionContext) -> list[NodeId]:
    """One representative per component-id partition of the victim's neighbors.

    The partition sharing the victim's own label is skipped (those nodes are
    reattached through N(v,G') anyway); each remaining partition contributes
    its lowest-original-id member.  Result is ordered by original id and is
    disjoint from N(v,G').
    """
    best: dict[float, NodeId] = {}
    for u in ctx.g_neighbors:
        cid = ctx.neighbor_component_ids[u]
        if cid == ctx.victim_component_id:
            continue
        cur = best.get(cid)
        if cur is None or ctx.neighbor_original_ids[u] < ctx.neighbor_original_ids[cur]:
            best[cid] = u
    return sorted(best.values(), key=lambda u: ctx.neighbor_original_ids[u])


def apply_plan(g: Graph, plan) -> None:
    """Add a reconnection plan's edges to E (and E' when healing-marked).

    Re-adding an edge already in E leaves E untouched; healing-marked edges
    always enter E' (required for the forest merge when two participants were
    already G-adjacent).
    """
    for (u, v), healing in zip(plan.edges, plan.healing):
        g.check_alive(u)
        g.check_alive(v)
        if v not in g.adj[u]:
            g.adj[u].add(v)
            g.adj[v].add(u)
            g.deg[u] += 1
            g.deg[v] += 1
        if healing:
            g.heal_adj[u].add(v)
            g.heal_adj[v].add(u)


def transfer_weight(g: Graph, ctx: DeletionContext) -> NodeId | None:
    """Move the victim's weight to one surviving neighbor.

    E'-neighbors are preferred over plain G-neighbors; ties break to the
    lowest original id.  With no survivors at all the weight leaves the
    system and is tracked in g.dropped_weight.
    """
    pool = ctx.gprime_neighbors or ctx.g_neighbors
    if not pool:
        g.dropped_weight += ctx.victim_weight
        return None
    recipient = min(pool, key=lambda u: ctx.neighbor_original_ids[u])
    g.weight[recipient] += ctx.victim_weight
    g.total_live_weight += ctx.victim_weight
    return recipient


def propagate_component_id(g: Graph, seeds) -> tuple[float, list[NodeId]]:
    """Flood the minimum stored id through the E' component holding `seeds`.

    Every member with a larger id adopts the minimum, counts one id change
    and one message per current G-neighbor (accounted at both endpoints).
    Seeds spanning several E' components mean a failed forest merge.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("propagation needs at least one seed")
    for s in seeds:
        g.check_alive(s)
    min_id, changed, ok, msgs = kernels.flood_adopt(
        g.heal_adj, g.adj, seeds, g.component_id,
        g.id_changes, g.msg_sent, g.msg_recv, g.deg,
    )
    if not ok:
        raise ForestMergeError(f"seeds {seeds} span multiple E' components")
    g.total_messages += msgs
    return min_id, changed


def degree_delta(g: Graph, v: NodeId) -> int:
    """Current degree minus initial degree (negative when neighbors died)."""
    g.check_alive(v)
    return int(g.deg[v] - g.deg0[v])
