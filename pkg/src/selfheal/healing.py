"""Healing strategies: pure planners from a deletion context to new edges.

All four strategies reconnect some subset of the victim's neighbors.  The
ID-tracking ones (dash, sdash, btree) wire only unique neighbors plus the
victim's E'-neighbors and mark every edge as a healing edge; the naive
graph healer wires all G-neighbors and marks only edges that are new to E.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import DeletionContext, Graph, NodeId, unique_neighbors


@dataclass
class ReconnectionPlan:
    edges: list[tuple[NodeId, NodeId]] = field(default_factory=list)
    healing: list[bool] = field(default_factory=list)
    participants: list[NodeId] = field(default_factory=list)


def complete_binary_tree_edges(ordered) -> list[tuple[NodeId, NodeId]]:
    """Edges of the complete binary tree over `ordered` (left-right, top-down).

    Position i is wired to its children at 2i+1 and 2i+2, i.e. to its parent
    at (i-1)//2, giving len(ordered)-1 edges.
    """
    ordered = list(ordered)
    if len(set(ordered)) != len(ordered):
        raise ValueError("duplicate nodes in tree ordering")
    return [(ordered[(i - 1) // 2], ordered[i]) for i in range(1, len(ordered))]


def _tracked_participants(ctx: DeletionContext) -> list[NodeId]:
    """UN(v,G) plus N(v,G'), sorted by (degree increase, original id)."""
    members = set(unique_neighbors(ctx)) | ctx.gprime_neighbors
    return sorted(
        members,
        key=lambda u: (ctx.neighbor_deltas[u], ctx.neighbor_original_ids[u]),
    )


def heal_dash(ctx: DeletionContext, g: Graph) -> ReconnectionPlan:
    """Degree-based healing: binary tree in increasing degree-increase order.

    Max-increase participants land in leaf positions and gain nothing; no
    node gains more than 2 edges in a round.
    """
    participants = _tracked_participants(ctx)
    edges = complete_binary_tree_edges(participants)
    return ReconnectionPlan(edges, [True] * len(edges), participants)


def heal_sdash(ctx: DeletionContext, g: Graph) -> ReconnectionPlan:
    """Surrogate healing: one low-increase node absorbs the victim's role.

    If some participant w can take edges to all the others without exceeding
    the current maximum degree increase (delta(w) + |S| - 1 <= max delta),
    star everything on the cheapest such w; otherwise fall back to dash.
    """
    participants = _tracked_participants(ctx)
    if len(participants) > 1:
        deltas = ctx.neighbor_deltas
        max_delta = max(deltas[u] for u in participants)
        size = len(participants)
        for w in participants:  # sorted by (delta, id): first qualifier wins
            if deltas[w] + size - 1 <= max_delta:
                edges = [(w, s) for s in participants if s != w]
                return ReconnectionPlan(edges, [True] * len(edges), participants)
    return heal_dash(ctx, g)


def heal_binary_tree(ctx: DeletionContext, g: Graph) -> ReconnectionPlan:
    """Naive-but-acyclic healing: binary tree ordered by original id only."""
    members = set(unique_neighbors(ctx)) | ctx.gprime_neighbors
    participants = sorted(members, key=lambda u: ctx.neighbor_original_ids[u])
    edges = complete_binary_tree_edges(participants)
    return ReconnectionPlan(edges, [True] * len(edges), participants)


def heal_graph(ctx: DeletionContext, g: Graph) -> ReconnectionPlan:
    """Fully naive healing: binary tree over all G-neighbors, cycles allowed.

    No component information is consulted, so edges may duplicate existing
    ones; those are flagged non-healing and apply as no-ops.  Callers skip
    id propagation for this healer.
    """
    participants = sorted(ctx.g_neighbors, key=lambda u: ctx.neighbor_original_ids[u])
    edges = complete_binary_tree_edges(participants)
    healing = [v not in g.adj[u] for u, v in edges]
    return ReconnectionPlan(edges, healing, participants)


HEALERS = {
    "graph": heal_graph,
    "btree": heal_binary_tree,
    "dash": heal_dash,
    "sdash": heal_sdash,
}

ID_TRACKING = frozenset({"btree", "dash", "sdash"})
