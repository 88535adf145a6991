import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from selfheal.graph import (
    Graph,
    apply_plan,
    capture_and_delete,
    propagate_component_id,
    transfer_weight,
)
from selfheal.healing import HEALERS, ID_TRACKING


def make_graph(n, edges, ids=None):
    """Graph with explicit original ids (default: node v gets (v+1)/(n+1))."""
    g = Graph.from_edges(n, edges)
    if ids is None:
        ids = [(v + 1) / (n + 1) for v in range(n)]
    g.set_original_ids(ids)
    return g


def run_one_round(g, healer_tag, victim):
    """Execute the fixed round pipeline for one chosen victim."""
    ctx = capture_and_delete(g, victim)
    transfer_weight(g, ctx)
    plan = HEALERS[healer_tag](ctx, g)
    apply_plan(g, plan)
    if healer_tag in ID_TRACKING and plan.participants:
        propagate_component_id(g, plan.participants)
    return ctx, plan
