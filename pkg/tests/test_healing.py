import pytest

import oracles
from conftest import make_graph, run_one_round

from selfheal.graph import (
    DeletionContext,
    apply_plan,
    capture_and_delete,
    degree_delta,
    propagate_component_id,
    transfer_weight,
)
from selfheal.healing import (
    ReconnectionPlan,
    complete_binary_tree_edges,
    heal_binary_tree,
    heal_dash,
    heal_sdash,
)
from selfheal.generators import preferential_attachment
from selfheal.rng import SplitMix64
from selfheal.attack import pick_random


def test_cbt_edges_trivial():
    assert complete_binary_tree_edges([]) == []
    assert complete_binary_tree_edges(["a"]) == []


def test_cbt_edges_three():
    assert set(complete_binary_tree_edges(["a", "b", "c"])) == {("a", "b"), ("a", "c")}


def test_cbt_edges_five():
    got = set(complete_binary_tree_edges(["a", "b", "c", "d", "e"]))
    assert got == {("a", "b"), ("a", "c"), ("b", "d"), ("b", "e")}


def test_cbt_edges_rejects_duplicates():
    with pytest.raises(ValueError):
        complete_binary_tree_edges([1, 2, 1])


def _ctx_with_deltas(table):
    """DeletionContext for victim 99 from {node: (delta, original_id)}."""
    return DeletionContext(
        victim=99,
        victim_weight=1,
        victim_component_id=0.999,
        g_neighbors=frozenset(table),
        gprime_neighbors=frozenset(),
        neighbor_component_ids={u: oid for u, (_, oid) in table.items()},
        neighbor_original_ids={u: oid for u, (_, oid) in table.items()},
        neighbor_deltas={u: d for u, (d, _) in table.items()},
    )


def test_dash_orders_by_delta():
    ctx = _ctx_with_deltas({1: (2, 0.1), 2: (0, 0.2), 3: (1, 0.3)})
    plan = heal_dash(ctx, None)
    assert plan.participants == [2, 3, 1]
    assert set(plan.edges) == {(2, 3), (2, 1)}
    assert all(plan.healing)


def test_dash_star_seven_leaves():
    g = make_graph(8, [(0, i) for i in range(1, 8)], ids=[0.1 * i for i in range(1, 9)])
    run_one_round(g, "dash", 0)
    deltas = sorted(degree_delta(g, v) for v in range(1, 8))
    assert deltas == [0, 0, 0, 0, 1, 2, 2]
    assert oracles.is_forest(g) and oracles.is_connected(g)


def test_dash_single_participant_empty_plan():
    g = make_graph(2, [(0, 1)])
    ctx = capture_and_delete(g, 0)
    plan = heal_dash(ctx, g)
    assert plan.participants == [1] and plan.edges == []
    assert degree_delta(g, 1) == -1


def test_dash_leaf_rule():
    # leaf positions of the reconnection tree carry the largest deltas
    rng = SplitMix64(10)
    g = preferential_attachment(30, 2, rng)
    g.assign_original_ids(rng)
    for _ in range(25):
        victim = pick_random(g, rng)
        ctx = capture_and_delete(g, victim)
        plan = heal_dash(ctx, g)
        k = len(plan.participants)
        if k >= 2:
            internal = plan.participants[: (k - 2) // 2 + 1]
            leaves = plan.participants[(k - 2) // 2 + 1:]
            assert max(ctx.neighbor_deltas[u] for u in internal) <= min(
                ctx.neighbor_deltas[u] for u in leaves)
        transfer_weight(g, ctx)
        apply_plan(g, plan)
        if plan.participants:
            propagate_component_id(g, plan.participants)


def test_dash_per_round_growth_at_most_two():
    rng = SplitMix64(11)
    g = preferential_attachment(40, 2, rng)
    g.assign_original_ids(rng)
    while g.n_alive > 1:
        before = g.deg.copy()
        victim = pick_random(g, rng)
        run_one_round(g, "dash", victim)
        growth = g.deg[g.alive] - before[g.alive]
        assert int(growth.max()) <= 2


def test_sdash_guard_picks_cheapest_center():
    ctx = _ctx_with_deltas({1: (0, 0.1), 2: (5, 0.2), 3: (1, 0.3)})
    plan = heal_sdash(ctx, None)
    assert set(plan.edges) == {(1, 2), (1, 3)}  # star centered on node 1


def test_sdash_equal_deltas_falls_back_to_dash():
    ctx = _ctx_with_deltas({1: (1, 0.1), 2: (1, 0.2), 3: (1, 0.3), 4: (1, 0.4)})
    assert heal_sdash(ctx, None).edges == heal_dash(ctx, None).edges


def test_sdash_surrogate_round_degree_accounting():
    # center nets |S| - 2, every other participant nets 0
    legs = [(0, i) for i in range(1, 6)]
    tails = [(i, i + 5) for i in range(1, 6)]
    g = make_graph(11, legs + tails, ids=[0.01 * (i + 1) for i in range(11)])
    # bump one participant's delta so the guard has headroom
    apply_plan(g, ReconnectionPlan([(5, 6), (5, 7), (5, 8), (5, 9)], [False] * 4, []))
    before = g.deg.copy()
    ctx = capture_and_delete(g, 0)
    plan = heal_sdash(ctx, g)
    s = len(plan.participants)
    assert s == 5
    center = plan.edges[0][0]
    assert center == 1  # lowest delta, lowest id qualifier
    assert len(plan.edges) == s - 1
    apply_plan(g, plan)
    for v in plan.participants:
        net = int(g.deg[v] - before[v])
        assert net == (s - 2 if v == center else 0)


def test_btree_orders_by_id_only():
    ctx = _ctx_with_deltas({1: (9, 0.5), 2: (0, 0.1), 3: (4, 0.9)})
    plan = heal_binary_tree(ctx, None)
    assert plan.participants == [2, 1, 3]
    assert set(plan.edges) == {(2, 1), (2, 3)}


def test_btree_single_participant():
    ctx = _ctx_with_deltas({1: (0, 0.5)})
    assert heal_binary_tree(ctx, None).edges == []


def test_btree_keeps_forest_on_star():
    g = make_graph(8, [(0, i) for i in range(1, 8)])
    run_one_round(g, "btree", 0)
    assert oracles.is_forest(g) and oracles.is_connected(g)


def test_graph_heal_triangle_neighborhood_noop():
    # K4 minus nothing: deleting a node leaves a triangle; proposed edges
    # already exist, so E and E' stay put
    g = make_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    edges_before = g.edge_count()
    ctx, plan = run_one_round(g, "graph", 3)
    assert [h for h in plan.healing] == [False, False]
    assert g.edge_count() == edges_before - 3  # only the victim's edges went
    assert g.heal_edges() == set()


def test_graph_heal_two_nonadjacent_neighbors():
    g = make_graph(3, [(0, 1), (1, 2)])
    ctx, plan = run_one_round(g, "graph", 1)
    assert plan.edges == [(0, 2)]
    assert plan.healing == [True]
    assert g.has_edge(0, 2) and g.has_heal_edge(0, 2)


def test_graph_heal_isolated_victim():
    g = make_graph(2, [])
    ctx, plan = run_one_round(g, "graph", 0)
    assert plan.edges == []


@pytest.mark.parametrize("healer", ["dash", "sdash", "btree"])
@pytest.mark.parametrize("seed", [2, 42])
def test_tracking_healers_preserve_forest_and_connectivity(healer, seed):
    rng = SplitMix64(seed)
    g = preferential_attachment(30, 2, rng)
    g.assign_original_ids(rng)
    while g.n_alive > 1:
        victim = pick_random(g, rng)
        run_one_round(g, healer, victim)
        assert oracles.is_forest(g)
        assert oracles.is_connected(g)


@pytest.mark.parametrize("healer", ["dash", "sdash", "btree"])
@pytest.mark.parametrize("d", range(3, 9))
def test_tree_victim_degree_accounting(healer, d):
    # victim of degree d in a tree, no E-edges among participants: any
    # acyclic reconnection adds exactly d - 2 total degrees to participants
    legs = [(0, i) for i in range(1, d + 1)]
    tails = [(i, i + d) for i in range(1, d + 1)]
    g = make_graph(2 * d + 1, legs + tails)
    before = g.deg.copy()
    ctx, plan = run_one_round(g, healer, 0)
    participants = plan.participants
    assert len(participants) == d
    total_gain = sum(int(g.deg[v] - before[v]) for v in participants)
    assert total_gain == d - 2


def test_sdash_full_surrogation_never_lengthens_paths():
    # all victim neighbors in distinct E' components: the star through the
    # surrogate patches every path through the victim at equal length
    legs = [(0, i) for i in range(1, 6)]
    tails = [(i, i + 5) for i in range(1, 6)]
    g = make_graph(11, legs + tails, ids=[0.01 * (i + 1) for i in range(11)])
    apply_plan(g, ReconnectionPlan([(5, 6), (5, 7), (5, 8), (5, 9)], [False] * 4, []))
    dist_before = {v: oracles.bfs_dists(g.adj, v) for v in range(1, 11)}
    ctx, plan = run_one_round(g, "sdash", 0)
    assert len(plan.edges) == len(plan.participants) - 1  # surrogate fired
    for p in plan.participants:
        after = oracles.bfs_dists(g.adj, p)
        for survivor in range(1, 11):
            if survivor != p:
                assert after[survivor] <= dist_before[p][survivor]
