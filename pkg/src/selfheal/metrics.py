"""Measured quantities and per-round runtime verification oracles.

The degree/stretch/message statistics mirror what the experiment harness
records; the lemma checks turn the healing analysis into falsifiable
per-round assertions over live state (a failed check is data carrying a
witness, never an exception, so sweeps always complete).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .graph import Graph, NodeId


class DisconnectedError(RuntimeError):
    """The surviving graph split apart; healing failed."""


class ForestView:
    """Decomposition of the healing forest E' with per-node potential data.

    For node v in tree T: rem(v) is W(T) minus the heaviest piece left when
    v is removed, and side_weight_min(v) is the lightest weight W(T(v,q))
    of v's own side across its E' neighbors q.
    """

    def __init__(self, g: Graph):
        (self.is_forest, self.comp, self.comp_weight,
         self.rem_values, self.min_side, self.parent) = kernels.forest_stats(
            g.heal_adj, g.weight, g.alive)

    def rem(self, v: NodeId) -> int:
        return int(self.rem_values[v])

    def tree_weight(self, v: NodeId) -> int:
        return int(self.comp_weight[v])

    def side_weight_min(self, v: NodeId) -> int:
        return int(self.min_side[v])


def rem(v: NodeId, fv: ForestView, g: Graph) -> int:
    """Potential of v: sum of its E'-subtree weights minus the largest, plus w(v)."""
    g.check_alive(v)
    return fv.rem(v)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class LemmaReport:
    forest: CheckResult
    rem_monotone: CheckResult
    rem_lower: CheckResult
    rem_upper: CheckResult
    subtree_weight: CheckResult
    degree_bound: CheckResult
    weight_conservation: CheckResult

    def failures(self) -> dict[str, str]:
        return {
            name: check.witness or "failed"
            for name, check in vars(self).items()
            if not check.ok
        }

    @property
    def all_ok(self) -> bool:
        return not self.failures()


class LemmaHistory:
    """Carries the previous round's rem values for the monotonicity check."""

    def __init__(self, g: Graph):
        self.prev_rem = g.weight.astype(np.int64)  # E' empty at t=0: rem = w
        self.prev_alive = g.alive.copy()

    def update(self, fv: ForestView, g: Graph) -> None:
        self.prev_rem = fv.rem_values
        self.prev_alive = g.alive.copy()


def _first_witness(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


def check_round(g: Graph, fv: ForestView, history: LemmaHistory) -> LemmaReport:
    """Evaluate the analysis lemmas against the live state after one round.

    Checks: E' acyclic; rem non-decreasing for surviving nodes; rem(v) >=
    2^(max(delta,0)/2); rem(v) <= total live weight; W(T(v,q)) >= rem(v) for
    every E' edge; delta <= 2 log2 n; and weight conservation (n minus any
    weight dropped with isolated victims).  Updates `history` afterwards.
    """
    alive = g.alive
    delta = (g.deg - g.deg0).astype(np.int64)

    forest = CheckResult(True) if fv.is_forest else CheckResult(False, "E' contains a cycle")

    both = alive & history.prev_alive
    drop = both & (fv.rem_values < history.prev_rem)
    if fv.is_forest and drop.any():
        v = _first_witness(drop)
        monotone = CheckResult(
            False, f"rem({v}) fell {int(history.prev_rem[v])} -> {int(fv.rem_values[v])}")
    else:
        monotone = CheckResult(True)

    clamped = np.clip(delta, 0, 62)
    lower_bad = alive & (
        (delta > 62) | (fv.rem_values * fv.rem_values < np.int64(1) << clamped))
    if fv.is_forest and lower_bad.any():
        v = _first_witness(lower_bad)
        lower = CheckResult(
            False,
            f"rem({v})={int(fv.rem_values[v])} < 2^({int(delta[v])}/2)")
    else:
        lower = CheckResult(True)

    upper_bad = alive & (fv.rem_values > g.total_live_weight)
    if upper_bad.any():
        v = _first_witness(upper_bad)
        upper = CheckResult(
            False, f"rem({v})={int(fv.rem_values[v])} > total weight {g.total_live_weight}")
    else:
        upper = CheckResult(True)

    side_bad = alive & (fv.min_side >= 0) & (fv.min_side < fv.rem_values)
    if fv.is_forest and side_bad.any():
        v = _first_witness(side_bad)
        subtree = CheckResult(
            False,
            f"W(T({v},q))={int(fv.min_side[v])} < rem({v})={int(fv.rem_values[v])}")
    else:
        subtree = CheckResult(True)

    bound = 2.0 * math.log2(g.n_initial) if g.n_initial > 1 else 0.0
    deg_bad = alive & (delta > bound)
    if deg_bad.any():
        v = _first_witness(deg_bad)
        degree = CheckResult(False, f"delta({v})={int(delta[v])} > 2 log2 n = {bound:.2f}")
    else:
        degree = CheckResult(True)

    expected = g.n_initial - g.dropped_weight
    actual = int(g.weight[alive].sum())
    if actual == g.total_live_weight == expected:
        weight = CheckResult(True)
    else:
        weight = CheckResult(
            False, f"live weight {actual} (tracked {g.total_live_weight}) != {expected}")

    report = LemmaReport(forest, monotone, lower, upper, subtree, degree, weight)
    history.update(fv, g)
    return report


def stretch(g: Graph, init_dists: np.ndarray | None = None) -> float:
    """Max over live pairs of current distance over t=0 distance.

    Distances at t=0 may run through since-deleted nodes; that is the
    baseline the healed paths are judged against.
    """
    if g.n_alive < 2:
        raise ValueError("stretch needs at least two live nodes")
    if init_dists is None:
        init_dists = g.initial_all_dists()
    live = g.live_nodes().astype(np.int32)
    value = kernels.max_stretch(g.adj, live, init_dists)
    if value < 0:
        raise DisconnectedError("live nodes are not in one component")
    return float(value)


@dataclass(frozen=True)
class MessageStats:
    n_live: int
    messages_bound_violations: list[NodeId]
    messages_bound_violations_tight: list[NodeId]
    id_change_violations: list[NodeId]
    id_change_bound: float
    max_messages: int
    max_id_changes: int


def _message_bound(deg0: float, n: int) -> float:
    return 2.0 * (deg0 + 2.0 * math.log2(n)) * math.log(n)


def _message_bound_tight(deg0: float, n: int) -> float:
    return (2.0 * deg0 + 2.0 * math.log2(n)) * math.log(n)


def message_stats(g: Graph) -> MessageStats:
    """Per-node message/id-change totals against their probabilistic bounds.

    A node of initial degree d should send+receive at most 2(d + 2 log2 n) ln n
    messages and change id at most 2 ln n times (both only w.h.p., so
    violations are reported, not raised).  The tighter (2d + 2 log2 n) ln n
    variant is tallied separately.
    """
    n = g.n_initial
    live = g.live_nodes()
    totals = g.msg_sent + g.msg_recv
    loose: list[int] = []
    tight: list[int] = []
    idv: list[int] = []
    id_bound = 2.0 * math.log(n) if n > 1 else 0.0
    for v in live:
        v = int(v)
        t = int(totals[v])
        if t > _message_bound(int(g.deg0[v]), n):
            loose.append(v)
        if t > _message_bound_tight(int(g.deg0[v]), n):
            tight.append(v)
        if int(g.id_changes[v]) > id_bound:
            idv.append(v)
    return MessageStats(
        n_live=len(live),
        messages_bound_violations=loose,
        messages_bound_violations_tight=tight,
        id_change_violations=idv,
        id_change_bound=id_bound,
        max_messages=int(totals[live].max()) if len(live) else 0,
        max_id_changes=int(g.id_changes[live].max()) if len(live) else 0,
    )


def node_bounds_ok(g: Graph, v: NodeId) -> tuple[bool, bool]:
    """(messages within bound, id changes within bound) for one node."""
    n = g.n_initial
    msg_ok = int(g.msg_sent[v] + g.msg_recv[v]) <= _message_bound(int(g.deg0[v]), n)
    id_ok = int(g.id_changes[v]) <= (2.0 * math.log(n) if n > 1 else 0.0)
    return msg_ok, id_ok


def degree_stats(g: Graph) -> tuple[int, Counter]:
    """(max degree increase, histogram of degree increases) over live nodes."""
    live = g.live_nodes()
    if not len(live):
        return 0, Counter()
    deltas = (g.deg[live] - g.deg0[live]).astype(int)
    return int(deltas.max()), Counter(deltas.tolist())


@dataclass(frozen=True)
class MetricsRecord:
    """One row of per-round measurements (the CSV schema's value half)."""

    round: int
    n_alive: int
    max_delta: int
    mean_delta: float
    stretch: float | None
    total_messages: int
    max_id_changes: int
    weight_total: int
    forest_ok: bool | None
    rem_lower_ok: bool | None
    rem_monotone_ok: bool | None
    degree_bound_ok: bool | None
