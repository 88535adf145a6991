"""Experiment harness: round loop, seeded replicate sweeps, CSV tables.

One round is always: pick victim -> capture/delete -> weight transfer ->
plan -> apply -> propagate (ID-tracking healers only) -> connectivity check
-> measure.  Replicate r runs entirely on child_seed(seed, r), so a config
maps to byte-identical output on every execution.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from .attack import make_attack
from .generators import TreeShape, complete_kary_tree, fixture, preferential_attachment
from .graph import (
    Graph,
    apply_plan,
    capture_and_delete,
    propagate_component_id,
    transfer_weight,
)
from .healing import HEALERS, ID_TRACKING
from .metrics import (
    ForestView,
    LemmaHistory,
    MetricsRecord,
    check_round,
    node_bounds_ok,
    stretch,
)
from .rng import SplitMix64, child_seed

CSV_HEADER = (
    "replicate,round,n_alive,max_delta,mean_delta,stretch,total_messages,"
    "max_id_changes,forest_ok,rem_lower_ok,rem_monotone_ok,degree_bound_ok,weight_total"
)

GRAPH_KINDS = ("ba", "kary", "line", "star", "cycle")
LEMMA_NAMES = (
    "forest", "rem_monotone", "rem_lower", "rem_upper",
    "subtree_weight", "degree_bound", "weight_conservation",
)


class ConfigError(Exception):
    """Invalid experiment configuration."""


class HealingFailure(RuntimeError):
    """A healed graph lost connectivity (should be impossible)."""

    def __init__(self, message: str, round_index: int, victim: int):
        super().__init__(message)
        self.round_index = round_index
        self.victim = victim


@dataclass
class ExperimentConfig:
    graph_kind: str
    n: int = 0
    m: int = 2
    arity: int | None = None
    depth: int | None = None
    healer: str = "dash"
    attack: str = "nms"
    replicates: int = 30
    seed: int = 0
    stretch_every: int | None = None  # None: every ceil(n/20) rounds; 0: never
    stop: int | str = "until_empty"
    out_dir: str = "."

    def validate(self) -> None:
        problems = []
        if self.graph_kind not in GRAPH_KINDS:
            problems.append(f"graph.kind must be one of {GRAPH_KINDS}, got {self.graph_kind!r}")
        if self.graph_kind == "kary":
            if not self.arity or self.arity < 2 or not self.depth or self.depth < 1:
                problems.append("kary graphs need arity >= 2 and depth >= 1")
        elif self.n < 1:
            problems.append("graph.n must be >= 1")
        if self.graph_kind == "ba" and (self.m < 1 or self.n < self.m + 1):
            problems.append("ba graphs need m >= 1 and n >= m + 1")
        if self.healer not in HEALERS:
            problems.append(f"healer must be one of {sorted(HEALERS)}, got {self.healer!r}")
        if not (self.attack in ("max", "nms", "random") or self.attack.startswith("level:")):
            problems.append(f"unknown attack {self.attack!r}")
        if self.attack.startswith("level:"):
            if self.graph_kind != "kary":
                problems.append("level attacks require graph.kind = kary")
            else:
                try:
                    m = int(self.attack.split(":", 1)[1])
                except ValueError:
                    m = -1
                if m < 1:
                    problems.append(f"malformed level attack {self.attack!r}")
                elif self.arity != m + 2:
                    problems.append(
                        f"level:{m} needs arity {m + 2}, config has arity {self.arity}")
        if self.replicates < 1:
            problems.append("replicates must be >= 1")
        if self.stretch_every is not None and self.stretch_every < 0:
            problems.append("stretch_every must be >= 0")
        if not (self.stop == "until_empty" or (isinstance(self.stop, int) and self.stop >= 0)):
            problems.append(f"stop must be 'until_empty' or a round count, got {self.stop!r}")
        if problems:
            raise ConfigError("; ".join(problems))

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        graph = doc.get("graph", {})
        if not isinstance(graph, dict):
            raise ConfigError("'graph' must be an object")
        known = {"graph", "healer", "attack", "replicates", "seed",
                 "stretch_every", "stop", "out_dir"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        stop = doc.get("stop", "until_empty")
        if isinstance(stop, dict):
            stop = stop.get("rounds", "until_empty")
        cfg = cls(
            graph_kind=graph.get("kind", ""),
            n=int(graph.get("n", 0) or 0),
            m=int(graph.get("m", 2)),
            arity=graph.get("arity"),
            depth=graph.get("depth"),
            healer=doc.get("healer", "dash"),
            attack=doc.get("attack", "nms"),
            replicates=int(doc.get("replicates", 30)),
            seed=int(doc.get("seed", 0)),
            stretch_every=doc.get("stretch_every"),
            stop=stop,
            out_dir=doc.get("out_dir", "."),
        )
        cfg.validate()
        return cfg

    def label(self) -> str:
        size = f"a{self.arity}d{self.depth}" if self.graph_kind == "kary" else f"{self.n}"
        attack = self.attack.replace(":", "-")
        return f"{self.healer}_{attack}_{self.graph_kind}{size}"


def load_config(path) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return ExperimentConfig.from_dict(doc)


def build_graph(cfg: ExperimentConfig, rng: SplitMix64) -> tuple[Graph, TreeShape | None]:
    if cfg.graph_kind == "ba":
        return preferential_attachment(cfg.n, cfg.m, rng), None
    if cfg.graph_kind == "kary":
        return complete_kary_tree(cfg.arity, cfg.depth)
    return fixture(cfg.graph_kind, cfg.n), None


@dataclass
class RunResult:
    replicate: int
    n_initial: int
    rounds: int
    final_alive: int
    peak_max_delta: int
    final_max_delta: int
    peak_stretch: float | None
    lemma_violations: dict[str, int]
    lemma_witnesses: dict[str, str]
    nodes_checked: int
    msg_bound_violations: int
    id_bound_violations: int
    wall_time: float
    records: list[MetricsRecord] = field(default_factory=list)

    @property
    def lemmas_ok(self) -> bool:
        return not self.lemma_violations


class _RoundState:
    """Mutable per-replicate bookkeeping threaded through run_round."""

    def __init__(self, cfg: ExperimentConfig, g: Graph):
        self.tracking = cfg.healer in ID_TRACKING
        self.history = LemmaHistory(g) if self.tracking else None
        if cfg.stretch_every is None:
            self.cadence = max(1, math.ceil(g.n_initial / 20))
        else:
            self.cadence = cfg.stretch_every
        self.round = 0
        self.lemma_violations: dict[str, int] = {}
        self.lemma_witnesses: dict[str, str] = {}
        self.peak_max_delta = 0
        self.final_max_delta = 0
        self.peak_stretch: float | None = None
        self.nodes_checked = 0
        self.msg_viol = 0
        self.id_viol = 0

    def tally_bounds(self, g: Graph, v: int) -> None:
        msg_ok, id_ok = node_bounds_ok(g, v)
        self.nodes_checked += 1
        self.msg_viol += not msg_ok
        self.id_viol += not id_ok


def run_round(g: Graph, healer, attack, rng: SplitMix64, state: _RoundState) -> MetricsRecord | None:
    """Execute one deletion round; None when the attack has no victim left."""
    victim = attack.pick(g, rng)
    if victim is None:
        return None
    state.round += 1
    state.tally_bounds(g, victim)  # counters are final at death
    ctx = capture_and_delete(g, victim)
    transfer_weight(g, ctx)
    plan = healer(ctx, g)
    apply_plan(g, plan)
    if state.tracking and plan.participants:
        propagate_component_id(g, plan.participants)
    if not g.is_connected():
        raise HealingFailure(
            f"round {state.round}: survivors disconnected after deleting {victim}",
            state.round, victim)
    return _measure(g, state)


def _measure(g: Graph, state: _RoundState) -> MetricsRecord:
    live = g.live_nodes()
    if len(live):
        deltas = g.deg[live] - g.deg0[live]
        max_delta = int(deltas.max())
        mean_delta = float(deltas.mean())
        max_idc = int(g.id_changes[live].max())
    else:
        max_delta, mean_delta, max_idc = 0, 0.0, 0
    stretch_val = None
    if state.cadence > 0 and state.round % state.cadence == 0 and g.n_alive >= 2:
        stretch_val = stretch(g)
        if state.peak_stretch is None or stretch_val > state.peak_stretch:
            state.peak_stretch = stretch_val
    report = None
    if state.tracking:
        fv = ForestView(g)
        report = check_round(g, fv, state.history)
        for name, witness in report.failures().items():
            state.lemma_violations[name] = state.lemma_violations.get(name, 0) + 1
            state.lemma_witnesses.setdefault(name, f"round {state.round}: {witness}")
    state.peak_max_delta = max(state.peak_max_delta, max_delta)
    state.final_max_delta = max_delta
    return MetricsRecord(
        round=state.round,
        n_alive=g.n_alive,
        max_delta=max_delta,
        mean_delta=mean_delta,
        stretch=stretch_val,
        total_messages=g.total_messages,
        max_id_changes=max_idc,
        weight_total=g.total_live_weight,
        forest_ok=report.forest.ok if report else None,
        rem_lower_ok=report.rem_lower.ok if report else None,
        rem_monotone_ok=report.rem_monotone.ok if report else None,
        degree_bound_ok=report.degree_bound.ok if report else None,
    )


def run_replicate(cfg: ExperimentConfig, replicate: int, keep_records: bool = True) -> RunResult:
    """Run one seeded replicate to its stop rule."""
    started = time.perf_counter()
    rng = SplitMix64(child_seed(cfg.seed, replicate))
    g, shape = build_graph(cfg, rng)
    g.assign_original_ids(rng)
    attack = make_attack(cfg.attack, shape)
    healer = HEALERS[cfg.healer]
    state = _RoundState(cfg, g)
    limit = None if cfg.stop == "until_empty" else int(cfg.stop)
    records: list[MetricsRecord] = []
    while g.n_alive > 0 and (limit is None or state.round < limit):
        record = run_round(g, healer, attack, rng, state)
        if record is None:
            break
        if keep_records:
            records.append(record)
    for v in g.live_nodes():  # survivors' counters are final too
        state.tally_bounds(g, int(v))
    return RunResult(
        replicate=replicate,
        n_initial=g.n_initial,
        rounds=state.round,
        final_alive=g.n_alive,
        peak_max_delta=state.peak_max_delta,
        final_max_delta=state.final_max_delta,
        peak_stretch=state.peak_stretch,
        lemma_violations=state.lemma_violations,
        lemma_witnesses=state.lemma_witnesses,
        nodes_checked=state.nodes_checked,
        msg_bound_violations=state.msg_viol,
        id_bound_violations=state.id_viol,
        wall_time=time.perf_counter() - started,
        records=records,
    )


def run_experiment(cfg: ExperimentConfig, keep_records: bool = True) -> list[RunResult]:
    """All replicates of one configuration, in replicate order."""
    cfg.validate()
    return [run_replicate(cfg, r, keep_records) for r in range(cfg.replicates)]


# -- aggregation and serialization -------------------------------------------


def final_mean(results: list[RunResult], attr: str) -> float:
    values = [getattr(r, attr) for r in results]
    values = [v for v in values if v is not None]
    if not values:
        raise ValueError(f"no values for {attr!r}")
    return sum(values) / len(values)


def mean_by_round(results: list[RunResult], column: str) -> list[tuple[int, float]]:
    """Cross-replicate mean of a MetricsRecord field, per round index."""
    sums: dict[int, list[float]] = {}
    for res in results:
        for rec in res.records:
            value = getattr(rec, column)
            if value is None:
                continue
            sums.setdefault(rec.round, []).append(float(value))
    return [(rnd, sum(vals) / len(vals)) for rnd, vals in sorted(sums.items())]


def _fmt_opt_bool(value: bool | None) -> str:
    return "" if value is None else ("1" if value else "0")


def _fmt_opt_float(value: float | None) -> str:
    return "" if value is None else repr(value)


def write_csv(results: list[RunResult], path) -> None:
    """One row per (replicate, round), exact schema, reproducible bytes."""
    lines = [CSV_HEADER]
    for res in sorted(results, key=lambda r: r.replicate):
        for rec in res.records:
            lines.append(",".join((
                str(res.replicate),
                str(rec.round),
                str(rec.n_alive),
                str(rec.max_delta),
                repr(rec.mean_delta),
                _fmt_opt_float(rec.stretch),
                str(rec.total_messages),
                str(rec.max_id_changes),
                _fmt_opt_bool(rec.forest_ok),
                _fmt_opt_bool(rec.rem_lower_ok),
                _fmt_opt_bool(rec.rem_monotone_ok),
                _fmt_opt_bool(rec.degree_bound_ok),
                str(rec.weight_total),
            )))
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_opt_bool(text: str) -> bool | None:
    return None if text == "" else text == "1"


def read_csv(path) -> list[dict]:
    """Parse a results CSV back into typed row dicts."""
    text = Path(path).read_text()
    lines = text.strip("\n").split("\n")
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        rows.append({
            "replicate": int(parts[0]),
            "round": int(parts[1]),
            "n_alive": int(parts[2]),
            "max_delta": int(parts[3]),
            "mean_delta": float(parts[4]),
            "stretch": None if parts[5] == "" else float(parts[5]),
            "total_messages": int(parts[6]),
            "max_id_changes": int(parts[7]),
            "forest_ok": _parse_opt_bool(parts[8]),
            "rem_lower_ok": _parse_opt_bool(parts[9]),
            "rem_monotone_ok": _parse_opt_bool(parts[10]),
            "degree_bound_ok": _parse_opt_bool(parts[11]),
            "weight_total": int(parts[12]),
        })
    return rows
