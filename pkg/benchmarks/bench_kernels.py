#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times each kernel on a preferential-attachment graph plus one end-to-end
until-empty replicate with the backend swapped at runtime.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from selfheal import _kernels
from selfheal._kernels import _pure
from selfheal.generators import preferential_attachment
from selfheal.harness import ExperimentConfig, run_replicate
from selfheal.rng import SplitMix64

try:
    from selfheal._kernels import _speed
except ImportError:
    _speed = None

KERNEL_NAMES = ("reach_count", "all_dists", "max_stretch", "forest_stats", "flood_adopt")


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if _speed is None:
        print("compiled kernels not built; nothing to compare")
        return

    rng = SplitMix64(1234)
    g = preferential_attachment(args.n, 2, rng)
    g.assign_original_ids(rng)
    # run a third of an until-empty dash trace to populate E'
    from selfheal.attack import pick_random
    from selfheal.graph import (
        apply_plan, capture_and_delete, propagate_component_id, transfer_weight)
    from selfheal.healing import heal_dash
    for _ in range(args.n // 3):
        ctx = capture_and_delete(g, pick_random(g, rng))
        transfer_weight(g, ctx)
        plan = heal_dash(ctx, g)
        apply_plan(g, plan)
        if plan.participants:
            propagate_component_id(g, plan.participants)

    start = int(np.argmax(g.alive))
    live = g.live_nodes().astype(np.int32)
    stretch_sources = live[:200]
    init_full = _speed.all_dists(g.initial_adj, np.arange(g.n_initial, dtype=np.int32))

    cases = {
        "reach_count": lambda mod: mod.reach_count(g.adj, start),
        "all_dists": lambda mod: mod.all_dists(g.adj, stretch_sources),
        "max_stretch": lambda mod: mod.max_stretch(g.adj, live, init_full),
        "forest_stats": lambda mod: mod.forest_stats(g.heal_adj, g.weight, g.alive),
        "flood_adopt": lambda mod: mod.flood_adopt(
            g.heal_adj, g.adj, [start], g.component_id.copy(),
            g.id_changes.copy(), g.msg_sent.copy(), g.msg_recv.copy(), g.deg),
    }

    print(f"kernel timings on BA(n={args.n}, m=2) after {args.n // 3} healed deletions"
          f" (best of {args.repeats})")
    print(f"{'kernel':14s} {'pure':>10s} {'compiled':>10s} {'speedup':>9s}")
    for name in KERNEL_NAMES:
        tp = best_of(lambda: cases[name](_pure), args.repeats)
        tc = best_of(lambda: cases[name](_speed), args.repeats)
        print(f"{name:14s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:8.1f}x")

    # end-to-end: swap the backend the simulator modules resolve at call time
    cfg = ExperimentConfig(graph_kind="ba", n=1000, m=2, healer="dash", attack="nms",
                           replicates=1, seed=99, stretch_every=0)
    rows = {}
    for label, impl in (("pure", _pure), ("compiled", _speed)):
        for name in KERNEL_NAMES:
            setattr(_kernels, name, getattr(impl, name))
        t0 = time.perf_counter()
        rows[label] = run_replicate(cfg, 0, keep_records=False)
        rows[label + "_t"] = time.perf_counter() - t0
    for name in KERNEL_NAMES:  # restore the default backend
        setattr(_kernels, name, getattr(_kernels._impl, name))
    assert rows["pure"].peak_max_delta == rows["compiled"].peak_max_delta
    assert rows["pure"].lemma_violations == rows["compiled"].lemma_violations
    print(f"\nend-to-end dash+nms until-empty, n=1000 (identical results): "
          f"pure {rows['pure_t']:.2f}s, compiled {rows['compiled_t']:.2f}s, "
          f"{rows['pure_t'] / rows['compiled_t']:.1f}x")


if __name__ == "__main__":
    main()
