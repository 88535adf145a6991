"""Command line entry points: run, sweep, plot, verify.

Exit codes: 0 success, 1 config error, 2 invariant violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import copy
import itertools
import json
import sys
from pathlib import Path

from .harness import (
    ConfigError,
    ExperimentConfig,
    HealingFailure,
    LEMMA_NAMES,
    final_mean,
    load_config,
    run_experiment,
    write_csv,
)
from .healing import ID_TRACKING
from .plotting import emit_svg_plot

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VIOLATION = 2
EXIT_IO = 3


def _run_one(cfg: ExperimentConfig) -> Path:
    results = run_experiment(cfg)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / f"{cfg.label()}.csv"
    write_csv(results, out)
    rounds = sum(r.rounds for r in results)
    print(f"{cfg.label()}: {cfg.replicates} replicates, {rounds} rounds, "
          f"mean peak max_delta {final_mean(results, 'peak_max_delta'):.3f} -> {out}")
    return out


def _cmd_run(args) -> int:
    _run_one(load_config(args.config))
    return EXIT_OK


def _sweep_combos(doc: dict) -> list[dict]:
    graph = doc.get("graph", {})
    if not isinstance(graph, dict):
        raise ConfigError("'graph' must be an object")
    ns = graph.get("n")
    ns = ns if isinstance(ns, list) else [ns]
    healers = doc.get("healer", "dash")
    healers = healers if isinstance(healers, list) else [healers]
    attacks = doc.get("attack", "nms")
    attacks = attacks if isinstance(attacks, list) else [attacks]
    combos = []
    for n, healer, attack in itertools.product(ns, healers, attacks):
        combo = copy.deepcopy(doc)
        combo["graph"] = dict(graph)
        if n is not None:
            combo["graph"]["n"] = n
        combo["healer"] = healer
        combo["attack"] = attack
        combos.append(combo)
    return combos


def _cmd_sweep(args) -> int:
    try:
        doc = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.config}: not valid JSON ({exc})") from None
    for combo in _sweep_combos(doc):
        _run_one(ExperimentConfig.from_dict(combo))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if cfg.healer not in ID_TRACKING:
        raise ConfigError(
            f"verify needs an ID-tracking healer ({sorted(ID_TRACKING)}), got {cfg.healer!r}")
    results = run_experiment(cfg, keep_records=False)
    totals: dict[str, int] = {}
    witnesses: dict[str, str] = {}
    for res in results:
        for name, count in res.lemma_violations.items():
            totals[name] = totals.get(name, 0) + count
            witnesses.setdefault(name, f"replicate {res.replicate}, {res.lemma_witnesses[name]}")
    ok = True
    for name in LEMMA_NAMES:
        if name in totals:
            ok = False
            print(f"FAIL {name}: {totals[name]} round(s), first: {witnesses[name]}")
        else:
            print(f"PASS {name}")
    return EXIT_OK if ok else EXIT_VIOLATION


def _cmd_plot(args) -> int:
    emit_svg_plot(args.csv, args.metric, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfheal",
        description="Adversarial deletion / self-healing network simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment config, write per-round CSV")
    p_run.add_argument("--config", required=True)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="expand list-valued config fields and run each combo")
    p_sweep.add_argument("--config", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_plot = sub.add_parser("plot", help="render an SVG line chart from results CSVs")
    p_plot.add_argument("--csv", action="append", required=True,
                        help="results CSV (repeat for multiple series)")
    p_plot.add_argument("--metric", required=True)
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=_cmd_plot)

    p_verify = sub.add_parser("verify", help="run with lemma oracles; nonzero exit on violation")
    p_verify.add_argument("--config", required=True)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HealingFailure as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
