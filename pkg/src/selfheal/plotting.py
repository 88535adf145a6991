"""Dependency-free SVG line charts over results CSVs."""

from __future__ import annotations

import math
from pathlib import Path

from .harness import read_csv

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
_PLOTTABLE = ("n_alive", "max_delta", "mean_delta", "stretch",
              "total_messages", "max_id_changes", "weight_total")

_W, _H = 760, 480
_ML, _MR, _MT, _MB = 70, 20, 30, 55


def _series_from_csv(path, metric):
    rows = read_csv(path)
    per_round: dict[int, list[float]] = {}
    n_guess = 0
    for row in rows:
        n_guess = max(n_guess, row["n_alive"] + 1)
        value = row[metric]
        if value is None:
            continue
        per_round.setdefault(row["round"], []).append(float(value))
    points = [(r, sum(v) / len(v)) for r, v in sorted(per_round.items())]
    return Path(path).stem, points, n_guess


def _ticks(lo: float, hi: float, count: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / count
    return [lo + i * step for i in range(count + 1)]


def emit_svg_plot(csv_paths, metric: str, out_path) -> None:
    """Write a self-contained SVG: x = round, y = cross-replicate mean.

    One polyline per input CSV (legend label = file stem).  Degree plots get
    a dashed 2*log2(n) reference line per distinct graph size.
    """
    if metric not in _PLOTTABLE:
        raise ValueError(f"metric must be one of {_PLOTTABLE}, got {metric!r}")
    if isinstance(csv_paths, (str, Path)):
        csv_paths = [csv_paths]
    series = [_series_from_csv(p, metric) for p in csv_paths]
    if all(not pts for _, pts, _ in series):
        raise ValueError(f"no values for metric {metric!r} in the given CSVs")

    refs = []
    if metric == "max_delta":
        for n in sorted({n for _, pts, n in series if pts}):
            refs.append((f"2 log2({n})", 2.0 * math.log2(n)))

    x_max = max(pt[0] for _, pts, _ in series for pt in pts)
    values = [pt[1] for _, pts, _ in series for pt in pts] + [y for _, y in refs]
    y_max, y_min = max(values), min(values)
    x_lo, x_hi = 0.0, float(max(x_max, 1))
    y_lo = min(0.0, float(y_min) * 1.05)
    y_hi = float(y_max) * 1.05 if y_max > 0 else 1.0

    def sx(x):
        return _ML + (x - x_lo) / (x_hi - x_lo) * (_W - _ML - _MR)

    def sy(y):
        return _H - _MB - (y - y_lo) / (y_hi - y_lo) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = sx(t)
        parts.append(f'<line x1="{x:.2f}" y1="{_H - _MB}" x2="{x:.2f}" y2="{_H - _MB + 4}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{_H - _MB + 16}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y_lo, y_hi):
        y = sy(t)
        parts.append(f'<line x1="{_ML - 4}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{y:.2f}" text-anchor="end" dominant-baseline="middle">{t:.4g}</text>')
    parts.append(f'<text x="{(_ML + _W - _MR) / 2:.2f}" y="{_H - 12}" text-anchor="middle">round</text>')
    parts.append(
        f'<text x="16" y="{(_MT + _H - _MB) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:.2f})">{metric}</text>')

    for label, y in refs:
        parts.append(
            f'<line x1="{_ML}" y1="{sy(y):.2f}" x2="{_W - _MR}" y2="{sy(y):.2f}" '
            f'stroke="#555555" stroke-dasharray="6 4"/>')
        parts.append(
            f'<text x="{_W - _MR - 4}" y="{sy(y) - 4:.2f}" text-anchor="end" fill="#555555">{label}</text>')

    legend_y = _MT + 4
    for i, (label, pts, _) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        if pts:
            if len(pts) == 1:
                x, y = sx(pts[0][0]), sy(pts[0][1])
                parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
            else:
                coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
                parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(
            f'<line x1="{_ML + 8}" y1="{legend_y:.2f}" x2="{_ML + 28}" y2="{legend_y:.2f}" '
            f'stroke="{color}" stroke-width="3"/>')
        parts.append(f'<text x="{_ML + 34}" y="{legend_y + 4:.2f}">{label}</text>')
        legend_y += 15

    parts.append("</svg>")
    Path(out_path).write_text("\n".join(parts) + "\n")
