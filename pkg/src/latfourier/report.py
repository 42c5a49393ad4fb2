"""CSV writing and dependency-free SVG scatter plots for experiment output."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from pathlib import Path

SCHEMA_LINE = "# schema=1"

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"]


def fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value)
    return str(value)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(SCHEMA_LINE + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def read_csv(path):
    """Return (header, rows) skipping ``#`` comment lines."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        return [], []
    return rows[0], rows[1:]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step)
    last = math.floor(hi / step)
    return [round(i * step, 12) for i in range(first, last + 1)]


def scatter_svg(series, title, xlabel, ylabel, width=480, height=340, hline=None):
    """Render ``{label: [(x, y), ...]}`` as an SVG scatter plot string."""
    pts = [xy for s in series.values() for xy in s if math.isfinite(xy[0]) and math.isfinite(xy[1])]
    xs = [x for x, _ in pts] or [0.0, 1.0]
    ys = [y for _, y in pts] or [0.0, 1.0]
    if hline is not None:
        ys = ys + [hline]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    padx = (x1 - x0) * 0.08 if x1 - x0 > 1e-9 * max(1.0, abs(x1)) else 0.5
    pady = (y1 - y0) * 0.08 if y1 - y0 > 1e-9 * max(1.0, abs(y1)) else 0.05
    x0, x1, y0, y1 = x0 - padx, x1 + padx, y0 - pady, y1 + pady
    ml, mr, mt, mb = 60, 110, 30, 45
    pw, ph = width - ml - mr, height - mt - mb

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{title}</text>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{sx(t):.2f}" y1="{mt + ph}" x2="{sx(t):.2f}" y2="{mt + ph + 4}" stroke="#333"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{mt + ph + 16}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{ml - 4}" y1="{sy(t):.2f}" x2="{ml}" y2="{sy(t):.2f}" stroke="#333"/>')
        out.append(f'<text x="{ml - 6}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    if hline is not None:
        out.append(f'<line x1="{ml}" y1="{sy(hline):.2f}" x2="{ml + pw}" y2="{sy(hline):.2f}" '
                   f'stroke="#888" stroke-dasharray="4,3"/>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 8}" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {mt + ph / 2:.1f})">{ylabel}</text>')
    for i, (label, s) in enumerate(sorted(series.items())):
        color = PALETTE[i % len(PALETTE)]
        for x, y in s:
            if math.isfinite(x) and math.isfinite(y):
                out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}" fill-opacity="0.6"/>')
        ly = mt + 12 + 16 * i
        out.append(f'<circle cx="{ml + pw + 14}" cy="{ly - 4}" r="4" fill="{color}"/>')
        out.append(f'<text x="{ml + pw + 22}" y="{ly}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ratio_plots_from_csv(csv_path, out_dir):
    """Write one ratio-vs-p SVG per inequality name found in an inequalities CSV."""
    header, rows = read_csv(csv_path)
    if not header:
        return []
    col = {name: i for i, name in enumerate(header)}
    by_name = defaultdict(lambda: defaultdict(list))
    for r in rows:
        name = r[col["name"]]
        label = f"b={float(r[col['b']]):.3g}" if r[col["b"]] else f"K={r[col['K']]}"
        by_name[name][label].append((float(r[col["p"]]), float(r[col["ratio"]])))
    written = []
    for name in sorted(by_name):
        hline = 1.0 if name in ("hy", "hy_inverse", "plancherel") else None
        svg = scatter_svg(by_name[name], f"{name}: ratio vs p", "p", "lhs / rhs_scaffold", hline=hline)
        path = Path(out_dir) / f"ratio_vs_p_{name}.svg"
        path.write_text(svg)
        written.append(path)
    return written
