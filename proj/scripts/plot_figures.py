#!/usr/bin/env python3
"""Render the figure datasets produced by `sfqm_tunnel --figure` as PNGs.

Usage: plot_figures.py [dataset_dir] [output_dir]
Defaults: tests/golden -> docs
"""
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

TITLES = {
    "fig1a": "alpha = 2.0 (standard QM): Hartman and generalized Hartman saturation",
    "fig1b": "alpha = 1.995: no generalized Hartman effect",
}


def load(path: Path):
    curves = defaultdict(list)
    with path.open() as f:
        for row in csv.reader(line for line in f if not line.startswith("#")):
            if row[0] == "n_barriers":
                continue
            curves[int(row[0])].append((float(row[1]), float(row[2])))
    return curves


def main() -> int:
    data_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/golden")
    out_dir = Path(sys.argv[2]) if len(sys.argv) > 2 else Path("docs")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in ("fig1a", "fig1b"):
        csv_path = data_dir / f"{name}.csv"
        if not csv_path.exists():
            print(f"missing {csv_path}; generate it with: sfqm_tunnel --figure {name}")
            return 1
        curves = load(csv_path)
        fig, ax = plt.subplots(figsize=(7.2, 4.6))
        for n in sorted(curves):
            pts = curves[n]
            ax.plot([b for b, _ in pts], [g for _, g in pts], label=f"N = {n}", lw=1.4)
        ax.set_xlabel("barrier width b")
        ax.set_ylabel(r"tunneling time $\Gamma_\alpha^N$")
        ax.set_title(TITLES[name])
        ax.set_ylim(0.0, 0.8)
        ax.legend()
        ax.grid(alpha=0.3)
        fig.tight_layout()
        out = out_dir / f"{name}.png"
        fig.savefig(out, dpi=130)
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
