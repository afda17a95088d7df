#!/usr/bin/env python3
"""Emit the (1/p, s) classification rasters for the three parameter figures.

Usage: python scripts/make_figure_data.py [output_dir] [--res N] [--d D]
Writes fig1/fig2/fig3 CSVs (columns inv_p, s, label); plotting is left to
external tools by design.
"""

import sys
from pathlib import Path

from radialfs.decay import classification_map
from radialfs.spaces import fig1_region, fig2_region, fig3_region


def main(argv):
    args = [a for a in argv if not a.startswith("--")]
    outdir = Path(args[0]) if args else Path("out/figures")
    res = 80
    d = 2
    for i, a in enumerate(argv):
        if a == "--res":
            res = int(argv[i + 1])
        if a == "--d":
            d = int(argv[i + 1])
    outdir.mkdir(parents=True, exist_ok=True)
    rect = (0.01, 3.0, -1.0, 4.0)
    for name, maker in (("fig1", fig1_region), ("fig2", fig2_region),
                        ("fig3", fig3_region)):
        rows = classification_map(maker(d), rect, res)
        path = outdir / f"{name}-d{d}.csv"
        with open(path, "w") as fh:
            fh.write("inv_p,s,label\n")
            for inv_p, s, label in rows:
                fh.write(f"{inv_p!r},{s!r},{label}\n")
        print(f"wrote {path} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
