#!/usr/bin/env python3
"""Plot columns of pentajm CSV output.

Usage:
    plot.py FILE [FILE ...] [--x COL] [--y COL [COL ...]] [--logx] [--logy] [--out PNG]

The header line `# columns: a,b,...` names the columns. The x column defaults
to the first one; y columns default to every other numeric column. Several
files are overlaid, labelled by file name.
"""

import argparse
import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    columns, rows = None, []
    for line in pathlib.Path(path).read_text().splitlines():
        if line.startswith("# columns:"):
            columns = [c.strip() for c in line.split(":", 1)[1].split(",")]
        elif line and not line.startswith("#"):
            rows.append(line.split(","))
    if columns is None:
        raise SystemExit(f"{path}: no '# columns:' header")
    data = {}
    for i, name in enumerate(columns):
        try:
            data[name] = [float(r[i]) for r in rows]
        except ValueError:
            continue
    return columns, data


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("files", nargs="+")
    ap.add_argument("--x")
    ap.add_argument("--y", nargs="+")
    ap.add_argument("--logx", action="store_true")
    ap.add_argument("--logy", action="store_true")
    ap.add_argument("--out", default="plot.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(8, 5))
    for path in args.files:
        columns, data = read(path)
        x = args.x or columns[0]
        ys = args.y or [c for c in columns if c != x and c in data]
        for y in ys:
            pts = [(a, b) for a, b in zip(data[x], data[y]) if math.isfinite(a) and math.isfinite(b)]
            label = f"{pathlib.Path(path).stem}: {y}" if len(args.files) > 1 else y
            ax.plot([p[0] for p in pts], [p[1] for p in pts], label=label)
        ax.set_xlabel(x)
    if args.logx:
        ax.set_xscale("log")
    if args.logy:
        ax.set_yscale("log")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
