#!/usr/bin/env python3
"""Emit all figure-preset CSV sweeps into an output directory."""

import argparse
import sys
from pathlib import Path

from seqdisc.sweeps import FIGURE_PRESETS, run_figure, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures", help="directory for the CSV files")
    args = parser.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(FIGURE_PRESETS):
        header, rows = run_figure(name)
        path = out_dir / f"fig{name}.csv"
        with open(path, "w", newline="") as fh:
            write_csv(header, rows, fh)
        print(f"fig{name}: {len(rows)} rows -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
