#!/usr/bin/env python3
"""Render cohomology charts for every quotient level into an output
directory: one SVG (plus text fallback) per level, built from the same
JSON dumps the CLI produces.

Usage: render_charts.py [--out DIR] [--smax S] [--tmax T]
"""

import argparse
import os

from hopfext.cli import RunConfig, run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="charts")
    ap.add_argument("--smax", type=int, default=4)
    ap.add_argument("--tmax", type=int, default=200)
    args = ap.parse_args()

    for ideal in (4, 3, 2, 1, 0, None):
        tag = "integral" if ideal is None else f"i{ideal}"
        sub = os.path.join(args.out, tag)
        code = run(RunConfig(command="ext", ideal=ideal, s_max=args.smax,
                             t_max=args.tmax, out=sub))
        if code:
            return code
        code = run(RunConfig(command="chart",
                             source=os.path.join(sub, "ext.json"), out=sub))
        if code:
            return code
        print(f"{tag}: {os.path.join(sub, 'chart.svg')}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
