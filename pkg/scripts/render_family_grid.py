#!/usr/bin/env python3
"""Render the reducedness atlas of a Hessenberg family window.

Example:
    python3 scripts/render_family_grid.py --type "<0,1|1,0,2>" \
        --anchor 1,0,1 --window 20 --jobs 4 --out grid.ppm
"""

import argparse
import json
import sys
import time

from hesslab.atlas import classify_grid, render_grid
from hesslab.exact import IntVector
from hesslab.hessenberg import HessType


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="<0,1|1,0,2>")
    ap.add_argument("--anchor", default="1,0,1")
    ap.add_argument("--window", type=int, default=20)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fmt", default="PPM", choices=["PPM", "SVG"])
    ap.add_argument("--out", default=None)
    ap.add_argument("--json", dest="json_out", default=None)
    args = ap.parse_args()

    t = HessType.parse(args.type)
    anchor = IntVector(tuple(int(x) for x in args.anchor.split(",")))
    w = args.window
    t0 = time.time()
    cells, counts = classify_grid(t, anchor, (-w, w), (-w, w), jobs=args.jobs)
    print("classified %d cells in %.1fs" % (len(cells), time.time() - t0),
          file=sys.stderr)
    for cls in sorted(counts):
        print("%-16s %d" % (cls, counts[cls]))
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(render_grid(cells, fmt=args.fmt))
        print("wrote", args.out, file=sys.stderr)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump({"counts": counts,
                       "cells": [c.to_json() for c in cells]}, fh, indent=1)
        print("wrote", args.json_out, file=sys.stderr)


if __name__ == "__main__":
    main()
