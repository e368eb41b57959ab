#!/usr/bin/env python3
"""Scan NRS-rays of a Hessenberg family along its asymptotic directions.

Prints where the last Nonreduced verdict sits on each ray; far enough
out everything should come back Reduced.
"""

import argparse

from hesslab.atlas import ray_scan
from hesslab.exact import IntVector
from hesslab.hessenberg import HessType


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="<0,1|1,0,2>")
    ap.add_argument("--anchor", default="1,0,1")
    ap.add_argument("--tmax", type=int, default=30)
    ap.add_argument("--starts", type=int, default=5,
                    help="rays per direction, started at offsets 0..k-1")
    args = ap.parse_args()

    t = HessType.parse(args.type)
    anchor = IntVector(tuple(int(x) for x in args.anchor.split(",")))
    a11, a21 = t.columns[0][0], t.columns[0][1]
    for direction in ((-1, 0), (a11, a21)):
        for k in range(args.starts):
            start = (0, k) if direction == (-1, 0) else (k, 0)
            entries, last_nr = ray_scan(t, anchor, start, direction, args.tmax)
            statuses = "".join(
                {"NRS_Reduced": "r", "NRS_Nonreduced": "N",
                 "NRS_Unknown": "?", "RS": ".",
                 "ReduciblePoly": "x"}.get(cls, "?")
                for _, cls, _ in entries)
            print("dir=%s start=%s last_nonreduced=%s  %s"
                  % (direction, start, last_nr, statuses))


if __name__ == "__main__":
    main()
