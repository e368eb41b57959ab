#!/usr/bin/env python3
"""Spectrum breakdown of the 4D quartic family on a parameter cube."""

import argparse
from collections import Counter

from hesslab.atlas import classify_family_4d


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=15)
    args = ap.parse_args()

    cells = classify_family_4d(args.bound)
    counts = Counter(c.cls for c in cells)
    total = len(cells)
    for cls, k in counts.most_common():
        print("%-20s %7d  (%.1f%%)" % (cls, k, 100.0 * k / total))
    print("%-20s %7d" % ("total", total))


if __name__ == "__main__":
    main()
