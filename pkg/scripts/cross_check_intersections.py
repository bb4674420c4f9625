#!/usr/bin/env python3
"""Compare the substitution and Noether intersection numbers on random curve pairs.

    python3 scripts/cross_check_intersections.py --pairs 500 --seed 7
"""
import argparse
import random
import time
from collections import Counter

from fdui import samples
from fdui.blowup import intersect_noether
from fdui.curve import intersect_order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trunc", type=int, default=24)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--max-mult", type=int, default=3)
    ap.add_argument("--height", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    outcome = Counter()
    values = Counter()
    bad = []
    start = time.monotonic()
    for _ in range(args.pairs):
        a, b = samples.random_curve_pair(rng, args.trunc, args.max_mult, args.height)
        o = intersect_order(a, b)
        n = intersect_noether(a, b, args.depth)
        if o.exact and n.exact:
            outcome["both exact"] += 1
            values[o.n] += 1
            if o != n:
                bad.append((a, b, o, n))
        elif o.exact or n.exact:
            outcome["one bound"] += 1
            e, other = (o, n) if o.exact else (n, o)
            if e.n < other.n:
                bad.append((a, b, o, n))
        else:
            outcome["two bounds"] += 1
    elapsed = time.monotonic() - start

    print(f"{args.pairs} pairs in {elapsed:.2f}s  (N={args.trunc}, depth={args.depth}, seed={args.seed})")
    for k in ("both exact", "one bound", "two bounds"):
        print(f"  {k:<11} {outcome[k]}")
    print("  exact values:", dict(sorted(values.items())))
    for a, b, o, n in bad:
        print(f"  MISMATCH {a.format()} vs {b.format()}: order={o} noether={n}")
    print("inconsistencies:", len(bad))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
