#!/usr/bin/env python3
"""Check (phi(g), g) = m0(g)^2 + (lift(phi)(g1), g1) on random curves and direction-fixing maps."""
import argparse
import random

from fdui import samples
from fdui.blowup import lift_diffeo, strict_transform
from fdui.curve import act, intersect_order


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=50)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--trunc", type=int, default=24)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    exact = skipped = bad = 0
    for _ in range(args.cases):
        g = samples.random_curve(rng, trunc=args.trunc)
        d = g.tangent_direction()
        phi = samples.random_fixing(rng, (d.a, d.b), trunc=args.trunc)
        m = g.multiplicity().n
        p, g1 = strict_transform(g)
        lhs = intersect_order(act(phi, g), g)
        rhs = intersect_order(act(lift_diffeo(phi, p), g1), g1)
        if not (lhs.exact and rhs.exact):
            skipped += 1
            continue
        exact += 1
        if lhs.n != m * m + rhs.n:
            bad += 1
            print(f"MISMATCH {g.format()}: {lhs} vs {m}^2 + {rhs}")
    print(f"exact cases {exact}, skipped (bound only) {skipped}, mismatches {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
