#!/usr/bin/env python3
"""FD certificates, UI maxima and orbit prefix trees for the named example groups.

    python3 scripts/fd_ui_probe.py --radii 1 2 3 4 --trunc 16
"""
import argparse

from fdui import samples
from fdui.groups import Caps, enumerate_ball, fd_check, orbit_prefix_tree, ui_probe


def report(name, G, gamma, radii, jets, caps, depth):
    print(f"== {name}  (trunc {G.trunc})")
    for k in jets:
        for L in radii:
            r = fd_check(G, k, L, caps)
            tag = "determined" if r.determined else f"counterexample {r.counterexample}"
            if not r.complete:
                tag += " (inconclusive: cap hit)"
            print(f"  fd   k={k} L={L}: {tag}, relations={r.relations}")
    for L in radii:
        b = enumerate_ball(G, L, 1, caps)
        u = ui_probe(G, gamma, L, caps)
        t = orbit_prefix_tree(G, gamma, L, depth, caps)
        print(f"  ui   L={L}: jet-1 classes={len(b.classes)} max exact={u.max_exact} "
              f"({u.max_witness}) values={dict(sorted(u.values.items()))}")
        print(f"  tree L={L}: orbit={t.orbit_size} levels={t.level_counts} "
              f"max shared depth={t.max_shared_depth} depth-limited={t.depth_limited}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radii", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--jets", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trunc", type=int, default=16)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--max-words", type=int, default=20000)
    args = ap.parse_args()
    caps = Caps(max_words=args.max_words)
    gamma = samples.axis(args.trunc)
    report("family (x, y + e^j x + x^(j+1)), j = 1, 2, 3",
           samples.intro_family((1, 2, 3), args.trunc), gamma, args.radii, args.jets, caps, args.depth)
    report("<(x, y + x^2), (x, y + x^3)>",
           samples.tangent_pair(args.trunc), gamma, args.radii, args.jets, caps, args.depth)


if __name__ == "__main__":
    main()
