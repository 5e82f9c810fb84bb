"""Search small hosts for co-embeddings that flip the complement sign
without breaking the block condition.

Hosts are rank-3 seeds with one frozen row; the sub-seed keeps variable 3
frozen and mutates 1 and 2.  Every candidate map of the complement's
clusters is fed to comembed_check.  Reports how many maps were tried,
how many had sign +1 but failed the block condition, and how many
disagreed with the direct extension test.
"""
import argparse
import itertools

from clustergal.autgrp import NotACluster, NotAnAutomorphism, comembed_check
from clustergal.exgraph import enumerate_graph
from clustergal.seedcore import NotSkewSymmetrizable, Seed
from clustergal.subseed import SubSeedSpec, complement_spec, subalgebra_from_spec


def hosts(entries):
    for b12 in (0, 1):
        for y1, y2, f1, f2, fy in itertools.product(entries, repeat=5):
            yield [[0, b12, -y1], [-b12, 0, -y2], [y1, y2, 0], [f1, f2, fy]]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=40, help="cluster budget per host")
    ap.add_argument("--bound", type=int, default=1, help="entries range over -bound..bound")
    args = ap.parse_args()

    entries = range(-args.bound, args.bound + 1)
    tried = hits = disagree = 0
    for rows in hosts(entries):
        try:
            g = enumerate_graph(Seed.initial(rows), args.budget)
        except NotSkewSymmetrizable:
            continue
        if not g.complete:
            continue
        spec = SubSeedSpec(g.root, {2}, {0, 1})
        comp = complement_spec(spec)
        ca = subalgebra_from_spec(g, 0, comp.i0, comp.i1)
        for ex, _ in ca.seeds:
            for perm in itertools.permutations(sorted(ex)):
                images = dict(zip(comp.exchange, perm))
                images.update({v: v for v in comp.frozen})
                try:
                    rep = comembed_check(g, spec, images)
                except (NotAnAutomorphism, NotACluster):
                    continue
                tried += 1
                if rep.complement_sign == 1 and not rep.block_condition:
                    hits += 1
                    print("sign +1, block fails:", rows, images, "extends" if rep.extends else "")
                if not rep.agree:
                    disagree += 1
                    print("disagreement:", rows, images)
    print(f"maps tried {tried}, sign+1/block-fail {hits}, disagreements {disagree}")


if __name__ == "__main__":
    main()
