"""Walk the subgroup lattice of the hexagon's automorphism group.

For every subgroup H prints its order, the diagonals it fixes, the maximal
sub-seeds whose Galois group is exactly H, and whether H lies in ker phi.
"""
import argparse

from clustergal.autgrp import subgroups
from clustergal.galois import NoOutsideVariable, Universe, galois_extension_witness
from clustergal.polysurf import polygon_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6, help="polygon size")
    args = ap.parse_args()

    m = polygon_model(args.n)
    u = Universe(m.graph)
    subs = sorted(subgroups(u.aut), key=len)
    print(f"{args.n}-gon: {len(m.graph.variables)} variables, |Aut| = {len(u.aut)}, {len(subs)} subgroups")
    for H in subs:
        F = u.fixed_analysis(H)
        fixed = " ".join(f"{a}{b}" for a, b in m.diagonals_of(F.fixed_variables)) or "-"
        line = f"|H|={len(H):2d}  fixed: {fixed:<20s}"
        if F.in_ker_phi:
            print(line + " in ker phi")
            continue
        for sub in F.msub:
            frozen = " ".join(f"{a}{b}" for a, b in m.diagonals_of(sub.frozen)) or "-"
            try:
                status = galois_extension_witness(u, H, sub).status
            except NoOutsideVariable:
                status = "whole algebra"
            print(line + f" msub frozen {frozen:<12s} rank {sub.rank}  {status}")


if __name__ == "__main__":
    main()
