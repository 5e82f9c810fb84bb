"""Octagon: a Klein four-subgroup, its conjugate, and a Galois-like chain."""
from clustergal.autgrp import are_conjugate
from clustergal.galois import Universe, galois_like_chain_check, reverse_galois_chain
from clustergal.polysurf import maximal_invariant_region, polygon_model, reflection_v, rotation
from clustergal.subseed import subalgebra_from_ids


def show(m, u, name, H):
    F = u.fixed_analysis(H)
    region = maximal_invariant_region(m, H)
    print(f"{name}: |H| = {len(H)}, fixed diagonals {region['fixed']}")
    print(f"  maximal compatible: {region['maximal_compatible']}")
    for sub in F.msub:
        print(f"  msub: frozen {m.diagonals_of(sub.frozen)}, rank {sub.rank}")
    if F.in_ker_phi:
        print("  in ker phi")


def main():
    m = polygon_model(8)
    u = Universe(m.graph)
    print(f"octagon: {len(m.graph.variables)} variables, |Aut| = {len(u.aut)}")

    K = m.subgroup([reflection_v(8, 2), reflection_v(8, 6)])
    K2 = m.subgroup([reflection_v(8, 4), reflection_v(8, 8)])
    show(m, u, "K", K)
    show(m, u, "K'", K2)
    f = are_conjugate(K, K2, u.aut)
    print(f"K and K' conjugate: {f is not None}")
    show(m, u, "<rot180>", m.subgroup([rotation(8, 4)]))

    s1 = m.subgroup([reflection_v(8, 2)])
    chain = [frozenset([u.id]), s1, K]
    # explicit descending chain: whole algebra > {28, 37, 46} frozen > {37} frozen
    subs = [u.fixed_analysis(chain[0]).msub[0],
            subalgebra_from_ids(m.graph, [], m.ids_of([(2, 8), (3, 7), (4, 6)])),
            subalgebra_from_ids(m.graph, [], m.ids_of([(3, 7)]))]
    print("forward check:", galois_like_chain_check(u, subs))
    print("reverse chain of reduced sub-seeds:")
    for H, sub in zip(chain, reverse_galois_chain(u, chain)):
        print(f"  |H| = {len(H)} -> {sub.describe()}")


if __name__ == "__main__":
    main()
