import pytest

from clustergal.autgrp import subgroups
from clustergal.galois import (KerPhiInput, NoOutsideVariable, NotAscending, fixed_analysis, galois_extension_witness,
                               galois_group, galois_like_chain_check, in_ker_phi, is_strict_subgroup_chain,
                               orbit_size, reverse_galois_chain, subgroup_generators, verify_galad)
from clustergal.polysurf import reflection_through, reflection_v, rotation
from clustergal.subseed import (contains, reduced, enumerate_subalgebras, subalgebra_from_ids, trivial_algebra,
                                whole_algebra)


def frozen_sub(m, *diags):
    return subalgebra_from_ids(m.graph, [], m.ids_of(diags))


def test_galois_group_extremes(hexagon):
    m, u = hexagon
    assert galois_group(u, trivial_algebra(m.graph)) == u.aut
    assert galois_group(u, whole_algebra(m.graph)) == frozenset([u.id])


def test_stabilizer_of_long_diagonal(hexagon):
    m, u = hexagon
    G = galois_group(u, frozen_sub(m, (1, 4)))
    assert G == m.subgroup([reflection_through(6, 1), rotation(6, 3)])
    assert len(G) == 4 and sum(not f.is_direct for f in G) == 2
    assert len(subgroup_generators(u, G)) == 2


def test_rotation_fixes_nothing(hexagon):
    m, u = hexagon
    H = m.subgroup([rotation(6, 1)])
    F = fixed_analysis(u, H)
    assert not F.fixed_variables and F.msub == [] and in_ker_phi(u, H)
    assert [a.is_whole() or a.variables for a in F.maximal] == [frozenset()]
    sizes = sorted(orbit_size(m.graph, H, v) for v in range(9))
    assert sizes == [3] * 3 + [6] * 6


def test_trivial_group(hexagon):
    m, u = hexagon
    F = fixed_analysis(u, [u.id])
    assert F.msub == [whole_algebra(m.graph)] and not F.in_ker_phi
    assert orbit_size(m.graph, [u.id], 0) == 1


def test_reflection_example(hexagon):
    m, u = hexagon
    H = m.subgroup([reflection_v(6, 2)])
    F = fixed_analysis(u, H)
    assert m.diagonals_of(F.fixed_variables) == [(1, 4), (2, 6), (3, 5)]
    assert F.msub == [frozen_sub(m, (2, 6), (3, 5))]
    for a in F.maximal + F.msub:
        assert all(f.fixes(a.variables) for f in H)


def test_octagon_klein(octagon):
    m, u = octagon
    H = m.subgroup([reflection_v(8, 2), reflection_v(8, 6), rotation(8, 4)])
    F = fixed_analysis(u, H)
    assert F.msub == [frozen_sub(m, (1, 5)), frozen_sub(m, (3, 7))]
    assert {a.rank for a in F.msub} == {0}
    assert in_ker_phi(u, m.subgroup([rotation(8, 4)]))


@pytest.mark.parametrize("poly", ["hexagon", "octagon"])
def test_lattice_properties(poly, request):
    m, u = request.getfixturevalue(poly)
    subs = subgroups(u.aut)
    outside = [H for H in subs if not in_ker_phi(u, H)]
    # equal ranks inside each msub
    assert all(len({a.rank for a in fixed_analysis(u, H).msub}) == 1 for H in outside)
    # phi is injective off its kernel
    keys = [frozenset(a.key for a in fixed_analysis(u, H).msub) for H in outside]
    assert len(set(keys)) == len(keys)
    # the image of xi is exactly the complement of the kernel
    assert {galois_group(u, a) for a in enumerate_subalgebras(m.graph)} == set(outside)
    assert len(subs) == {"hexagon": 16, "octagon": 19}[poly]


def test_order_reversal(hexagon):
    m, u = hexagon
    subs = enumerate_subalgebras(m.graph)
    for a in subs[::7]:
        for b in subs[::5]:
            if contains(a, b):
                assert galois_group(u, a) <= galois_group(u, b)


def test_witnesses_on_hexagon(hexagon):
    m, u = hexagon
    H1 = galois_group(u, frozen_sub(m, (1, 4)))
    r = galois_extension_witness(u, H1, frozen_sub(m, (1, 4)))
    assert r.status == "not Galois" and r.fixed_by_H and r.outside_support
    with pytest.raises(NoOutsideVariable):
        galois_extension_witness(u, [u.id], whole_algebra(m.graph))
    for H in subgroups(u.aut):
        for sub in fixed_analysis(u, H).msub:
            if not sub.is_whole():
                assert galois_extension_witness(u, H, sub).status == "not Galois"


def test_galad_examples(hexagon, octagon):
    m, u = hexagon
    H14 = galois_group(u, frozen_sub(m, (1, 4)))
    H25 = galois_group(u, frozen_sub(m, (2, 5)))
    r = verify_galad(u, H14, H25)
    assert r.conjugator is not None and r.consistent and r.forward
    f, i, j = r.forward[0]
    assert fixed_analysis(u, H14).msub[i].image(f.perm) == fixed_analysis(u, H25).msub[j]
    same = verify_galad(u, H14, H14)
    assert same.consistent and same.conjugator.is_identity()
    m8, u8 = octagon
    K = m8.subgroup([reflection_v(8, 2), reflection_v(8, 6)])
    K2 = m8.subgroup([reflection_v(8, 4), reflection_v(8, 8)])     # rotated by 45 degrees
    r8 = verify_galad(u8, K, K2)
    assert r8.conjugator is not None and r8.consistent and r8.backward_ok
    with pytest.raises(KerPhiInput):
        verify_galad(u8, K, m8.subgroup([rotation(8, 4)]))


def test_hexagon_reverse_chain(hexagon):
    m, u = hexagon
    H1 = galois_group(u, frozen_sub(m, (1, 4)))
    chain = reverse_galois_chain(u, [frozenset([u.id]), H1])
    assert chain[0].is_whole() and contains(chain[0], chain[1])
    assert reverse_galois_chain(u, [H1]) == [reduced(fixed_analysis(u, H1).msub[0])]


def test_octagon_chains(octagon):
    m, u = octagon
    s1 = m.subgroup([reflection_v(8, 2)])
    K = m.subgroup([reflection_v(8, 2), reflection_v(8, 6)])
    Hs = [frozenset([u.id]), s1, K]
    assert is_strict_subgroup_chain(Hs)
    subs = [whole_algebra(m.graph), frozen_sub(m, (2, 8), (3, 7), (4, 6)), frozen_sub(m, (3, 7))]
    rep = galois_like_chain_check(u, subs)
    assert rep["descending"] and rep["ascending"] and rep["groups"] == [1, 2, 4]
    rev = reverse_galois_chain(u, Hs)
    assert all(contains(a, b) for a, b in zip(rev, rev[1:]))
    with pytest.raises(KerPhiInput):
        reverse_galois_chain(u, [m.subgroup([rotation(8, 4)]), m.subgroup([rotation(8, 4), reflection_v(8, 2)])])
    with pytest.raises(NotAscending):
        reverse_galois_chain(u, [K, s1])
