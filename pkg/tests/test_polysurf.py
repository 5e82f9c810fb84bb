import json

import pytest

from clustergal.autgrp import compose
from clustergal.polysurf import (ExcludedSurface, InvalidCase, NotInTriangulation, SurfaceSignature,
                                 Triangulation, all_diagonals, arc_count, crosses, dihedral_group,
                                 dumps_triangulation, exchange_matrix, fixed_diagonals, flip, is_feasible,
                                 flip_graph_dot, flip_mutation_compatible, max_tagged_arcs_in_subsurface,
                                 maximal_invariant_region, mcg_iso_check, reflection_through,
                                 reflection_v, rotation, seed_from_triangulation, triangulations)
from clustergal.suite import catalan


@pytest.mark.parametrize("sig,arcs", [((0, 1, 0, 6), 3), ((1, 0, 1, 0), 3), ((0, 2, 0, 2), 2),
                                      ((0, 1, 0, 9), 6)])
def test_arc_count(sig, arcs):
    assert arc_count(SurfaceSignature(*sig)) == arcs


@pytest.mark.parametrize("sig", [(0, 0, 3, 0), (0, 1, 0, 3), (0, 1, 1, 1), (0, 1, 0, 0),
                                 (0, 0, 0, 0), (-1, 0, 0, 0), (0, 2, 0, 1)])
def test_excluded_surfaces(sig):
    with pytest.raises(ExcludedSurface):
        SurfaceSignature(*sig)


@pytest.mark.parametrize("sig,ok", [((0, 0, 4, 0), False), ((0, 1, 1, 4), False), ((0, 1, 2, 2), False),
                                    ((0, 1, 0, 6), True), ((1, 0, 1, 0), True)])
def test_feasibility(sig, ok):
    assert is_feasible(SurfaceSignature(*sig)) is ok


def test_subsurface_cases():
    assert max_tagged_arcs_in_subsurface(0, 1, 0, 0, 0, 0, 0, 0, "noMarked") == 0
    assert max_tagged_arcs_in_subsurface(0, 1, 1, 1, 0, 0, 0, 0, "oncePuncturedDisk1Mark") == 2
    assert max_tagged_arcs_in_subsurface(0, 1, 0, 2, 0, 0, 0, 2, "annulusOrDigon") == 2
    assert max_tagged_arcs_in_subsurface(0, 1, 0, 6, 0, 0, 0, 0, "general") == 3
    with pytest.raises(InvalidCase):
        max_tagged_arcs_in_subsurface(0, 1, 0, 6, 0, 0, 0, 0, "torus")


@pytest.mark.parametrize("N", range(4, 10))
def test_catalan_counts(N):
    ts = triangulations(N)
    assert len(ts) == catalan(N - 2)
    assert len(all_diagonals(N)) == N * (N - 3) // 2
    assert all(len(t.diagonals) == arc_count(SurfaceSignature(0, 1, 0, N)) for t in ts)


def test_flip_examples():
    sq = Triangulation(4, {(1, 3)})
    assert flip(sq, (1, 3)).diagonals == {(2, 4)}
    fan = Triangulation.fan(6)
    assert flip(fan, (1, 3)).diagonals == {(2, 4), (1, 4), (1, 5)}
    for t in triangulations(6):
        for d in t.ordered:
            t2 = flip(t, d)
            (new,) = t2.diagonals - t.diagonals
            assert flip(t2, new) == t
    with pytest.raises(NotInTriangulation):
        flip(fan, (2, 4))


def test_invalid_triangulations():
    with pytest.raises(ValueError):
        Triangulation(6, {(1, 3), (2, 4), (1, 5)})
    with pytest.raises(ValueError):
        Triangulation(6, {(1, 3)})


def test_exchange_matrices():
    assert exchange_matrix(Triangulation.fan(6)) == ((0, 1, 0), (-1, 0, 1), (0, -1, 0))
    assert exchange_matrix(Triangulation(4, {(1, 3)})) == ((0,),)
    assert exchange_matrix(Triangulation.fan(5)) == ((0, 1), (-1, 0))
    assert seed_from_triangulation(Triangulation.fan(6)).names == ("x13", "x14", "x15")


def test_flip_matches_mutation_on_hexagon():
    assert all(flip_mutation_compatible(t, d) for t in triangulations(6) for d in t.ordered)


def test_crossing():
    assert crosses((1, 5), (3, 7))
    assert not crosses((1, 3), (1, 5))
    assert not crosses((2, 4), (5, 7))


def test_dihedral_group_laws():
    D = dihedral_group(6)
    assert len(set(D)) == 12
    e = rotation(6, 0)
    for a in D:
        assert a * e == a == e * a
        for b in D:
            for v in range(1, 7):
                assert (a * b)(v) == a(b(v))
    s = reflection_through(6, 1)
    assert s(1) == 1 and s(4) == 4 and s * s == e
    assert reflection_v(6, 2) == s


@pytest.mark.parametrize("N,order", [(5, 10), (6, 12), (8, 16)])
def test_mcg_isomorphism(N, order):
    r = mcg_iso_check(N)
    assert r["ok"] and r["aut_order"] == r["dihedral_order"] == order


def test_psi_examples(hexagon, octagon):
    m, u = hexagon
    assert m.psi(rotation(6, 0)) == u.id
    r = m.psi(rotation(6, 1))
    assert not any(r.perm[v] == v for v in range(9))
    s = m.psi(reflection_through(6, 1))
    assert s.perm[m.var_of[(1, 4)]] == m.var_of[(1, 4)]
    assert compose(r, s) == m.psi(rotation(6, 1) * reflection_through(6, 1))
    assert fixed_diagonals(m, [u.id]) == all_diagonals(6)
    assert fixed_diagonals(m, m.subgroup([rotation(6, 1)])) == []


def test_octagon_invariant_region(octagon):
    m, _ = octagon
    H = m.subgroup([reflection_v(8, 2), reflection_v(8, 6)])
    region = maximal_invariant_region(m, H)
    assert region["fixed"] == [(1, 5), (3, 7)]
    # the two fixed diagonals cross, so each is maximal on its own
    assert region["maximal_compatible"] == [((1, 5),), ((3, 7),)]


def test_serialisation():
    t = Triangulation.fan(7)
    assert Triangulation.from_json(json.loads(dumps_triangulation(t))) == t
    dot = flip_graph_dot(5)
    assert dot.count(" -- ") == 5 and dot.count("label=") == 5
