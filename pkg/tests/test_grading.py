import random

import pytest
from hypothesis import given, settings, strategies as st

from clustergal.exactpoly import LaurentPoly
from clustergal.exgraph import enumerate_graph
from clustergal.grading import (NotHomogeneous, SingularCMatrix, c_matrix, column_skew_symmetrizer,
                                compatibility_degree_initial, denominator_vector, f_polynomial,
                                g_matrix, g_matrix_via_duality, g_vector, is_column_sign_coherent,
                                principal_extension, principal_seed)
from clustergal.suite import DUALITY_TYPES

A2 = [[0, 1], [-1, 0]]
A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
B2 = [[0, 2], [-1, 0]]

# (B, mutation sequence, C, G); G cross-checked with sympy's exact inverse
FROZEN = [
    (B2, [0, 1], ((1, -2), (1, -1)), ((-1, -2), (1, 1))),
    (B2, [1, 0, 1], ((-1, 0), (-1, 1)), ((-1, -2), (0, 1))),
    (A3, [0, 1, 2], ((0, 0, -1), (1, 0, -1), (0, 1, -1)), ((-1, -1, -1), (1, 0, 0), (0, 1, 0))),
]


@pytest.mark.parametrize("B,seq,C,G", FROZEN)
def test_frozen_c_and_g_matrices(B, seq, C, G):
    s = principal_seed(B).apply_sequence(seq)
    assert c_matrix(s) == C
    assert g_matrix(s, B) == G
    assert g_matrix_via_duality(C, column_skew_symmetrizer(B)) == G


@given(st.sampled_from(sorted(DUALITY_TYPES)), st.lists(st.integers(0, 3), max_size=12))
@settings(max_examples=60, deadline=None)
def test_duality_on_random_walks(name, walk):
    B = DUALITY_TYPES[name]
    s = principal_seed(B).apply_sequence([k % len(B) for k in walk])
    C = c_matrix(s)
    assert is_column_sign_coherent(C)
    assert g_matrix(s, B) == g_matrix_via_duality(C, column_skew_symmetrizer(B))


def test_column_symmetrizer_convention():
    assert column_skew_symmetrizer(B2) == (2, 1)
    assert column_skew_symmetrizer(A3) == (1, 1, 1)


def test_singular_c_matrix():
    with pytest.raises(SingularCMatrix):
        g_matrix_via_duality([[1, 1], [1, 1]], (1, 1))


@pytest.mark.parametrize("B", [A2, A3, B2])
def test_g_vectors_injective(B):
    g = enumerate_graph(principal_seed(B)).require_complete()
    gv = [g_vector(g.variables[v], B) for v in g.exchange_ids]
    assert len(set(gv)) == len(gv)


def test_f_polynomials_distinct_on_a3():
    g = enumerate_graph(principal_seed(A3)).require_complete()
    n = 3
    fs = [f_polynomial(g.variables[v], n) for v in g.exchange_ids if v >= 2 * n]
    assert len(fs) == 6 and len(set(fs)) == 6
    assert LaurentPoly.one(n) not in fs


def test_a2_first_mutation_invariants():
    s = principal_seed(A2).mutate(0)
    x = s.expressions[0]
    assert f_polynomial(x, 2) == LaurentPoly(2, {(1, 0): 1, (0, 0): 1})
    assert g_vector(x, A2) == (-1, 1)
    assert denominator_vector(x, 2) == (1, 0)
    assert compatibility_degree_initial(0, x) == 1


def test_initial_variable_has_degree_minus_one():
    assert compatibility_degree_initial(0, LaurentPoly.variable(2, 0)) == -1


def test_not_homogeneous():
    with pytest.raises(NotHomogeneous):
        g_vector(LaurentPoly(4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1}), A2)


def test_principal_extension_shape():
    assert principal_extension(B2) == ((0, 2), (-1, 0), (1, 0), (0, 1))
    assert c_matrix(principal_seed(B2)) == ((1, 0), (0, 1))


def test_sign_coherence_detector():
    assert not is_column_sign_coherent([[1, 0], [-1, 1]])
