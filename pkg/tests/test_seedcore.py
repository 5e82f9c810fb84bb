import random

import pytest
from hypothesis import given, settings, strategies as st

from clustergal.exactpoly import LaurentPoly
from clustergal.seedcore import (NotSkewSymmetrizable, Seed, SeedError, empty_seed,
                                 find_skew_symmetrizer, mutate_matrix)
from clustergal.suite import random_seed

A2 = [[0, 1], [-1, 0]]

seeds = st.integers(0, 10**6).map(lambda s: random_seed(random.Random(s)))
# small entries keep the expressions along a walk small
mild = st.integers(0, 10**6).map(lambda s: random_seed(random.Random(s), bound=1))


@given(seeds, st.data())
def test_mutation_is_involution(s, data):
    k = data.draw(st.integers(0, s.n - 1))
    assert s.mutate(k).mutate(k) == s
    assert mutate_matrix(mutate_matrix(s.matrix, k), k) == s.matrix


@given(mild, st.lists(st.integers(0, 3), max_size=4))
@settings(max_examples=60)
def test_symmetrizer_preserved_and_frozen_fixed(s, seq):
    D = s.skew_symmetrizer()
    t = s.apply_sequence([k % s.n for k in seq])
    assert t.skew_symmetrizer() == D
    assert t.expressions[s.n:] == s.expressions[s.n:]
    assert t.names == s.names


@given(mild, st.lists(st.integers(0, 3), max_size=5))
@settings(max_examples=60)
def test_laurent_with_positive_coefficients(s, seq):
    t = s.apply_sequence([k % s.n for k in seq])
    assert all(p.is_positive() for p in t.expressions)


def test_a2_single_mutation():
    s = Seed.initial(A2)
    x1, x2 = s.expressions
    t = s.mutate(0)
    assert t.expressions[0] == (x2 + 1).exact_div(x1)
    assert t.matrix == ((0, -1), (1, 0))


def test_a2_pentagon_periodicity():
    s = Seed.initial(A2)
    t = s.apply_sequence([0, 1] * 5)
    assert t.expressions == s.expressions
    assert t.apply_sequence([]) == t


def test_skew_symmetrizer_examples():
    assert find_skew_symmetrizer([[0, 2], [-1, 0]]) == (1, 2)
    assert find_skew_symmetrizer([[0, 3], [-1, 0]]) == (1, 3)
    assert find_skew_symmetrizer([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]) == (1, 1, 1)
    assert find_skew_symmetrizer([]) == ()


@pytest.mark.parametrize("B", [[[1]], [[0, 1], [1, 0]], [[0, 1], [0, 0]],
                               [[0, 1, 1], [-1, 0, 1], [-2, -1, 0]]])
def test_not_skew_symmetrizable(B):
    with pytest.raises(NotSkewSymmetrizable):
        find_skew_symmetrizer(B)


def test_frozen_rows_mutate_but_stay_frozen():
    s = Seed.initial([[0, 1], [-1, 0], [1, 0]], 2)
    t = s.mutate(0)
    assert t.matrix[2] == (-1, 1)
    with pytest.raises(IndexError):
        s.mutate(2)


def test_bad_seeds():
    with pytest.raises(SeedError):
        Seed(("a",), ((0,),), 2, (LaurentPoly.variable(1, 0),))
    with pytest.raises(SeedError):
        Seed.from_json({"names": ["a"]})


def test_json_roundtrip():
    s = Seed.initial([[0, 2], [-1, 0], [1, 1]], 2, ["a", "b", "y"])
    assert Seed.loads(s.dumps()) == s
    assert empty_seed().m == 0
