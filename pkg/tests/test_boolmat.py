import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import has_perfect_matching_through, naive_product, strongly_connected
from primset import BoolMatrix, MatrixSet
from primset.boolmat import (
    acts_as_permutation,
    bool_product,
    doubly_stochastic_pattern,
    has_total_support,
    is_irreducible_set,
    is_nz,
    is_positive,
    nz_status,
    positive_diagonal_through,
    product_of,
    shortest_path_word,
)
from primset.errors import DimensionMismatch, NoTotalSupport, ParseError
from primset.partitions import Partition

from conftest import matrices, matrix_sets


def test_identity_is_neutral():
    m = BoolMatrix.from_lists([[0, 1, 1], [1, 0, 0], [0, 0, 1]])
    assert BoolMatrix.identity(3) @ m == m
    assert m @ BoolMatrix.identity(3) == m


def test_fig1_product_is_positive(fig1):
    m1, m2 = fig1
    assert is_positive(m1 @ m2 @ m1 @ m2)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(matrices(n=n), matrices(n=n))))
def test_product_matches_naive(pair):
    a, b = pair
    assert bool_product(BoolMatrix.from_lists(a), BoolMatrix.from_lists(b)).to_lists() == naive_product(a, b)


def test_large_matrices_skip_table():
    n = 14
    a = BoolMatrix.from_lists([[int((i * j + i) % 3 == 0) for j in range(n)] for i in range(n)])
    assert a.or_table is None
    assert (a @ a).to_lists() == naive_product(a.to_lists(), a.to_lists())


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        BoolMatrix.identity(2) @ BoolMatrix.identity(3)


def test_from_lists_rejects_bad_input():
    with pytest.raises(ValueError):
        BoolMatrix.from_lists([[1, 0], [0]])
    with pytest.raises(ValueError):
        BoolMatrix.from_lists([[2, 0], [0, 1]])


def test_is_positive():
    assert is_positive(BoolMatrix.ones(3))
    assert not is_positive(BoolMatrix.identity(2))


def test_is_positive_fig1_m1(fig1):
    assert not is_positive(fig1[0])


def test_nz_status():
    assert is_nz(BoolMatrix.from_permutation([2, 0, 1]))
    z = nz_status(BoolMatrix.zeros(2))
    assert z.zero_rows == (0, 1) and z.zero_cols == (0, 1) and not z.is_nz


def test_nz_status_fig1(fig1):
    st2 = nz_status(fig1[1])
    assert not st2.is_nz and st2.zero_rows == (0,) and st2.zero_cols == ()
    assert nz_status(fig1[0]).zero_cols == (0,)


def test_irreducible():
    n = 4
    cycle = BoolMatrix.from_permutation([(i + 1) % n for i in range(n)])
    assert is_irreducible_set(MatrixSet.of([cycle]))
    assert not is_irreducible_set(MatrixSet.of([BoolMatrix.identity(3)]))
    assert is_irreducible_set(MatrixSet.of([BoolMatrix.identity(1)]))


def test_irreducible_fig1(fig1):
    assert is_irreducible_set(fig1)


@given(matrix_sets(max_n=5))
def test_irreducible_matches_closure_oracle(s):
    assert is_irreducible_set(s) == strongly_connected([m.to_lists() for m in s])


@given(matrix_sets(min_n=2, max_n=5), st.data())
def test_shortest_path_word_is_a_walk(s, data):
    i = data.draw(st.integers(0, s.n - 1))
    j = data.draw(st.integers(0, s.n - 1))
    w = shortest_path_word(s, i, j)
    if w is None:
        assert not is_irreducible_set(s)
        return
    assert s.product(w)[i, j] == 1
    assert len(w) <= s.n - 1


def test_total_support_examples():
    assert has_total_support(BoolMatrix.from_permutation([1, 2, 0]))
    assert not has_total_support(BoolMatrix.from_lists([[1, 1], [0, 1]]))
    assert has_total_support(BoolMatrix.ones(4))
    assert not has_total_support(BoolMatrix.zeros(3))


@given(matrices(max_n=5))
def test_positive_diagonal_matches_permutation_oracle(rows):
    m = BoolMatrix.from_lists(rows)
    for i, j in m.entries():
        sigma = positive_diagonal_through(m, i, j)
        assert (sigma is not None) == has_perfect_matching_through(rows, i, j)
        if sigma is not None:
            assert sigma[i] == j and sorted(sigma) == list(range(m.n))
            assert all(m[r, c] for r, c in enumerate(sigma))


def test_total_support_implies_nz():
    for rows in ([[1, 1], [1, 1]], [[1, 0], [0, 1]], [[0, 1, 1], [1, 0, 1], [1, 1, 0]]):
        m = BoolMatrix.from_lists(rows)
        assert has_total_support(m) and is_nz(m)


def test_doubly_stochastic_examples():
    ones = doubly_stochastic_pattern(BoolMatrix.ones(2))
    assert ones.d == ((1, 1), (1, 1)) and ones.h == 2
    p = doubly_stochastic_pattern(BoolMatrix.from_permutation([1, 2, 0]))
    assert p.h == 1 and p.d == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    with pytest.raises(NoTotalSupport):
        doubly_stochastic_pattern(BoolMatrix.from_lists([[1, 1], [0, 1]]))


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.permutations(range(n)), min_size=1, max_size=3)))
def test_doubly_stochastic_postconditions(perms):
    m = BoolMatrix.zeros(len(perms[0]))
    for p in perms:
        m = m | BoolMatrix.from_permutation(p)
    pat = doubly_stochastic_pattern(m)
    n = m.n
    assert all(sum(row) == pat.h for row in pat.d)
    assert all(sum(pat.d[i][j] for i in range(n)) == pat.h for j in range(n))
    assert all((pat.d[i][j] > 0) == bool(m[i, j]) for i in range(n) for j in range(n))
    assert len(pat.perms) == pat.h


def test_acts_as_permutation_examples():
    assert acts_as_permutation(BoolMatrix.identity(4), Partition.of([[0, 3], [1], [2]])) == (0, 1, 2)
    cycle = BoolMatrix.from_permutation([1, 2, 3, 0])
    assert acts_as_permutation(cycle, Partition.singletons(4)) == (1, 2, 3, 0)
    swap = BoolMatrix.from_lists([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert acts_as_permutation(swap, Partition.of([[0, 1], [2, 3]])) == (1, 0)
    assert acts_as_permutation(BoolMatrix.ones(4), Partition.of([[0, 1], [2, 3]])) is None


def test_acts_as_permutation_needs_distinct_targets():
    m = BoolMatrix.from_lists([[1, 0], [1, 0]])
    assert acts_as_permutation(m, Partition.singletons(2)) is None


def test_product_of_empty_word_is_identity(fig1):
    assert product_of(fig1.matrices, [], 3) == BoolMatrix.identity(3)
    assert fig1.product([]) == BoolMatrix.identity(3)


def test_matrix_set_dict_round_trip(fig1):
    assert MatrixSet.from_dict(fig1.to_dict()) == fig1


@pytest.mark.parametrize("bad", [
    {"n": 2},
    {"n": 2, "matrices": []},
    {"n": 2, "matrices": [[[1, 0, 0], [0, 1, 0]]]},
    {"n": 2, "matrices": [[[1, 0], [0, 1.0]]]},
])
def test_matrix_set_rejects_malformed(bad):
    with pytest.raises(ParseError):
        MatrixSet.from_dict(bad)


@given(matrix_sets())
def test_transpose_reverses_products(s):
    w = list(range(len(s))) * 2
    assert s.product(w).T == s.transpose().product(reversed(w))
