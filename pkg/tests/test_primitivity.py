from itertools import product

import pytest
from hypothesis import given

from oracles import brute_exponent, matrix_power_exponent
from primset import BoolMatrix, MatrixSet
from primset.boolmat import is_irreducible_set, is_nz
from primset.errors import CapExceeded, NotPrimitive, PreconditionViolated
from primset.primitivity import (
    exponent,
    is_primitive,
    pv_partition_test,
    semigroup_closure,
    verify_witness,
)

from conftest import matrix_sets, wielandt


def test_fig1(fig1):
    r = exponent(fig1)
    assert r.exponent == 4 and r.witness == (0, 1, 0, 1)
    assert is_primitive(fig1)


def test_all_ones():
    assert exponent(MatrixSet.of([BoolMatrix.ones(3)])).exponent == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_wielandt(n):
    w = wielandt(n)
    e = exponent(MatrixSet.of([w])).exponent
    assert e == n * n - 2 * n + 2 == matrix_power_exponent(w.to_lists(), 40)
    assert e <= (n - 1) ** 2 + 1


def test_imprimitive_sets():
    perms = MatrixSet.of([BoolMatrix.from_permutation([1, 2, 0]), BoolMatrix.from_permutation([1, 0, 2])])
    assert not is_primitive(perms)
    with pytest.raises(NotPrimitive):
        exponent(MatrixSet.of([BoolMatrix.identity(2)]))


def test_cap():
    with pytest.raises(CapExceeded) as exc:
        exponent(MatrixSet.of([wielandt(6)]), cap=5)
    assert exc.value.products_seen > 5


@given(matrix_sets(max_n=3, max_k=2))
def test_exponent_matches_brute_force(s):
    try:
        r = exponent(s)
    except NotPrimitive:
        assert brute_exponent([m.to_lists() for m in s], 6) is None
        return
    assert brute_exponent([m.to_lists() for m in s], r.exponent) == r.exponent
    assert verify_witness(s, r.witness)


def test_verify_witness(fig1):
    assert verify_witness(fig1, [0, 1, 0, 1])
    assert not verify_witness(fig1, [0, 0, 0, 0])
    assert not verify_witness(fig1, [])
    assert verify_witness(MatrixSet.of([BoolMatrix.ones(1)]), [])
    with pytest.raises(ValueError):
        verify_witness(fig1, [2])


def test_semigroup_closure_layers(fig1):
    c = semigroup_closure(fig1)
    assert not c.truncated
    assert len(c.layers[0]) == 2
    assert ((7, 7, 7)) in c.layers[3]
    assert all(((7, 7, 7)) not in layer for layer in c.layers[:3])


def test_semigroup_closure_cap():
    assert semigroup_closure(MatrixSet.of([wielandt(6)]), cap=3).truncated
    assert semigroup_closure(MatrixSet.of([wielandt(6)]), max_length=2).truncated


def test_pv_imprimitive_pair():
    n = 4
    s = MatrixSet.of([BoolMatrix.from_permutation([(i + 1) % n for i in range(n)]), BoolMatrix.identity(n)])
    cert = pv_partition_test(s)
    assert cert is not None and cert.partition.k >= 2


def test_pv_primitive_pair():
    # an NZ variant of the fig1 set: column 0 of the first matrix and row 0 of the second are filled
    s = MatrixSet.from_lists([
        [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
        [[1, 0, 0], [0, 1, 1], [1, 1, 0]],
    ])
    assert all(is_nz(m) for m in s) and is_irreducible_set(s) and is_primitive(s)
    assert pv_partition_test(s) is None


def test_pv_preconditions(fig1):
    with pytest.raises(PreconditionViolated):
        pv_partition_test(fig1)
    with pytest.raises(PreconditionViolated):
        pv_partition_test(MatrixSet.of([BoolMatrix.identity(3)]))
    big = MatrixSet.of([BoolMatrix.from_permutation([(i + 1) % 11 for i in range(11)])])
    with pytest.raises(CapExceeded):
        pv_partition_test(big)


def _nz_3x3():
    for bits in product((0, 1), repeat=9):
        m = BoolMatrix.from_lists([list(bits[0:3]), list(bits[3:6]), list(bits[6:9])])
        if is_nz(m):
            yield m


def test_pv_certificate_is_consistent_on_2x2_sweep():
    mats = [m for m in (BoolMatrix.from_lists([[a, b], [c, d]]) for a, b, c, d in product((0, 1), repeat=4)) if is_nz(m)]
    for x in mats:
        for y in mats:
            s = MatrixSet.of([x, y])
            if not is_irreducible_set(s):
                continue
            cert = pv_partition_test(s)
            assert (cert is None) == is_primitive(s)
