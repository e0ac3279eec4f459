from fractions import Fraction

import pytest

from quatcusps.groups import (
    DIM_G,
    CongruenceLevel,
    HypothesisError,
    cusp_count,
    cusp_count_level_one,
    global_index,
    local_group_order,
    local_index,
    sl4_order_oracle,
)
from quatcusps.numtheory import primes_up_to
from quatcusps.quaternion import QuaternionAlgebra, algebra_for_prime, class_number

SPLIT_AT_ODD = QuaternionAlgebra(-1, -1)
INDEFINITE = QuaternionAlgebra(-1, 3)


def split_product_form(q):
    q = Fraction(q)
    return q**15 * (1 - q**-2) * (1 - q**-3) * (1 - q**-4)


def ramified_product_form(q):
    q = Fraction(q)
    return q**15 * (1 + 1 / q) * (1 - q**-4)


def test_dim_g():
    # dim SL_4 = 4^2 - 1
    assert DIM_G == 4**2 - 1


def test_local_group_order_examples():
    assert local_group_order(QuaternionAlgebra(1, 1), 2) == 20160
    assert local_group_order(SPLIT_AT_ODD, 2) == 46080
    assert local_group_order(SPLIT_AT_ODD, 3) == 12130560


def test_local_group_order_matches_product_forms():
    for p in primes_up_to(60):
        A = algebra_for_prime(p)
        assert local_group_order(A, p) == ramified_product_form(p)
        for q in primes_up_to(30):
            if q != p:
                assert local_group_order(A, q) == split_product_form(q)


def test_local_group_order_rejects_composite():
    with pytest.raises(ValueError):
        local_group_order(SPLIT_AT_ODD, 4)


def test_local_index_examples():
    assert local_index(SPLIT_AT_ODD, 3, 1) == 12130560
    assert local_index(SPLIT_AT_ODD, 3, 2) == 3**15 * 12130560
    assert local_index(SPLIT_AT_ODD, 2, 1) == 46080
    with pytest.raises(ValueError):
        local_index(SPLIT_AT_ODD, 3, 0)


@pytest.mark.parametrize("A", [SPLIT_AT_ODD, INDEFINITE, algebra_for_prime(11)])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_tower_ratio(A, p):
    for e in range(1, 5):
        assert local_index(A, p, e + 1) == p**DIM_G * local_index(A, p, e)


def test_global_index():
    assert global_index(SPLIT_AT_ODD, CongruenceLevel.from_int(3)).value == 12130560
    assert global_index(SPLIT_AT_ODD, CongruenceLevel()).value == 1
    six = global_index(SPLIT_AT_ODD, CongruenceLevel.from_int(6))
    assert six.value == 46080 * 12130560
    assert six.local_factors == ((2, 1, 46080), (3, 1, 12130560))


def test_global_index_multiplicative():
    A = algebra_for_prime(5)
    level = CongruenceLevel.from_int(2**3 * 5**2 * 7)
    result = global_index(A, level)
    assert result.value == local_index(A, 2, 3) * local_index(A, 5, 2) * local_index(A, 7, 1)
    assert level.norm == 2**3 * 5**2 * 7


def test_level_validation():
    with pytest.raises(ValueError):
        CongruenceLevel(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        CongruenceLevel(((4, 1),))
    with pytest.raises(ValueError):
        CongruenceLevel(((3, 0),))


def test_cusp_count_level_one():
    assert cusp_count_level_one(SPLIT_AT_ODD) == 1
    assert cusp_count_level_one(algebra_for_prime(11)) == 4
    assert cusp_count_level_one(INDEFINITE, 1) == 1
    assert cusp_count_level_one(INDEFINITE, 3) == 3
    with pytest.raises(HypothesisError):
        cusp_count_level_one(QuaternionAlgebra(1, 1), 1)
    with pytest.raises(ValueError):
        cusp_count_level_one(INDEFINITE)


def test_cusp_count_examples():
    assert cusp_count(SPLIT_AT_ODD, 1, 3, 1) == 12130560 // 81 == 149760
    assert cusp_count(SPLIT_AT_ODD, 1, 3, 2) == 149760 * 3**11
    assert cusp_count(algebra_for_prime(11), 2, 3, 1) == 599040
    assert cusp_count(algebra_for_prime(11), None, 3, 1) == 599040


def test_cusp_count_rejects_ramified_prime():
    with pytest.raises(HypothesisError, match="splits"):
        cusp_count(SPLIT_AT_ODD, 1, 2, 1)
    with pytest.raises(HypothesisError):
        cusp_count(algebra_for_prime(7), 1, 7, 2)


def test_cusp_count_indefinite_needs_consistent_mu():
    idx = local_index(INDEFINITE, 5, 1)
    with pytest.raises(ValueError):
        cusp_count(INDEFINITE, 1, 5, 1)
    assert cusp_count(INDEFINITE, 1, 5, 1, mu=1) == idx // 5**4
    assert cusp_count(INDEFINITE, 1, 5, 1, mu=24) * 24 * 5**4 == idx
    with pytest.raises(HypothesisError):
        cusp_count(INDEFINITE, 1, 5, 1, mu=7**5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cusp_count_definite(p):
    for q in primes_up_to(30):
        if q == p:
            continue
        A = algebra_for_prime(p)
        for e in range(1, 4):
            c = cusp_count(A, None, q, e)
            assert c * q ** (4 * e) == cusp_count_level_one(A) * local_index(A, q, e)
            assert cusp_count(A, None, q, e + 1) == q**11 * c


def test_cusp_formula_degenerates_to_level_one():
    # at e = 0 the level is trivial: the index is an empty product and N = 1
    for p in (2, 5, 11, 13):
        A = algebra_for_prime(p)
        trivial = CongruenceLevel()
        h = class_number(p)
        value = Fraction(h * h * global_index(A, trivial).value, trivial.norm**4)
        assert value == cusp_count_level_one(A)


def test_oracle_q2():
    assert sl4_order_oracle(2) == 20160


def test_oracle_chunked_q2():
    assert sl4_order_oracle(2, workers=3) == sl4_order_oracle(2) == 20160


def test_oracle_rejects_large_q():
    with pytest.raises(ValueError):
        sl4_order_oracle(5)
