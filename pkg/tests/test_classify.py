import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sftlab.classify import (
    CONJUGATE_MODULUS,
    INTEGER_POWER,
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    PERRON_DOMINANCE,
    POSSIBLE,
    UNKNOWN,
    entropy_ratio_witness,
    fullshift_isomorphic,
    fullshift_obstruction,
)
from sftlab.errors import NotPrimitive, TrivialShift, ValidationError
from sftlab.sft import AdjacencyMatrix
from sftlab.verify import corpus


def M(rows):
    return AdjacencyMatrix.from_rows(rows)


@pytest.mark.parametrize(
    "m, n, verdict, witness",
    [
        (2, 4, ISOMORPHIC, (2, 1)),
        (8, 32, ISOMORPHIC, (5, 3)),
        (6, 12, NOT_ISOMORPHIC, None),
        (2, 3, NOT_ISOMORPHIC, None),
        (36, 216, ISOMORPHIC, (3, 2)),
        (5, 5, ISOMORPHIC, (1, 1)),
    ],
)
def test_fullshift_table(m, n, verdict, witness):
    v = fullshift_isomorphic(m, n)
    assert v.verdict == verdict and v.witness == witness


def brute_fullshift(m, n, bound=12):
    return any(m**k == n**j for k in range(1, bound + 1) for j in range(1, bound + 1))


@settings(max_examples=200)
@given(st.integers(2, 70), st.integers(2, 70))
def test_fullshift_symmetric_and_matches_search(m, n):
    a, b = fullshift_isomorphic(m, n), fullshift_isomorphic(n, m)
    assert a.verdict == b.verdict
    if a.witness:
        assert b.witness == a.witness[::-1]
        k, j = a.witness
        assert m**k == n**j
    # exponents of numbers <= 70 are at most 6, so witnesses stay in the box
    assert (a.verdict == ISOMORPHIC) == brute_fullshift(m, n)


@pytest.mark.parametrize("m", [2, 3, 6, 10])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_powers_are_isomorphic(m, t):
    assert fullshift_isomorphic(m, m**t).witness == (t, 1)


def test_fullshift_validation():
    with pytest.raises(ValidationError):
        fullshift_isomorphic(1, 4)


def test_ratio_examples(golden, cat):
    v = entropy_ratio_witness(M([[2]]), M([[8]]), 5, 5)
    assert (v.verdict, v.witness) == (ISOMORPHIC, (3, 1))
    assert entropy_ratio_witness(M([[2]]), golden, 10, 10).verdict == UNKNOWN
    # cat map is the square of the golden mean
    assert entropy_ratio_witness(golden, cat, 4, 4).witness == (2, 1)
    # different matrices with the same Perron value
    assert entropy_ratio_witness(M([[1, 1], [1, 1]]), M([[2]]), 3, 3).witness == (1, 1)


@pytest.mark.parametrize("name", sorted(corpus()))
def test_ratio_reflexive(name):
    A = corpus()[name]
    assert entropy_ratio_witness(A, A, 3, 3).witness == (1, 1)


def test_ratio_errors(golden):
    with pytest.raises(TrivialShift):
        entropy_ratio_witness(M([[1]]), golden, 3, 3)
    with pytest.raises(NotPrimitive):
        entropy_ratio_witness(M([[0, 1], [1, 0]]), golden, 3, 3)
    with pytest.raises(ValidationError):
        entropy_ratio_witness(golden, golden, 0, 3)


def test_obstruction(golden, cat):
    v = fullshift_obstruction(M([[4]]))
    assert (v.verdict, v.witness, v.reason) == (POSSIBLE, (1, 4), INTEGER_POWER)
    assert fullshift_obstruction(M([[1, 1], [1, 1]])).witness == (1, 2)
    assert fullshift_obstruction(cat).reason == CONJUGATE_MODULUS
    assert fullshift_obstruction(golden).reason == CONJUGATE_MODULUS
    cyc = fullshift_obstruction(corpus()["cycle3"], k_max=10)
    assert (cyc.verdict, cyc.reason) == (NOT_ISOMORPHIC, PERRON_DOMINANCE)


def test_obstruction_square_root():
    # [[0, 2], [1, 0]] is not primitive, but [[1, 2], [1, 0]] has lambda = 2
    assert fullshift_obstruction(M([[1, 2], [1, 0]])).witness == (1, 2)
    # lambda = sqrt 2 + 1 is a unit: conjugate modulus certificate applies
    v = fullshift_obstruction(M([[2, 1], [1, 0]]))
    assert v.reason == CONJUGATE_MODULUS and v.details["abs_det"] == 1
