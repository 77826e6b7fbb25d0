from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sftlab import poly

from .strategies import matrices


@settings(max_examples=60, deadline=None)
@given(matrices(max_size=4, max_entry=5))
def test_charpoly_matches_sympy(A):
    expected = sympy.Matrix(A.tolist()).charpoly().all_coeffs()
    assert poly.charpoly(A.rows) == tuple(int(c) for c in expected)


def test_gcd_and_division():
    assert poly.gcd((1, -3, 2), (1, -1)) == (1, -1)
    assert poly.gcd((1, 0, 1), (1, -1)) == (1,)
    q, r = poly.divmod_poly((1, 0, -1), (1, 1))
    assert q == (1, -1) and r == (0,)


def test_sturm_counts():
    p = (1, -3, 1)  # roots (3 +- sqrt 5)/2
    assert poly.count_real_roots(p, 0, 3) == 2
    assert poly.count_real_roots(p, 1, 3) == 1
    assert poly.count_real_roots((1, 0, 1), -10, 10) == 0
    # half-open interval: a root at the right end counts, at the left end not
    assert poly.count_real_roots((1, -2), 1, 2) == 1
    assert poly.count_real_roots((1, -2), 2, 3) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(-6, 5))
def test_sturm_against_known_roots(roots, lo):
    p = (1,)
    for r in roots:
        p = tuple(np.polymul(p, (1, -r)).tolist())
    hi = lo + Fraction(5, 2)
    expected = len({r for r in roots if lo < r <= hi})
    assert poly.count_real_roots(p, lo, hi) == expected


def test_compose_power():
    assert poly.compose_power((1, -3, 1), 2) == (1, 0, -3, 0, 1)
    assert poly.degree((0, 0)) == -1
