"""Exact univariate polynomials over the rationals.

Polynomials are tuples of coefficients from the leading term down, e.g.
``(1, -3, 1)`` is ``x**2 - 3x + 1``.  Only what the Perron and classification
code needs is here: characteristic polynomials, evaluation, gcd and Sturm
root counting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def charpoly(rows: Sequence[Sequence[int]]) -> tuple:
    """Characteristic polynomial ``det(xI - M)`` of an integer matrix.

    Faddeev-LeVerrier in exact integers: the divisions by k are exact for
    integer matrices.
    """
    n = len(rows)
    M = [[0] * n for _ in range(n)]
    coeffs = [1]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = [[sum(rows[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c
        M = AM
        tr = sum(sum(rows[i][t] * M[t][i] for t in range(n)) for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs.append(c)
    return tuple(coeffs)


def evaluate(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def strip(p: Sequence) -> tuple:
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return tuple(p)


def degree(p: Sequence) -> int:
    p = strip(p)
    return -1 if p == (0,) else len(p) - 1


def divmod_poly(a: Sequence, b: Sequence):
    a = [Fraction(x) for x in strip(a)]
    b = [Fraction(x) for x in strip(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a != [0]:
        shift = len(a) - len(b)
        factor = a[0] / b[0]
        q[len(q) - 1 - shift] = factor
        a = [x - factor * y for x, y in zip(a, b + [0] * shift)]
        a = list(strip(a[1:] or [0]))
    return strip(q), strip(a)


def monic(p: Sequence) -> tuple:
    p = strip([Fraction(x) for x in p])
    return tuple(x / p[0] for x in p)


def gcd(a: Sequence, b: Sequence) -> tuple:
    """Monic gcd over the rationals."""
    a, b = strip(a), strip(b)
    while degree(b) >= 0:
        a, b = b, divmod_poly(a, b)[1]
    if degree(a) < 0:
        return (Fraction(0),)
    return monic(a)


def derivative(p: Sequence) -> tuple:
    p = strip(p)
    n = len(p) - 1
    if n == 0:
        return (0,)
    return tuple(c * (n - i) for i, c in enumerate(p[:-1]))


def squarefree(p: Sequence) -> tuple:
    g = gcd(p, derivative(p))
    if degree(g) <= 0:
        return monic(p)
    return monic(divmod_poly(p, g)[0])


def sturm_sequence(p: Sequence) -> list:
    p = squarefree(p)
    seq = [p, derivative(p)]
    while degree(seq[-1]) > 0:
        rem = divmod_poly(seq[-2], seq[-1])[1]
        if degree(rem) < 0:
            break
        seq.append(tuple(-x for x in rem))
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Sequence, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if degree(p) <= 0:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes([evaluate(s, lo) for s in seq]) - _sign_changes([evaluate(s, hi) for s in seq])


def compose_power(p: Sequence, k: int) -> tuple:
    """Coefficients of ``p(x**k)``."""
    p = strip(p)
    out = []
    for c in p[:-1]:
        out.append(c)
        out.extend([0] * (k - 1))
    out.append(p[-1])
    return tuple(out)
