"""Perron-Frobenius data with certified enclosures.

The dominant eigenvalue is bracketed by Collatz-Wielandt quotients: for any
positive vector x, ``min_i (Ax)_i / x_i <= lambda <= max_i (Ax)_i / x_i``.
Power iteration runs on integer vectors (rescaled by bit shifts) so that every
quotient is an exact rational and every reported bound is rigorous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import poly
from .errors import NotPrimitive, ResourceCapError, ValidationError
from .sft import AdjacencyMatrix, is_primitive, matrix_power

DEFAULT_TOL = 1e-12

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class PerronData:
    lambda_lo: Fraction
    lambda_hi: Fraction
    u: np.ndarray  # left eigenvector, u @ v == 1
    v: np.ndarray  # right eigenvector, sums to 1
    vu: np.ndarray  # outer(v, u): the limit of (A / lambda)**k
    iterations: int
    tolerance: float

    @property
    def width(self) -> Fraction:
        return self.lambda_hi - self.lambda_lo

    @property
    def lam(self) -> float:
        """Midpoint of the enclosure as a float."""
        return float((self.lambda_lo + self.lambda_hi) / 2)

    def contains(self, x) -> bool:
        return self.lambda_lo <= x <= self.lambda_hi


def require_primitive(A: AdjacencyMatrix) -> int:
    ok, K = is_primitive(A)
    if not ok:
        raise NotPrimitive("matrix is not primitive", rows=A.tolist())
    return K


def _collatz_wielandt(rows, tol: float, max_iter: int):
    """Integer power iteration; returns (lo, hi, x, iterations)."""
    r = len(rows)
    scale = max(sum(row) for row in rows)
    bits = max(64, math.ceil(math.log2(scale / tol)) + 32) if tol > 0 else 256
    x = [1 << bits] * r
    lo, hi = Fraction(0), Fraction(scale)
    for it in range(1, max_iter + 1):
        y = [sum(a * b for a, b in zip(row, x)) for row in rows]
        qs = [Fraction(yi, xi) for yi, xi in zip(y, x)]
        lo = max(lo, min(qs))
        hi = min(hi, max(qs))
        if hi - lo <= tol:
            return lo, hi, y, it
        shift = max(y).bit_length() - (bits + 8)
        if shift > 0:
            y = [yi >> shift for yi in y]
        if min(y) == 0:
            raise ResourceCapError("eigenvector entry underflowed the working precision")
        x = y
    raise ResourceCapError(f"enclosure width {float(hi - lo):.3g} > tol after {max_iter} iterations")


@lru_cache(maxsize=1024)
def perron_eigendata(A: AdjacencyMatrix, tol: float = DEFAULT_TOL, max_iter: int = 100_000) -> PerronData:
    """Certified enclosure of the Perron eigenvalue plus normalized eigenvectors.

    Raises
    ------
    NotPrimitive
        If no power of ``A`` is strictly positive.
    """
    if tol < 0:
        raise ValidationError("tol must be nonnegative")
    require_primitive(A)
    lo, hi, x, iters = _collatz_wielandt(A.rows, tol, max_iter)
    lo_t, hi_t, y, iters_t = _collatz_wielandt(A.transpose().rows, tol, max_iter)
    lo, hi = max(lo, lo_t), min(hi, hi_t)
    top = max(x)
    v = np.array([xi / top for xi in x], dtype=float)
    v /= v.sum()
    top = max(y)
    u = np.array([yi / top for yi in y], dtype=float)
    u /= u @ v
    return PerronData(lo, hi, u, v, np.outer(v, u), max(iters, iters_t), tol)


def topological_entropy(A: AdjacencyMatrix, tol: float = DEFAULT_TOL) -> tuple:
    """Enclosure ``(log lambda_lo, log lambda_hi)`` of the entropy of the edge shift."""
    data = perron_eigendata(A, tol)
    lo = math.log(data.lambda_lo) if data.lambda_lo > 0 else -math.inf
    hi = math.log(data.lambda_hi)
    if data.lambda_lo != data.lambda_hi:
        lo, hi = math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)
    return lo, hi


def _nullspace(rows) -> list:
    """Basis of the rational null space of an integer matrix."""
    M = [[Fraction(x) for x in row] for row in rows]
    n_rows, n_cols = len(M), len(M[0])
    pivots, r = [], 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(n_rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -M[i][f]
        basis.append(vec)
    return basis


def is_perron_eigenvalue(A: AdjacencyMatrix, c: int) -> bool:
    """Exact test: ``c`` is an eigenvalue of ``A`` with a positive eigenvector.

    For a primitive matrix only the Perron eigenvalue has one.
    """
    if poly.evaluate(poly.charpoly(A.rows), c) != 0:
        return False
    shifted = [[A[i, j] - (c if i == j else 0) for j in range(A.size)] for i in range(A.size)]
    basis = _nullspace(shifted)
    if len(basis) != 1:
        return False
    vec = basis[0]
    return all(x > 0 for x in vec) or all(x < 0 for x in vec)


def is_integer_power_perron(A: AdjacencyMatrix, k: int = 1):
    """Return c if ``lambda_A**k == c`` for an integer c, else None.

    The Perron eigenvalue of ``A**k`` is enclosed to width below 1/4; the only
    integer candidates are the ones inside the enclosure (any integer root
    there is automatically a divisor of the constant term), and a candidate
    is accepted only if it is an exact root of the characteristic polynomial
    of ``A**k`` with a positive eigenvector.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    require_primitive(A)
    B = matrix_power(A, k)
    data = perron_eigendata(B, tol=0.125)
    lo = math.ceil(data.lambda_lo)
    hi = math.floor(data.lambda_hi)
    for c in range(lo, hi + 1):
        if is_perron_eigenvalue(B, c):
            return c
    return None


def factorize(n: int) -> dict:
    """Prime factorization by trial division, ``{p: e}``."""
    if n < 1:
        raise ValidationError("can only factor positive integers")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> tuple:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


def root_exponent_bound_fullshift(n: int, j: int):
    """Roots of the j-th power of the full n-shift allowed by the Perron test.

    ``n**(|j|/k)`` is a Perron number iff it is an integer, i.e. iff k divides
    ``g = gcd_p(|j| * e_p)`` where ``n = prod p**e_p``.  Returns ``(g, divisors(g))``.
    """
    if n < 2:
        raise ValidationError("n must be >= 2")
    if j == 0:
        raise ValidationError("j must be nonzero")
    g = 0
    for e in factorize(n).values():
        g = math.gcd(g, abs(j) * e)
    return g, divisors(g)


def integer_root(N: int, k: int):
    """Exact integer k-th root of N >= 0, or None."""
    if N < 0:
        return None
    if N in (0, 1) or k == 1:
        return N
    lo, hi = 0, 1 << (N.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= N:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**k == N else None


def perron_root_feasible(A: AdjacencyMatrix, j: int, k: int, tol: float = 1e-9) -> str:
    """Is ``lambda_A**(j/k)`` a Perron number?  Returns ``"yes"``, ``"no"`` or ``"unknown"``.

    Write ``j/k = j'/k'`` in lowest terms and ``mu = lambda**(j'/k')``.
    ``k' == 1``: mu is the Perron eigenvalue of ``A**j'``, so yes.
    ``lambda**j'`` an integer N: every conjugate of mu is a k'-th root of N, all
    of modulus mu, so mu is Perron iff N is a perfect k'-th power.
    Otherwise the numerically computed spectrum is checked for a conjugate
    candidate strictly above mu (impossible, so a failure is a numerical
    inconsistency) and the answer is unknown: the k'-th roots ``omega * mu``
    always tie in modulus, and deciding whether they are conjugates needs
    algebraic factorization.
    """
    if j < 1 or k < 1:
        raise ValidationError("j and k must be positive")
    require_primitive(A)
    g = math.gcd(j, k)
    jr, kr = j // g, k // g
    if kr == 1:
        return YES
    N = is_integer_power_perron(A, jr)
    if N is not None:
        return YES if integer_root(N, kr) is not None else NO
    eig = np.linalg.eigvals(np.array(matrix_power(A, jr).tolist(), dtype=float))
    lam_j = float(max(abs(eig)))
    mu = math.exp(jr * math.log(perron_eigendata(A).lam) / kr)
    others = sorted(abs(eig))[:-1]
    if any(abs(b) ** (1.0 / kr) > mu + tol * max(1.0, mu) for b in others) or abs(lam_j ** (1.0 / kr) - mu) > 1e-6 * mu:
        raise ArithmeticError("numerical spectrum inconsistent with the Perron enclosure")
    return UNKNOWN
