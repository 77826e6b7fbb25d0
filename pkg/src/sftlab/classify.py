"""Consequences of the stabilized-isomorphism classification.

Stabilized automorphism groups of full shifts are isomorphic exactly when
``m**k == n**j`` for some positive k, j; more generally isomorphism forces a
rational entropy ratio, i.e. ``lambda_A**p == lambda_B**q``.  Everything here
returns a :class:`ClassificationVerdict` whose positive answers carry an
exactly verified witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .errors import TrivialShift, ValidationError
from .perron import factorize, is_integer_power_perron, perron_eigendata, require_primitive
from .sft import AdjacencyMatrix, matrix_power

ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not-isomorphic"
UNKNOWN = "unknown"
POSSIBLE = "isomorphic-to-full-shift-possible"

# reason codes
EXACT_POWERS = "exact-powers"
PRIME_SUPPORT = "different-prime-support"
EXPONENT_RATIO = "exponent-ratio-mismatch"
CHARPOLY_FACTOR = "shared-charpoly-factor"
NO_WITNESS = "no-witness-in-range"
INTEGER_POWER = "integer-power"
CONJUGATE_MODULUS = "conjugate-modulus"
PERRON_DOMINANCE = "perron-dominance"


@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: str
    witness: tuple | None
    reason: str
    details: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "witness": list(self.witness) if self.witness else None, "reason": self.reason}
        if self.details:
            out["details"] = self.details
        return out


def fullshift_isomorphic(m: int, n: int) -> ClassificationVerdict:
    """Decide whether the full m- and n-shifts have isomorphic stabilized groups.

    The witness ``(k, j)`` is the least positive solution of ``m**k == n**j``.
    """
    if m < 2 or n < 2:
        raise ValidationError("full shifts need at least 2 symbols")
    a, b = factorize(m), factorize(n)
    if set(a) != set(b):
        return ClassificationVerdict(NOT_ISOMORPHIC, None, PRIME_SUPPORT)
    p = min(a)
    g = math.gcd(a[p], b[p])
    k, j = b[p] // g, a[p] // g
    if any(a[q] * k != b[q] * j for q in a):
        return ClassificationVerdict(NOT_ISOMORPHIC, None, EXPONENT_RATIO)
    assert m**k == n**j
    return ClassificationVerdict(ISOMORPHIC, (k, j), EXACT_POWERS)


def _require_nontrivial(A: AdjacencyMatrix):
    require_primitive(A)
    if perron_eigendata(A).lambda_hi <= 1:
        raise TrivialShift("lambda_A = 1", rows=A.tolist())


def _certify_equal_radii(P: AdjacencyMatrix, Q: AdjacencyMatrix) -> bool:
    """Exact check that ``rho(P) == rho(Q)``.

    Take an interval I containing both Perron enclosures.  If each
    characteristic polynomial has a single root in I, those roots are the two
    spectral radii; if the gcd of the polynomials also has a root in I, it is
    a common root, so the radii coincide.
    """
    dp, dq = perron_eigendata(P, 1e-12), perron_eigendata(Q, 1e-12)
    lo = min(dp.lambda_lo, dq.lambda_lo)
    hi = max(dp.lambda_hi, dq.lambda_hi)
    pad = (hi - lo) + Fraction(1, 10**12)
    lo, hi = lo - pad, hi + pad
    cp, cq = poly.charpoly(P.rows), poly.charpoly(Q.rows)
    if poly.count_real_roots(cp, lo, hi) != 1 or poly.count_real_roots(cq, lo, hi) != 1:
        return False
    g = poly.gcd(cp, cq)
    return poly.degree(g) >= 1 and poly.count_real_roots(g, lo, hi) == 1


def entropy_ratio_witness(A: AdjacencyMatrix, B: AdjacencyMatrix, p_max: int, q_max: int) -> ClassificationVerdict:
    """Bounded search for ``lambda_A**p == lambda_B**q`` with an exact certificate.

    Returns the lexicographically least ``(p, q)``; ``unknown`` if the box has
    no certified pair, since rationality of the entropy ratio cannot be
    refuted by a finite search.
    """
    if p_max < 1 or q_max < 1:
        raise ValidationError("search bounds must be positive")
    _require_nontrivial(A)
    _require_nontrivial(B)
    hA = math.log(perron_eigendata(A).lam)
    hB = math.log(perron_eigendata(B).lam)
    for p in range(1, p_max + 1):
        for q in range(1, q_max + 1):
            if abs(p * hA - q * hB) > 1e-8 * max(p * hA, q * hB):
                continue
            if _certify_equal_radii(matrix_power(A, p), matrix_power(B, q)):
                return ClassificationVerdict(ISOMORPHIC, (p, q), CHARPOLY_FACTOR)
    return ClassificationVerdict(UNKNOWN, None, NO_WITNESS, {"p_max": p_max, "q_max": q_max})


def _conjugate_modulus_2x2(A: AdjacencyMatrix):
    """For 2x2 A with irrational lambda: the conjugate ``beta = tr - lambda``
    has ``|beta| = |det| / lambda``; returns ``|det|`` if that lies in (0, 1)."""
    (a, b), (c, d) = A.rows
    tr, det = a + d, a * d - b * c
    disc = tr * tr - 4 * det
    if math.isqrt(disc) ** 2 == disc:
        return None
    lam_lo = perron_eigendata(A).lambda_lo
    if det != 0 and abs(det) < lam_lo:
        return abs(det)
    return None


def fullshift_obstruction(A: AdjacencyMatrix, k_max: int = 50) -> ClassificationVerdict:
    """Can the stabilized group of ``sigma_A`` match that of some full shift?

    It can only if ``lambda_A**k`` is an integer for some k.  The per-k exact
    tests run first; if none succeeds, two certificates rule out every k:

    * ``conjugate-modulus`` (2x2): the conjugate beta has ``0 < |beta| < 1``, so
      ``lambda**k = tr(A**k) - beta**k`` sits strictly between integers.
    * ``perron-dominance``: lambda is a Perron number, and if ``lambda**k = c``
      every conjugate would also have modulus ``c**(1/k) = lambda``; hence
      lambda has no conjugates, i.e. it is an integer, which the k=1 test
      already excluded.
    """
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    _require_nontrivial(A)
    tested = []
    for k in range(1, k_max + 1):
        c = is_integer_power_perron(A, k)
        tested.append(k)
        if c is not None:
            return ClassificationVerdict(POSSIBLE, (k, c), INTEGER_POWER, {"full_shift": c})
    details = {"k_tested": [tested[0], tested[-1]]}
    if A.size == 2:
        det = _conjugate_modulus_2x2(A)
        if det is not None:
            details["abs_det"] = det
            return ClassificationVerdict(NOT_ISOMORPHIC, None, CONJUGATE_MODULUS, details)
    # the k=1 test has shown lambda is not an integer
    return ClassificationVerdict(NOT_ISOMORPHIC, None, PERRON_DOMINANCE, details)
