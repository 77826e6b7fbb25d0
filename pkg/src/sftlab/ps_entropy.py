"""Local product-simple entropy of the stabilized group of a mixing SFT.

The subgroups ``Simp_ev(Gamma^(kn))`` are products of alternating groups on
the edge sets of the power graphs, one factor per vertex pair.  Along them

    a_n = (1/n) ln ln |Simp_ev(Gamma^(kn))|  ->  k ln lambda_A,

while periodic-point counting bounds the same quantity from above.  This
module builds the groups, finds admissible ``(C, D, r)`` constants, samples
the growth series and checks the upper-bound chain.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    AdmissibilityNotReached,
    EntryTooSmall,
    InsufficientSamples,
    ResourceCapError,
    TrivialShift,
    ValidationError,
)
from .extlog import ExtLog, alt_order, lnfact
from .perron import perron_eigendata, require_primitive, topological_entropy
from .sft import AdjacencyMatrix, matrix_power
from .symmetries import log_alt_order

DEFAULT_DIGIT_BUDGET = 10**5


@dataclass(frozen=True)
class PSParams:
    """Constants of the class PS_{C,D,r}: r simple non-abelian factors with
    pairwise log-order ratios in [C, D]."""

    C: float
    D: float
    r: int

    def __post_init__(self):
        if not 0 < self.C <= 1:
            raise ValidationError(f"C must lie in (0, 1], got {self.C}")
        if self.D < 1:
            raise ValidationError(f"D must be >= 1, got {self.D}")
        if self.r < 1:
            raise ValidationError("r must be a positive integer")

    def to_json(self):
        return {"C": self.C, "D": self.D, "r": self.r}


@dataclass(frozen=True)
class ProductOfAlternating:
    """``prod Alt(n_i)`` over the edge-set sizes of a power graph.

    Sizes 0 and 1 give trivial factors and are dropped (``dropped`` counts
    them); sizes 2..4 stay in ``degrees`` but are flagged in ``nonsimple``
    since those alternating groups are not simple non-abelian.
    """

    degrees: tuple
    dropped: int = 0

    @classmethod
    def from_sizes(cls, sizes) -> "ProductOfAlternating":
        kept = tuple(n for n in sizes if n > 1)
        return cls(kept, len(sizes) - len(kept))

    @property
    def nonsimple(self) -> tuple:
        return tuple(t for t, n in enumerate(self.degrees) if n < 5)

    def log_orders(self) -> tuple:
        return tuple(alt_order(n) for n in self.degrees)

    def order(self) -> ExtLog:
        return log_alt_order(self.degrees)

    def log_ratio_extremes(self):
        """``(min, max)`` over ordered factor pairs of ``log|G_j| / log|G_i|``."""
        lls = [g.loglog() for g in self.log_orders()]
        spread = max(lls) - min(lls)
        return math.exp(-spread), math.exp(spread)


def is_ps_member(G: ProductOfAlternating, p: PSParams) -> bool:
    if G.dropped or len(G.degrees) != p.r or G.nonsimple:
        return False
    lo, hi = G.log_ratio_extremes()
    return p.C <= lo and hi <= p.D


def simp_ev_group(A: AdjacencyMatrix, k: int) -> ProductOfAlternating:
    """The factor structure of ``Simp_ev(Gamma^(k))``: degrees are the entries of ``A**k``."""
    require_primitive(A)
    return ProductOfAlternating.from_sizes(matrix_power(A, k).entries())


@dataclass(frozen=True)
class Admissibility:
    params: PSParams
    K: int
    k_max: int
    epsilon: float
    rho_min: float
    rho_max: float

    def __iter__(self):
        return iter((self.params, self.K))

    def to_json(self):
        return {
            "params": self.params.to_json(),
            "K": self.K,
            "k_max": self.k_max,
            "epsilon": self.epsilon,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
        }


def admissible_params(A: AdjacencyMatrix, epsilon: float = 0.05, k_max: int = 200) -> Admissibility:
    """A-admissible constants ``(C, D, r**2)`` and the verified onset K.

    The limits of the log-order ratios are the ratios of entries of ``vu``;
    they are widened by ``epsilon`` and membership is then checked for every
    k up to ``k_max``.  K is the least k from which membership holds through
    ``k_max``.
    """
    if not 0 < epsilon < 1:
        raise ValidationError("epsilon must lie in (0, 1)")
    data = perron_eigendata(A)
    rho_min = float(data.vu.min() / data.vu.max())
    rho_max = 1.0 / rho_min
    if rho_min == 1.0:
        # a single ratio value 1 needs no widening
        C = D = 1.0
    else:
        C = min(1.0, rho_min * (1 - epsilon))
        D = max(1.0, rho_max * (1 + epsilon))
    params = PSParams(C, D, A.size**2)
    K = None
    for k in range(k_max, 0, -1):
        if not is_ps_member(simp_ev_group(A, k), params):
            break
        K = k
    if K is None:
        raise AdmissibilityNotReached(f"membership fails at k_max={k_max}", k_max=k_max, params=params.to_json())
    return Admissibility(params, K, k_max, epsilon, rho_min, rho_max)


@dataclass(frozen=True)
class Sample:
    n: int
    a_n: float
    log_order: ExtLog
    exact: bool = True


@dataclass
class GrowthSeries:
    matrix: AdjacencyMatrix
    k: int
    samples: list
    target: tuple  # enclosure of k * ln(lambda)
    undefined: list = field(default_factory=list)  # n with |Simp_ev| <= e

    @property
    def target_mid(self) -> float:
        return 0.5 * (self.target[0] + self.target[1])

    def sample(self, n: int) -> Sample:
        for s in self.samples:
            if s.n == n:
                return s
        raise KeyError(n)

    def residual(self, n: int) -> float:
        return self.sample(n).a_n - self.target_mid

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "a_n", "residual", "target"])
        for s in self.samples:
            writer.writerow([s.n, repr(s.a_n), repr(s.a_n - self.target_mid), repr(self.target_mid)])
        return buf.getvalue()


def _perron_size_logs(A: AdjacencyMatrix, power: int, data):
    """``ln (A**power)_ij`` from ``lambda**power * vu_ij``, with a relative error bound."""
    eig = sorted(abs(np.linalg.eigvals(np.array(A.tolist(), dtype=float))))
    second = eig[-2] if len(eig) > 1 else 0.0
    lam = data.lam
    kappa = float(np.abs(data.vu).sum()) / float(data.vu.min()) * A.size
    rel_err = kappa * (second / lam) ** power if second > 0 else 0.0
    logs = [power * math.log(lam) + math.log(x) for x in data.vu.ravel()]
    return logs, rel_err


def growth_series(
    A: AdjacencyMatrix,
    k: int,
    n_list,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
    tol: float = 1e-12,
) -> GrowthSeries:
    """Sample ``a_n = (1/n) ln ln |Simp_ev(Gamma^(kn))|`` for n in ``n_list``.

    Entries of ``A**(kn)`` are exact integers while their size stays within
    ``digit_budget`` decimal digits; past that, ``ln`` of each entry comes from
    the Perron approximation, used only when its certified relative error is
    below 1e-9.  Samples whose group has order at most e (so that ln ln is
    undefined) are listed in ``undefined`` instead.

    Raises
    ------
    TrivialShift
        If the Perron enclosure does not exceed ``1 + tol``.
    EntryTooSmall
        If even the largest sampled power ``A**(k n)`` has no entry >= 3.
    """
    require_primitive(A)
    if k < 1:
        raise ValidationError("k must be >= 1")
    data = perron_eigendata(A, tol)
    if data.lambda_hi <= 1 + Fraction(tol):
        raise TrivialShift("lambda_A = 1: the shift is a single periodic orbit")
    n_list = sorted(set(n_list))
    if not n_list:
        raise ValidationError("n_list is empty")
    top = k * n_list[-1]
    if matrix_power(A, top).max_entry() < 3:
        raise EntryTooSmall(f"A**{top} has no entry >= 3: every sampled group is abelian", k=k)
    lo, hi = topological_entropy(A, tol)
    series = GrowthSeries(A, k, [], (k * lo, k * hi))
    log10_lam = math.log10(float(data.lambda_hi))
    if n_list[0] < 1:
        raise ValidationError("sample indices must be >= 1")
    for n in n_list:
        power = k * n
        if power * log10_lam <= digit_budget:
            order, exact = log_alt_order(matrix_power(A, power).entries()), True
        else:
            logs, rel_err = _perron_size_logs(A, power, data)
            if rel_err >= 1e-9:
                raise ResourceCapError(
                    f"A**{power} exceeds the digit budget and the Perron approximation is not certified",
                    rel_err=rel_err,
                )
            order, exact = log_alt_order([ExtLog.from_log(x) for x in logs]), False
        try:
            a_n = order.loglog() / n
        except ValueError:
            series.undefined.append(n)
            continue
        series.samples.append(Sample(n, a_n, order, exact))
    return series


@dataclass(frozen=True)
class EntropyEstimate:
    h_hat: float
    beta: float
    max_residual: float
    n_used: tuple

    def to_json(self):
        return {"h_hat": self.h_hat, "beta": self.beta, "max_residual": self.max_residual, "n_used": list(self.n_used)}


def entropy_estimate(series: GrowthSeries) -> EntropyEstimate:
    """Least-squares fit ``a_n = h + beta ln(n)/n`` over the last half of the samples."""
    samples = sorted(series.samples, key=lambda s: s.n)
    if len(samples) < 4:
        raise InsufficientSamples(f"need >= 4 samples, have {len(samples)}")
    tail = samples[len(samples) // 2 :]
    n = np.array([s.n for s in tail], dtype=float)
    y = np.array([s.a_n for s in tail])
    X = np.column_stack([np.ones_like(n), np.log(n) / n])
    (h, beta), *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ np.array([h, beta])
    return EntropyEstimate(float(h), float(beta), float(np.max(np.abs(resid))), tuple(int(x) for x in n))


@dataclass
class UpperBoundRow:
    n: int
    p_n: int
    log_order: float  # ln |Simp_ev(Gamma^(n))|
    bound_i: float  # r D ln(p_n!)
    holds_i: bool
    lhs_ii: float  # ln ln |Simp_ev|
    rhs_ii: float  # ln(rD) + ln p_n + ln ln p_n
    holds_ii: bool


@dataclass
class UpperBoundReport:
    params: PSParams
    rows: list
    first_i: int | None
    first_ii: int | None
    violations_i: list
    violations_ii: list
    N1: int | None  # least sampled n from which both inequalities hold at every later sample

    def to_json(self):
        return {
            "params": self.params.to_json(),
            "first_i": self.first_i,
            "first_ii": self.first_ii,
            "violations_i": self.violations_i,
            "violations_ii": self.violations_ii,
            "N1": self.N1,
            "rows": [vars(r) for r in self.rows],
        }


def upper_bound_check(A: AdjacencyMatrix, n_list, p: PSParams) -> UpperBoundReport:
    """Evaluate ``ln|Simp_ev| <= rD ln(p_n!)`` and its doubly-logarithmic consequence."""
    require_primitive(A)
    if perron_eigendata(A).lambda_hi <= 1:
        raise TrivialShift("trivial shift")
    rD = p.r * p.D
    rows = []
    for n in sorted(set(n_list)):
        B = matrix_power(A, n)
        order = log_alt_order(B.entries())
        L = order.log()
        p_n = B.trace()
        bound = rD * lnfact(p_n) if p_n <= 1e300 else math.inf
        lhs = math.log(L) if L > 0 else -math.inf
        if p_n >= 2:
            rhs = math.log(rD) + math.log(p_n) + math.log(math.log(p_n))
        else:
            rhs = math.nan
        rows.append(UpperBoundRow(n, p_n, L, bound, L <= bound, lhs, rhs, p_n >= 2 and lhs <= rhs))
    first_i = next((r.n for r in rows if r.holds_i), None)
    first_ii = next((r.n for r in rows if r.holds_ii), None)
    viol_i = [r.n for r in rows if first_i is not None and r.n > first_i and not r.holds_i]
    viol_ii = [r.n for r in rows if first_ii is not None and r.n > first_ii and not r.holds_ii]
    N1 = None
    for r in reversed(rows):
        if r.holds_i and r.holds_ii:
            N1 = r.n
        else:
            break
    return UpperBoundReport(p, rows, first_i, first_ii, viol_i, viol_ii, N1)


def first_primes(count: int) -> list:
    primes, c = [], 2
    while len(primes) < count:
        if all(c % q for q in primes if q * q <= c):
            primes.append(c)
        c += 1
    return primes


@dataclass(frozen=True)
class PartitionSample:
    j: int
    exponent: int  # s(j): |H cap C(tau^j)| = q**s(j)
    a_j: float | None  # None when q**s(j) <= e, where ln ln is undefined


def partition_example_growth(a: int, q: int, prime_count: int, j_list=None) -> list:
    """Growth of the elementary abelian q-subgroup in ``Sym(P) x| Z``.

    The partition has ``a**p`` pieces of size p for every prime p and tau
    cycles each piece.  The subgroup packs ``f(k) = floor(p_k a**p_k / q)``
    disjoint q-cycles into the pieces of size ``p_k``, plus one distinguished
    q-cycle commuting with tau.  A q-cycle on the size-``p_k`` pieces commutes
    with ``tau**j`` when ``p_k | j``, so ``|H cap C(tau^j)| = q**s(j)`` with
    ``s(j) = 1 + sum_{p_k | j} f(k)``.  Default samples: ``j = p_1 .. p_count``.
    """
    if a < 2:
        raise ValidationError("a must be >= 2")
    if q < 2 or any(q % d == 0 for d in range(2, math.isqrt(q) + 1)):
        raise ValidationError("q must be prime")
    if not 1 <= prime_count <= 50:
        raise ValidationError("prime_count must lie in 1..50")
    primes = first_primes(prime_count)
    f = {p: p * a**p // q for p in primes}
    out = []
    for j in (primes if j_list is None else j_list):
        s = 1 + sum(f[p] for p in primes if j % p == 0)
        log_order = s * math.log(q)
        a_j = (math.log(s) + math.log(math.log(q))) / j if log_order > 1 else None
        out.append(PartitionSample(j, s, a_j))
    return out
