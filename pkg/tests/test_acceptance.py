"""The thirteen acceptance criteria, each reporting one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal summary)
or ``python tests/test_acceptance.py`` to print them directly.
"""

import math
import time
from fractions import Fraction

import mpmath
import pytest

from sftlab import group_oracle as go
from sftlab.classify import CONJUGATE_MODULUS, ISOMORPHIC, NOT_ISOMORPHIC, fullshift_isomorphic, fullshift_obstruction
from sftlab.perron import YES, NO, perron_eigendata, perron_root_feasible, root_exponent_bound_fullshift
from sftlab.ps_entropy import (
    PSParams,
    admissible_params,
    growth_series,
    is_ps_member,
    partition_example_growth,
    simp_ev_group,
    upper_bound_check,
)
from sftlab.sft import AdjacencyMatrix
from sftlab.sofic import build_subgraph_tower, even_shift, find_power_with_min_entry, power_labeled, sofic_growth_series, verify_tower
from sftlab.verify import inclusion_properties, lemma_report, periodic_oracle

GOLDEN = AdjacencyMatrix.from_rows([[1, 1], [1, 0]])
FULL2 = AdjacencyMatrix.from_rows([[2]])
PHI = (1 + math.sqrt(5)) / 2

RESULTS = []


def report(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} [{n:2d}] {title}" + (f": {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_01_perron_accuracy():
    with Timer() as t:
        d = perron_eigendata(GOLDEN, 1e-9)
        golden_ok = d.width <= 1e-9 and (2 * d.lambda_lo - 1) ** 2 <= 5 <= (2 * d.lambda_hi - 1) ** 2
        scalars_ok = all(
            perron_eigendata(AdjacencyMatrix.from_rows([[n]])).lambda_lo == n == perron_eigendata(AdjacencyMatrix.from_rows([[n]])).lambda_hi
            for n in range(1, 11)
        )
    report(1, "Perron accuracy", golden_ok and scalars_ok and t.seconds < 1, f"width {float(d.width):.2e}, {t.seconds:.2f}s")


def _stirling_reference(n):
    with mpmath.workdps(40):
        return float(mpmath.log(mpmath.loggamma(mpmath.mpf(2) ** n + 1) - mpmath.log(2)) / n)


def test_02_full_shift_growth():
    with Timer() as t:
        s = growth_series(FULL2, 1, list(range(2, 65)) + [512])
        worst = max(abs(s.sample(n).a_n / _stirling_reference(n) - 1) for n in range(2, 65))
        gap = abs(s.sample(512).a_n - math.log(2))
    ok = worst <= 1e-9 and gap <= 0.02 and t.seconds < 10
    report(2, "full 2-shift growth", ok, f"max rel err {worst:.1e}, |a_512 - ln 2| = {gap:.4f}, {t.seconds:.2f}s")


def test_03_golden_growth():
    ns = [25, 50, 100, 200]
    with Timer() as t:
        s = growth_series(GOLDEN, 1, ns)
    res = [s.sample(n).a_n - math.log(PHI) for n in ns]
    exact = all(x.exact for x in s.samples)
    ok = exact and abs(res[-1]) <= 0.05 and all(a > b for a, b in zip(res, res[1:])) and t.seconds < 60
    report(3, "golden-mean growth", ok, f"residuals {[round(r, 4) for r in res]}, {t.seconds:.2f}s")


def test_04_admissible_params():
    adm = admissible_params(GOLDEN, 0.05, 200)
    p = adm.params
    verified = all(is_ps_member(simp_ev_group(GOLDEN, k), p) for k in range(adm.K, 201))
    ok = p.C <= 0.382 * 0.95 and p.D >= 2.618 * 1.05 and p.r == 4 and verified
    report(4, "admissible parameters", ok, f"C={p.C:.5f} D={p.D:.5f} r={p.r} K={adm.K}")


def test_05_upper_bound_chain():
    details, ok = [], True
    for name, A, p in (
        ("golden", GOLDEN, admissible_params(GOLDEN, 0.05, 200).params),
        ("full2", FULL2, PSParams(1.0, 1.0, 1)),
    ):
        rep = upper_bound_check(A, range(1, 61), p)
        good = rep.N1 is not None and rep.N1 <= 30
        good = good and all(r.holds_i and r.holds_ii for r in rep.rows if r.n >= rep.N1)
        ok = ok and good
        details.append(f"{name} N1={rep.N1}")
    report(5, "upper-bound chain", ok, ", ".join(details))


def test_06_inclusion_properties():
    with Timer() as t:
        rep = inclusion_properties(seed=20240, cases=1000)
    bad = rep.homomorphism_violations + rep.evenness_violations
    report(6, "include homomorphism and evenness", bad == 0 and t.seconds < 30, f"{bad} violations in 1000 cases, {t.seconds:.2f}s")


def test_07_periodic_oracle():
    bad = periodic_oracle(10)
    report(7, "periodic-point oracle", not bad, f"{len(bad)} mismatches")


def test_08_classification_table():
    rows = [((2, 3), None), ((2, 4), (2, 1)), ((8, 32), (5, 3)), ((6, 12), None)]
    rows += [((m, m**t), (t, 1)) for m in range(2, 11) for t in range(1, 6)]
    wrong = []
    for (m, n), witness in rows:
        v = fullshift_isomorphic(m, n)
        expected = ISOMORPHIC if witness else NOT_ISOMORPHIC
        if v.verdict != expected or v.witness != witness:
            wrong.append((m, n))
    report(8, "classification table", not wrong, f"{len(rows)} rows, {len(wrong)} wrong")


def test_09_roots():
    ok = root_exponent_bound_fullshift(4, 1) == (2, (1, 2))
    ok = ok and root_exponent_bound_fullshift(2, 1)[0] == 1 and root_exponent_bound_fullshift(8, 2)[0] == 6
    disagree = 0
    for n in range(2, 33):
        A = AdjacencyMatrix.from_rows([[n]])
        for j in range(1, 5):
            allowed = root_exponent_bound_fullshift(n, j)[1]
            for k in range(1, 13):
                disagree += perron_root_feasible(A, j, k) != (YES if k in allowed else NO)
    report(9, "root exponents", ok and disagree == 0, f"{disagree} disagreements")


def test_10_subgraph_tower():
    with Timer() as t:
        G = even_shift()
        L = find_power_with_min_entry(G)
        base = power_labeled(G, L)
        tower = build_subgraph_tower(base, 4)
        check = verify_tower(tower, raise_on_failure=False)
        counting = all(tower.reports[J].bound_ok for J in range(2, 5))
        s = sofic_growth_series(tower, [8, 15, 16, 30])
    res = {j: s.sample(j).a_n - L * math.log(PHI) for j in (8, 15, 16, 30)}
    decreasing = abs(res[16]) < abs(res[8]) and abs(res[30]) < abs(res[15])
    ok = L == 7 and check.ok and counting and abs(res[30]) <= 0.15 and decreasing and t.seconds < 120
    report(10, "subgraph tower", ok, f"L={L}, residual(30)={res[30]:.4f}, {t.seconds:.2f}s")


def test_11_partition_oracle():
    series = partition_example_growth(2, 2, 25)
    at97 = next(s for s in series if s.j == 97)
    tail = [abs(s.a_j - math.log(2)) for s in series[4:]]
    ok = abs(at97.a_j - math.log(2)) <= 0.05 and all(a > b for a, b in zip(tail, tail[1:]))
    report(11, "partition oracle", ok, f"a_97 = {at97.a_j:.5f}")


def test_12_group_lemmas():
    with Timer() as t:
        rep = lemma_report()
        subproducts = go.verify_smallisland(2)
    bad_rows = [r for r in rep["kernel_lemma"] if r["hypothesis"] and not r["conclusion"]]
    ok = len(rep["alt5_squared_normal_subgroups"]) == 4 and subproducts and all(rep["pondlight"].values())
    ok = ok and not bad_rows and rep["ok"] and t.seconds < 5
    report(12, "group lemmas", ok, f"{len(rep['kernel_lemma'])} kernel rows, {t.seconds:.2f}s")


def test_13_golden_obstruction():
    v = fullshift_obstruction(GOLDEN)
    report(13, "golden-mean obstruction", v.verdict == NOT_ISOMORPHIC and v.reason == CONJUGATE_MODULUS, v.reason)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
