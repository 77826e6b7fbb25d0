"""Seeded property runs and lemma reports shared by the CLI and the test suite."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import group_oracle as go
from .ps_entropy import PSParams
from .sft import AdjacencyMatrix, matrix_power, periodic_points
from .symmetries import compose, include, is_even, random_symmetry

CORPUS = {
    "golden": ((1, 1), (1, 0)),
    "full2": ((2,),),
    "full3": ((3,),),
    "cat": ((2, 1), (1, 1)),
    "ones2": ((1, 1), (1, 1)),
    "cycle3": ((1, 1, 0), (0, 0, 1), (1, 0, 0)),
    "mixed": ((0, 1, 1), (1, 0, 1), (1, 1, 1)),
}

# keeps each inclusion case to a few thousand path relabelings
MAX_LEVEL_EDGES = 2000


def corpus() -> dict:
    return {name: AdjacencyMatrix.from_rows(rows) for name, rows in CORPUS.items()}


@dataclass
class PropertyReport:
    seed: int
    cases: int
    homomorphism_violations: int = 0
    evenness_violations: int = 0
    functoriality_violations: int = 0
    periodic_mismatches: list = field(default_factory=list)
    sampled: dict = field(default_factory=dict)  # corpus name -> case count

    @property
    def ok(self) -> bool:
        return not (
            self.homomorphism_violations
            or self.evenness_violations
            or self.functoriality_violations
            or self.periodic_mismatches
        )

    def to_json(self):
        return {
            "seed": self.seed,
            "cases": self.cases,
            "homomorphism_violations": self.homomorphism_violations,
            "evenness_violations": self.evenness_violations,
            "functoriality_violations": self.functoriality_violations,
            "periodic_mismatches": self.periodic_mismatches,
            "sampled": dict(sorted(self.sampled.items())),
            "ok": self.ok,
        }


def random_matrix(rng, max_size: int = 3, max_entry: int = 4) -> AdjacencyMatrix:
    """Uniform nondegenerate matrix with r <= max_size and entries <= max_entry (by rejection)."""
    while True:
        r = int(rng.integers(1, max_size + 1))
        rows = rng.integers(0, max_entry + 1, size=(r, r))
        if rows.sum(axis=0).all() and rows.sum(axis=1).all():
            return AdjacencyMatrix.from_rows(rows.tolist())


def _draw_case(rng):
    """Half the cases come from the named corpus, half are random matrices;
    cases whose level-km graph exceeds the edge budget are redrawn."""
    mats = corpus()
    names = sorted(mats)
    while True:
        if rng.integers(2):
            name = names[rng.integers(len(names))]
            A = mats[name]
        else:
            name, A = "random", random_matrix(rng)
        m = int(rng.integers(1, 3))
        k = int(rng.integers(1, 4))
        if sum(matrix_power(A, k * m).entries()) <= MAX_LEVEL_EDGES:
            return name, A, m, k


def inclusion_properties(seed: int, cases: int) -> PropertyReport:
    """Random even/arbitrary symmetries ``a, b`` at level m and a multiplier k:
    ``include(a b) == include(a) include(b)``, evenness survives inclusion, and
    ``include(include(a, k), 2) == include(a, 2k)`` (checked on every tenth case)."""
    rng = np.random.default_rng(seed)
    report = PropertyReport(seed, cases)
    for t in range(cases):
        name, A, m, k = _draw_case(rng)
        report.sampled[name] = report.sampled.get(name, 0) + 1
        a = random_symmetry(A, m, rng, even=bool(rng.integers(2)))
        b = random_symmetry(A, m, rng, even=bool(rng.integers(2)))
        if include(compose(a, b), k) != compose(include(a, k), include(b, k)):
            report.homomorphism_violations += 1
        if is_even(a) and not is_even(include(a, k)):
            report.evenness_violations += 1
        if t % 10 == 0 and sum(matrix_power(A, 2 * k * m).entries()) <= MAX_LEVEL_EDGES:
            if include(include(a, k), 2) != include(a, 2 * k):
                report.functoriality_violations += 1
    return report


def periodic_oracle(n_max: int = 10) -> list:
    """Trace formula against enumeration on the corpus; returns mismatches."""
    bad = []
    for name, A in sorted(corpus().items()):
        for n in range(1, n_max + 1):
            try:
                periodic_points(A, n, brute_force=True)
            except AssertionError as exc:
                bad.append({"matrix": name, "n": n, "error": str(exc)})
    return bad


def property_suite(seed: int, cases: int) -> PropertyReport:
    report = inclusion_properties(seed, cases)
    report.periodic_mismatches = periodic_oracle()
    return report


KERNEL_CORPUS = [((2,),), ((3,),), ((4,),), ((5,),), ((1, 4), (4, 1))]


def lemma_report() -> dict:
    """Normal subgroups of ``Alt5**2``, the small-island, pond-light and kernel-lemma instances."""
    A5 = go.alt(5)
    G = go.direct_product(A5, A5)
    normals = go.normal_subgroups(G)
    left = G.subgroup(G.generators[: len(A5.generators)])
    right = G.subgroup(G.generators[len(A5.generators) :])
    diag = go.diagonal(A5)
    pond = {
        "diagonal_vs_left_factor": go.verify_pondlight(G, left, diag),
        "full_group": go.verify_pondlight(A5, A5, A5),
        "left_factor_in_itself": go.verify_pondlight(G, left, left),
        "right_factor_vs_left": go.verify_pondlight(G, left, right),
    }
    rows = []
    for mat in KERNEL_CORPUS:
        A = AdjacencyMatrix.from_rows(mat)
        row = go.verify_kernel_lemma_toy(A, 1, PSParams(1.0, 1.0, A.size**2))
        rows.append({**vars(row), "consistent": row.consistent})
    return {
        "alt5_squared_order": G.order,
        "alt5_squared_normal_subgroups": [N.order for N in normals],
        "smallisland": {"r=1": go.verify_smallisland(1), "r=2": go.verify_smallisland(2)},
        "pondlight": pond,
        "kernel_lemma": rows,
        "ok": (
            len(normals) == 4
            and go.verify_smallisland(2)
            and all(pond.values())
            and all(r["consistent"] for r in rows)
        ),
    }
