"""Simple graph symmetries of power graphs and the automorphisms they induce.

A simple symmetry of the level-m power graph fixes every vertex and permutes
each parallel-edge set ``E_ij`` (the length-m paths from i to j).  Components
are index arrays into the deterministic edge order of :func:`sft.power_graph`:
``perm[t] = s`` sends the t-th edge of ``E_ij`` to the s-th.

Composition is right-to-left, ``compose(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import LevelMismatch, PeriodNotDivisible, ValidationError
from .extlog import ExtLog, alt_order, product
from .sft import AdjacencyMatrix, EdgeGraph, closed_paths, edge_graph, matrix_power, power_graph

CyclicWord = tuple  # closed path of base edge ids, read from coordinate 0


@lru_cache(maxsize=256)
def level_graph(A: AdjacencyMatrix, m: int) -> EdgeGraph:
    """Level-m power graph of A; its ``paths`` are paths of base edges."""
    return power_graph(edge_graph(A), m)


@lru_cache(maxsize=256)
def _path_index(A: AdjacencyMatrix, m: int) -> dict:
    """Base path of length m -> (i, j, position in E_ij)."""
    G = level_graph(A, m)
    out = {}
    for (i, j), ids in G.edge_sets.items():
        for pos, e in enumerate(ids):
            out[G.paths[e]] = (i, j, pos)
    return out


def _pairs(A: AdjacencyMatrix):
    return [(i, j) for i in range(A.size) for j in range(A.size)]


def _is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def parity(p: Sequence[int]) -> int:
    """0 for even, 1 for odd."""
    seen = [False] * len(p)
    transpositions = 0
    for start in range(len(p)):
        if seen[start]:
            continue
        length, t = 0, start
        while not seen[t]:
            seen[t] = True
            t = p[t]
            length += 1
        transpositions += length - 1
    return transpositions % 2


@dataclass(frozen=True)
class SimpleSymmetry:
    matrix: AdjacencyMatrix
    level: int
    components: tuple  # one permutation per vertex pair, row-major

    def __post_init__(self):
        G = level_graph(self.matrix, self.level)
        pairs = _pairs(self.matrix)
        if len(self.components) != len(pairs):
            raise ValidationError("need one component per vertex pair")
        comps = tuple(tuple(int(x) for x in c) for c in self.components)
        object.__setattr__(self, "components", comps)
        for (i, j), comp in zip(pairs, comps):
            if len(comp) != len(G.edge_set(i, j)):
                raise ValidationError(f"component ({i},{j}) has size {len(comp)}, edge set has {len(G.edge_set(i, j))}")
            if not _is_permutation(comp):
                raise ValidationError(f"component ({i},{j}) is not a permutation")

    @classmethod
    def from_components(cls, A: AdjacencyMatrix, m: int, components: Mapping) -> "SimpleSymmetry":
        """Build from a partial map ``(i, j) -> perm``; missing pairs are the identity."""
        G = level_graph(A, m)
        comps = []
        for i, j in _pairs(A):
            comps.append(tuple(components.get((i, j), range(len(G.edge_set(i, j))))))
        return cls(A, m, tuple(comps))

    @property
    def graph(self) -> EdgeGraph:
        return level_graph(self.matrix, self.level)

    def component(self, i: int, j: int) -> tuple:
        return self.components[i * self.matrix.size + j]

    def is_identity(self) -> bool:
        return all(c == tuple(range(len(c))) for c in self.components)

    def to_json(self) -> dict:
        comps = {}
        for (i, j), c in zip(_pairs(self.matrix), self.components):
            if c:
                comps[f"{i},{j}"] = list(c)
        return {"level": self.level, "matrix": self.matrix.to_json(), "components": comps}

    @classmethod
    def from_json(cls, data: Mapping, matrix: AdjacencyMatrix | None = None) -> "SimpleSymmetry":
        if matrix is None:
            if "matrix" not in data:
                raise ValidationError("symmetry JSON has no matrix; pass one explicitly")
            matrix = AdjacencyMatrix.from_json(data["matrix"])
        comps = {}
        for key, perm in data.get("components", {}).items():
            i, j = (int(t) for t in key.split(","))
            comps[(i, j)] = perm
        return cls.from_components(matrix, int(data["level"]), comps)


def identity(A: AdjacencyMatrix, m: int) -> SimpleSymmetry:
    return SimpleSymmetry.from_components(A, m, {})


def _check_same(a: SimpleSymmetry, b: SimpleSymmetry):
    if a.level != b.level or a.matrix != b.matrix:
        raise LevelMismatch("symmetries live on different graphs", levels=[a.level, b.level])


def compose(a: SimpleSymmetry, b: SimpleSymmetry) -> SimpleSymmetry:
    """``a o b``: apply b, then a."""
    _check_same(a, b)
    comps = tuple(tuple(pa[t] for t in pb) for pa, pb in zip(a.components, b.components))
    return SimpleSymmetry(a.matrix, a.level, comps)


def invert(a: SimpleSymmetry) -> SimpleSymmetry:
    comps = []
    for p in a.components:
        inv = [0] * len(p)
        for t, s in enumerate(p):
            inv[s] = t
        comps.append(tuple(inv))
    return SimpleSymmetry(a.matrix, a.level, tuple(comps))


def is_even(a: SimpleSymmetry) -> bool:
    return all(parity(c) == 0 for c in a.components)


def _map_block(a: SimpleSymmetry, block: tuple, index: dict, G: EdgeGraph) -> tuple:
    i, j, pos = index[block]
    return G.paths[G.edge_set(i, j)[a.component(i, j)[pos]]]


def include(a: SimpleSymmetry, k: int) -> SimpleSymmetry:
    """Image of ``a`` under the inclusion from level m into level km.

    A length-km path is read as k consecutive length-m paths and each block is
    moved by ``a``; blocks keep their end vertices, so the result is a path
    with the same ends.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if k == 1:
        return a
    A, m = a.matrix, a.level
    small_index, G = _path_index(A, m), level_graph(A, m)
    big_index, H = _path_index(A, k * m), level_graph(A, k * m)
    comps = []
    for i, j in _pairs(A):
        perm = []
        for e in H.edge_set(i, j):
            path = H.paths[e]
            image = []
            for t in range(0, k * m, m):
                image.extend(_map_block(a, path[t : t + m], small_index, G))
            perm.append(big_index[tuple(image)][2])
        comps.append(tuple(perm))
    return SimpleSymmetry(A, k * m, tuple(comps))


def evenness_preserved_check(a: SimpleSymmetry, k: int) -> bool:
    """``is_even(include(a, k))`` for an even ``a``; always True in theory."""
    if not is_even(a):
        raise ValidationError("symmetry is not even")
    return is_even(include(a, k))


def act_on_cyclic_word(a: SimpleSymmetry, w: Sequence[int], phase: int = 0) -> CyclicWord:
    """Apply the 0-block code of ``a`` to a periodic point.

    ``w`` lists base edges ``x_0 .. x_{n-1}`` of a point of period n; blocks
    start at coordinates congruent to ``phase`` mod m.
    """
    n, m = len(w), a.level
    if n % m:
        raise PeriodNotDivisible(f"level {m} does not divide period {n}")
    if not 0 <= phase < m:
        raise ValidationError("phase must lie in 0..m-1")
    G = a.graph
    index = _path_index(a.matrix, m)
    out = list(w)
    for start in range(phase, phase + n, m):
        positions = [(start + s) % n for s in range(m)]
        block = tuple(w[p] for p in positions)
        for p, e in zip(positions, _map_block(a, block, index, G)):
            out[p] = e
    return tuple(out)


def rotate(w: Sequence[int], s: int) -> CyclicWord:
    """The shift applied s times: ``(x_s, x_{s+1}, ...)``."""
    s %= len(w)
    return tuple(w[s:]) + tuple(w[:s])


@lru_cache(maxsize=128)
def periodic_words(A: AdjacencyMatrix, n: int) -> tuple:
    return tuple(closed_paths(edge_graph(A), n))


def restriction_to_periodic(a: SimpleSymmetry, n: int) -> tuple:
    """Permutation induced on the period-n points (sorted as in :func:`periodic_words`)."""
    if n % a.level:
        raise PeriodNotDivisible(f"level {a.level} does not divide period {n}")
    words = periodic_words(a.matrix, n)
    index = {w: t for t, w in enumerate(words)}
    return tuple(index[act_on_cyclic_word(a, w)] for w in words)


def first_faithful_period(a: SimpleSymmetry, n_max: int):
    """Least multiple n of the level, n <= n_max, on whose periodic points
    ``a`` acts nontrivially; None if there is none."""
    for n in range(a.level, n_max + 1, a.level):
        perm = restriction_to_periodic(a, n)
        if perm != tuple(range(len(perm))):
            return n
    return None


def random_symmetry(A: AdjacencyMatrix, m: int, rng, even: bool = False) -> SimpleSymmetry:
    """Uniform simple symmetry of the level-m graph (uniform in Simp_ev if ``even``)."""
    G = level_graph(A, m)
    comps = []
    for i, j in _pairs(A):
        p = list(rng.permutation(len(G.edge_set(i, j))))
        if even and len(p) >= 2 and parity(p):
            p[0], p[1] = p[1], p[0]
        comps.append(tuple(int(x) for x in p))
    return SimpleSymmetry(A, m, tuple(comps))


def log_alt_order(edge_set_sizes) -> ExtLog:
    """Order of ``prod Alt(E_ij)`` from the edge-set sizes.

    Sizes may be ints or ExtLog values (for entries known only through their
    logarithm); ``|Alt(S)|`` is taken as ``max(1, |S|!/2)``.
    """
    factors = []
    for s in edge_set_sizes:
        if isinstance(s, ExtLog):
            factors.append(alt_order(log_n=s.log()))
        else:
            factors.append(alt_order(int(s)))
    return product(factors)


def simp_ev_order(A: AdjacencyMatrix, m: int) -> int:
    """Exact ``|Simp_ev|`` of the level-m graph (small cases only)."""
    return math.prod(max(1, math.factorial(n) // 2) for n in matrix_power(A, m).entries())
