"""Edge shifts of finite type as exact integer data.

An :class:`AdjacencyMatrix` is a square nondegenerate matrix of Python
integers.  Its graph :class:`EdgeGraph` numbers edges row-major: the pairs
``(i, j)`` are visited in row-major order and the parallel edges of each pair
get consecutive ids.  Paths, the edges of power graphs and periodic points are
plain tuples of edge ids (a *path word*) ordered lexicographically, so every
derived object is reproducible across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import DegenerateMatrix, ValidationError

PathWord = tuple  # tuple[int, ...] of edge ids of a fixed graph, composable


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square nondegenerate matrix over the nonnegative integers."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        r = len(rows)
        if r == 0:
            raise ValidationError("matrix must have at least one row")
        if any(len(row) != r for row in rows):
            raise ValidationError("matrix must be square")
        if any(x < 0 for row in rows for x in row):
            raise ValidationError("matrix entries must be nonnegative")
        if any(not any(row) for row in rows):
            raise DegenerateMatrix("matrix has a zero row")
        if any(not any(row[j] for row in rows) for j in range(r)):
            raise DegenerateMatrix("matrix has a zero column")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "AdjacencyMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def full_shift(cls, n: int) -> "AdjacencyMatrix":
        return cls(((n,),))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        """Entries in row-major order."""
        return [x for row in self.rows for x in row]

    def min_entry(self) -> int:
        return min(self.entries())

    def max_entry(self) -> int:
        return max(self.entries())

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def transpose(self) -> "AdjacencyMatrix":
        return AdjacencyMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "AdjacencyMatrix") -> "AdjacencyMatrix":
        return AdjacencyMatrix(_matmul(self.rows, other.rows))

    def tolist(self) -> list:
        return [list(row) for row in self.rows]

    def to_json(self) -> dict:
        return {"size": self.size, "rows": self.tolist()}

    @classmethod
    def from_json(cls, data: Mapping) -> "AdjacencyMatrix":
        try:
            rows = data["rows"]
        except (KeyError, TypeError):
            raise ValidationError("matrix JSON needs a 'rows' field") from None
        if any(not isinstance(x, int) or isinstance(x, bool) for row in rows for x in row):
            raise ValidationError("matrix entries must be integers")
        A = cls.from_rows(rows)
        if "size" in data and data["size"] != A.size:
            raise ValidationError("'size' does not match the number of rows")
        return A


def _matmul(X, Y):
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def load_matrix(path) -> AdjacencyMatrix:
    """Read ``{"size": r, "rows": [...]}`` (or a bare list of rows) from a JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        data = {"rows": data}
    return AdjacencyMatrix.from_json(data)


@lru_cache(maxsize=4096)
def matrix_power(A: AdjacencyMatrix, k: int) -> AdjacencyMatrix:
    """Exact ``A**k`` by repeated squaring; entry ``(i, j)`` counts length-k paths."""
    if k < 1:
        raise ValidationError("power must be >= 1")
    if k == 1:
        return A
    half = matrix_power(A, k // 2)
    sq = half @ half
    return sq @ A if k % 2 else sq


def wielandt_bound(r: int) -> int:
    """Largest primitivity exponent possible for an r x r matrix."""
    return (r - 1) ** 2 + 1


def is_primitive(A: AdjacencyMatrix):
    """Return ``(True, K)`` with K the least exponent making ``A**K`` positive,
    or ``(False, None)`` if no power up to the Wielandt bound is positive."""
    r = A.size
    pattern = [[x > 0 for x in row] for row in A.rows]
    current = pattern
    for K in range(1, wielandt_bound(r) + 1):
        if all(all(row) for row in current):
            return True, K
        current = [
            [any(current[i][t] and pattern[t][j] for t in range(r)) for j in range(r)]
            for i in range(r)
        ]
    return False, None


@dataclass(eq=False)
class EdgeGraph:
    """Directed multigraph with deterministically numbered edges.

    ``paths`` is set for power graphs: edge ``e`` of this graph is the path
    ``paths[e]`` of edges of ``parent``.
    """

    size: int
    src: tuple
    dst: tuple
    edge_sets: dict
    level: int = 1
    parent: "EdgeGraph | None" = None
    paths: "tuple | None" = None
    out_edges: tuple = field(init=False, repr=False)

    def __post_init__(self):
        outs = [[] for _ in range(self.size)]
        for e, u in enumerate(self.src):
            outs[u].append(e)
        self.out_edges = tuple(tuple(o) for o in outs)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    def edge_set(self, i: int, j: int) -> tuple:
        return self.edge_sets.get((i, j), ())

    def matrix(self) -> AdjacencyMatrix:
        r = self.size
        return AdjacencyMatrix(tuple(tuple(len(self.edge_set(i, j)) for j in range(r)) for i in range(r)))

    def pairs(self):
        """Vertex pairs with nonempty edge sets, row-major."""
        return [ij for ij in sorted(self.edge_sets) if self.edge_sets[ij]]

    def base_path(self, e: int) -> tuple:
        """Expand edge ``e`` into a path of edges of the bottom graph."""
        if self.parent is None:
            return (e,)
        out = []
        for f in self.paths[e]:
            out.extend(self.parent.base_path(f))
        return tuple(out)

    def is_path(self, word: Sequence[int]) -> bool:
        return all(self.dst[a] == self.src[b] for a, b in zip(word, word[1:]))

    def to_json(self) -> dict:
        data = {
            "vertices": self.size,
            "level": self.level,
            "edges": [{"id": e, "from": self.src[e], "to": self.dst[e]} for e in range(self.num_edges)],
        }
        if self.paths is not None:
            for e, item in enumerate(data["edges"]):
                item["path"] = list(self.paths[e])
        return data


@lru_cache(maxsize=256)
def edge_graph(A: AdjacencyMatrix) -> EdgeGraph:
    """The graph of ``A`` with row-major, per-pair sequential edge ids."""
    src, dst, sets = [], [], {}
    for i, row in enumerate(A.rows):
        for j, count in enumerate(row):
            ids = []
            for _ in range(count):
                ids.append(len(src))
                src.append(i)
                dst.append(j)
            sets[(i, j)] = tuple(ids)
    return EdgeGraph(A.size, tuple(src), tuple(dst), sets)


def _reachability(G: EdgeGraph, target: int, m: int) -> list:
    """``reach[t][v]``: some path of length t runs from v to target."""
    reach = [[v == target for v in range(G.size)]]
    for _ in range(m):
        prev = reach[-1]
        reach.append([any(prev[G.dst[e]] for e in G.out_edges[v]) for v in range(G.size)])
    return reach


def iter_paths(G: EdgeGraph, i: int, j: int, m: int) -> Iterator[tuple]:
    """Lazily yield the length-m paths from i to j in lexicographic order."""
    if m < 1:
        raise ValidationError("path length must be >= 1")
    if not (0 <= i < G.size and 0 <= j < G.size):
        raise ValidationError("vertex out of range")
    reach = _reachability(G, j, m)
    if not reach[m][i]:
        return
    word = []
    stack = [iter(G.out_edges[i])]
    while stack:
        depth = len(word)
        remaining = m - depth - 1
        for e in stack[-1]:
            if reach[remaining][G.dst[e]]:
                break
        else:
            stack.pop()
            if word:
                word.pop()
            continue
        if remaining == 0:
            yield tuple(word) + (e,)
            continue
        word.append(e)
        stack.append(iter(G.out_edges[G.dst[e]]))


def enumerate_paths(G: EdgeGraph, i: int, j: int, m: int) -> list:
    """All length-m paths from i to j, lexicographic; ``len`` equals ``(A**m)[i, j]``."""
    return list(iter_paths(G, i, j, m))


@lru_cache(maxsize=256)
def power_graph(G: EdgeGraph, m: int) -> EdgeGraph:
    """Graph on the same vertices whose (i, j) edges are the length-m paths i -> j.

    Edge ids run row-major over pairs and lexicographically within a pair;
    ``paths`` records each new edge as a tuple of edges of ``G``.
    """
    if m < 1:
        raise ValidationError("power must be >= 1")
    src, dst, sets, paths = [], [], {}, []
    for i in range(G.size):
        for j in range(G.size):
            ids = []
            for word in iter_paths(G, i, j, m):
                ids.append(len(src))
                src.append(i)
                dst.append(j)
                paths.append(word)
            sets[(i, j)] = tuple(ids)
    return EdgeGraph(G.size, tuple(src), tuple(dst), sets, level=G.level * m, parent=G, paths=tuple(paths))


def closed_paths(G: EdgeGraph, n: int) -> list:
    """Closed length-n paths, i.e. the points of period n of the edge shift,
    each written from coordinate 0; sorted lexicographically."""
    words = []
    for i in range(G.size):
        words.extend(iter_paths(G, i, i, n))
    words.sort()
    return words


def periodic_points(A: AdjacencyMatrix, n: int, brute_force: bool = False) -> int:
    """Number of points fixed by the n-th power of the shift (``trace(A**n)``).

    With ``brute_force`` the closed paths are enumerated as well and the two
    counts must agree.
    """
    if n < 1:
        raise ValidationError("period must be >= 1")
    count = matrix_power(A, n).trace()
    if brute_force:
        G = edge_graph(A)
        enumerated = sum(1 for i in range(A.size) for _ in iter_paths(G, i, i, n))
        if enumerated != count:
            raise AssertionError(f"trace formula {count} != enumeration {enumerated}")
    return count
