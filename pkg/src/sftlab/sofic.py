"""Labeled graphs, right-resolving presentations and the subgraph tower.

A labeled graph presents a sofic shift.  For a right-resolving presentation
with r vertices whose adjacency matrix has every entry at least 3r, the
tower ``G^(1), G^(2), ...`` consists of spanning subgraphs of the power graphs
``Gamma^(j)`` with

1. exactly ``floor(b_j)`` edges between every pair of vertices, where
   ``b_j = min(A**j) / r``;
2. every length-(j/d) path through ``G^(d)`` an edge of ``G^(j)`` for d | j;
3. pairwise distinct labels on the edges of ``G^(j)``.

Labels are strings; every base label has the same length so that labels of
paths (concatenations) determine their factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .errors import (
    ExtensionExhausted,
    InvalidPartition,
    NotRightResolving,
    PreconditionEntry,
    PreconditionError,
    SeedCollision,
    TooLarge,
    TrivialShift,
    ValidationError,
)
from .perron import divisors, require_primitive, topological_entropy
from .ps_entropy import GrowthSeries, Sample
from .sft import AdjacencyMatrix, EdgeGraph, edge_graph, iter_paths, matrix_power, power_graph
from .symmetries import log_alt_order

TOWER_LEVEL_CAP = 64
TOWER_EDGE_BUDGET = 2_000_000  # edges stored on the top level


@dataclass(eq=False)
class LabeledGraph:
    graph: EdgeGraph
    labels: tuple  # labels[e] for edge id e

    def __post_init__(self):
        self.labels = tuple(str(s) for s in self.labels)
        if len(self.labels) != self.graph.num_edges:
            raise ValidationError("every edge needs exactly one label")
        if len({len(s) for s in self.labels}) > 1:
            raise ValidationError("labels must all have the same length")
        if any(s == "" for s in self.labels):
            raise ValidationError("labels must be nonempty")

    @classmethod
    def from_edges(cls, vertices: int, edges) -> "LabeledGraph":
        """Build from ``(from, to, label)`` triples; ids are assigned row-major
        by vertex pair, keeping the input order inside a pair."""
        edges = [(int(u), int(v), str(s)) for u, v, s in edges]
        for u, v, _ in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise ValidationError(f"edge {u}->{v} leaves the vertex range")
        edges.sort(key=lambda t: (t[0], t[1]))
        sets = {}
        for e, (u, v, _) in enumerate(edges):
            sets.setdefault((u, v), []).append(e)
        G = EdgeGraph(
            vertices,
            tuple(u for u, _, _ in edges),
            tuple(v for _, v, _ in edges),
            {(i, j): tuple(sets.get((i, j), ())) for i in range(vertices) for j in range(vertices)},
        )
        return cls(G, tuple(s for _, _, s in edges))

    @classmethod
    def from_json(cls, data) -> "LabeledGraph":
        try:
            return cls.from_edges(int(data["vertices"]), [(e["from"], e["to"], e["label"]) for e in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed labeled-graph JSON: {exc}") from exc

    def to_json(self) -> dict:
        G = self.graph
        return {
            "vertices": G.size,
            "edges": [{"from": G.src[e], "to": G.dst[e], "label": self.labels[e]} for e in range(G.num_edges)],
        }

    @property
    def size(self) -> int:
        return self.graph.size

    def matrix(self) -> AdjacencyMatrix:
        return self.graph.matrix()

    @property
    def symbol_length(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    def path_label(self, path) -> str:
        return "".join(self.labels[e] for e in path)


def even_shift() -> LabeledGraph:
    """The standard two-vertex right-resolving presentation of the even shift."""
    return LabeledGraph.from_edges(2, [(0, 0, "0"), (0, 1, "1"), (1, 0, "1")])


def distinct_labels(A: AdjacencyMatrix, width: int | None = None) -> LabeledGraph:
    """The edge shift of A presented with every edge labeled by its own id."""
    G = edge_graph(A)
    width = width or len(str(max(G.num_edges - 1, 0)))
    return LabeledGraph(G, tuple(str(e).zfill(width) for e in range(G.num_edges)))


def is_right_resolving(G: LabeledGraph) -> bool:
    for v in range(G.size):
        out = [G.labels[e] for e in G.graph.out_edges[v]]
        if len(out) != len(set(out)):
            return False
    return True


def power_labeled(G: LabeledGraph, j: int) -> LabeledGraph:
    """Edges are the length-j paths, labeled by the concatenated labels."""
    if j < 1:
        raise ValidationError("j must be >= 1")
    if j == 1:
        return G
    H = power_graph(G.graph, j)
    out = LabeledGraph(H, tuple(G.path_label(p) for p in H.paths))
    if is_right_resolving(G):
        assert is_right_resolving(out)
    return out


def in_split(G: LabeledGraph, partition) -> LabeledGraph:
    """In-splitting along ``partition[v]``, a list of classes of edges into v.

    Vertex ``(v, c)`` receives the edges of class c; every edge ``u -> v`` of
    class c becomes one edge ``(u, c') -> (v, c)`` for each class c' of u.
    New vertices are numbered by v, then by class index.
    """
    g = G.graph
    if len(partition) != g.size:
        raise InvalidPartition("need one list of classes per vertex")
    cls_of = {}
    offsets, total = [], 0
    for v, classes in enumerate(partition):
        incoming = sorted(e for e in range(g.num_edges) if g.dst[e] == v)
        flat = sorted(int(e) for c in classes for e in c)
        if flat != incoming or any(len(c) == 0 for c in classes) or not classes:
            raise InvalidPartition(f"classes at vertex {v} do not partition its incoming edges", vertex=v)
        for c, members in enumerate(classes):
            for e in members:
                cls_of[int(e)] = c
        offsets.append(total)
        total += len(classes)
    edges = []
    for e in range(g.num_edges):
        u, v = g.src[e], g.dst[e]
        for c_u in range(len(partition[u])):
            edges.append((offsets[u] + c_u, offsets[v] + cls_of[e], G.labels[e]))
    out = LabeledGraph.from_edges(total, edges)
    if is_right_resolving(G):
        assert is_right_resolving(out)
    return out


def find_power_with_min_entry(G, threshold: int | None = None) -> int:
    """Least L such that every entry of ``A**L`` is at least ``threshold`` (default 3r)."""
    A = G.matrix() if isinstance(G, LabeledGraph) else G
    require_primitive(A)
    if A.size == 1 and A[0, 0] == 1:
        raise TrivialShift("a single loop never grows")
    threshold = 3 * A.size if threshold is None else threshold
    L = 1
    while matrix_power(A, L).min_entry() < threshold:
        L += 1
    return L


@dataclass
class LevelReport:
    """How level J was assembled."""

    J: int
    target: int  # floor(b_J)
    seed: dict  # pair -> |D_pq|
    collisions: dict  # pair -> |R_pq|: non-seed edges whose label a seed edge already uses
    collision_bound: float  # r / (r**3 - 1) * min(A**J)
    scanned: dict  # pair -> candidates examined by the greedy extension

    @property
    def bound_ok(self) -> bool:
        return all(c <= self.collision_bound for c in self.collisions.values())

    def to_json(self):
        key = lambda d: {f"{p},{q}": v for (p, q), v in sorted(d.items())}
        return {
            "J": self.J,
            "target": self.target,
            "seed": key(self.seed),
            "collisions": key(self.collisions),
            "collision_bound": self.collision_bound,
            "bound_ok": self.bound_ok,
            "scanned": key(self.scanned),
        }


@dataclass(eq=False)
class SubgraphTower:
    base: LabeledGraph
    levels: dict  # j -> {(p, q): sorted tuple of paths, each a tuple of base edge ids}
    b: dict  # j -> Fraction
    reports: dict = field(default_factory=dict)  # j -> LevelReport

    @property
    def r(self) -> int:
        return self.base.size

    @property
    def J_max(self) -> int:
        return max(self.levels)

    def edges(self, j: int):
        for pair in sorted(self.levels[j]):
            yield from self.levels[j][pair]

    def to_json(self) -> dict:
        levels = {}
        for j in sorted(self.levels):
            levels[str(j)] = {
                "b": str(self.b[j]),
                "edges": [
                    {"from": p, "to": q, "path": list(path)}
                    for (p, q) in sorted(self.levels[j])
                    for path in self.levels[j][(p, q)]
                ],
            }
        return {"base": self.base.to_json(), "levels": levels, "reports": {str(j): r.to_json() for j, r in self.reports.items()}}


class _LabelCodec:
    """Integer keys for path labels: base labels become digits."""

    def __init__(self, G: LabeledGraph):
        alphabet = sorted(set(G.labels))
        self.digit = {s: t for t, s in enumerate(alphabet)}
        self.base = len(alphabet)
        self.edge_digit = [self.digit[s] for s in G.labels]
        self.step = {}  # (vertex, digit) -> edge
        for e in range(G.graph.num_edges):
            self.step[(G.graph.src[e], self.edge_digit[e])] = e

    def key(self, path) -> int:
        k = 0
        for e in path:
            k = k * self.base + self.edge_digit[e]
        return k

    def follow(self, G: EdgeGraph, start: int, key: int, length: int):
        """The unique path from ``start`` carrying label ``key``, or None."""
        digits = []
        for _ in range(length):
            key, d = divmod(key, self.base)
            digits.append(d)
        path, v = [], start
        for d in reversed(digits):
            e = self.step.get((v, d))
            if e is None:
                return None
            path.append(e)
            v = G.dst[e]
        return tuple(path)


def _paths_through(level: dict, r: int, n: int):
    """Length-n paths through a level (edges given per pair), as concatenated
    base paths, grouped by end pair."""
    out = {}
    for verts in cartesian(range(r), repeat=n + 1):
        choices = [level.get((verts[t], verts[t + 1]), ()) for t in range(n)]
        if any(not c for c in choices):
            continue
        bucket = out.setdefault((verts[0], verts[-1]), [])
        for combo in cartesian(*choices):
            bucket.append(sum(combo, ()))
    return out


def inclusion(tower: SubgraphTower, d: int, j: int) -> dict:
    """``iota_{d,j}(G^(d))``: the length-(j/d) paths through ``G^(d)``, per pair."""
    if j % d:
        raise ValidationError(f"{d} does not divide {j}")
    return _paths_through(tower.levels[d], tower.r, j // d)


def build_subgraph_tower(
    G: LabeledGraph,
    J_max: int,
    level_cap: int = TOWER_LEVEL_CAP,
    edge_budget: int = TOWER_EDGE_BUDGET,
) -> SubgraphTower:
    """Construct and verify ``G^(1) .. G^(J_max)``.

    Level J is seeded with every path through a lower level ``G^(d)``, d a
    proper divisor of J, then each edge set is filled to ``floor(b_J)`` with the
    lowest-id paths whose labels are not yet used anywhere on the level.
    """
    if not 1 <= J_max <= level_cap:
        raise TooLarge(f"J_max must lie in 1..{level_cap}", cap=level_cap)
    if not is_right_resolving(G):
        raise NotRightResolving("presentation is not right-resolving")
    A = G.matrix()
    require_primitive(A)
    r = A.size
    if r < 2:
        raise PreconditionError("the construction needs r >= 2 vertices")
    if A.min_entry() < 3 * r:
        raise PreconditionEntry(f"min entry {A.min_entry()} < 3r = {3 * r}", min_entry=A.min_entry(), r=r)
    top_edges = r * r * (matrix_power(A, J_max).min_entry() // r)
    if top_edges > edge_budget:
        raise TooLarge(f"level {J_max} would hold {top_edges} edges (budget {edge_budget})", edges=top_edges)
    codec = _LabelCodec(G)
    g = G.graph
    tower = SubgraphTower(G, {}, {})
    pairs = [(p, q) for p in range(r) for q in range(r)]
    for J in range(1, J_max + 1):
        m = matrix_power(A, J).min_entry()
        b = Fraction(m, r)
        target = math.floor(b)
        tower.b[J] = b
        seed = {pair: set() for pair in pairs}
        for d in divisors(J)[:-1]:
            for pair, paths in inclusion(tower, d, J).items():
                seed[pair].update(paths)
        owner = {}
        for pair in pairs:
            for path in seed[pair]:
                k = codec.key(path)
                if k in owner and owner[k] != path:
                    raise SeedCollision(
                        f"two seed edges at level {J} share a label",
                        level=J,
                        paths=[list(owner[k]), list(path)],
                        label=G.path_label(path),
                    )
                owner[k] = path
        collisions = {}
        for p, q in pairs:
            hits = 0
            for k, path in owner.items():
                if g.src[path[0]] == p:
                    continue
                hit = codec.follow(g, p, k, J)
                if hit is not None and g.dst[hit[-1]] == q and hit not in seed[(p, q)]:
                    hits += 1
            collisions[(p, q)] = hits
        bound = r / (r**3 - 1) * m
        used = set(owner)
        level, scanned = {}, {}
        for p, q in pairs:
            chosen = set(seed[(p, q)])
            if len(chosen) > target:
                raise ExtensionExhausted(
                    f"seed of pair ({p},{q}) has {len(chosen)} edges, more than floor(b_J) = {target}",
                    level=J,
                    pair=[p, q],
                )
            count = 0
            if len(chosen) < target:
                for path in iter_paths(g, p, q, J):
                    count += 1
                    if path in chosen:
                        continue
                    k = codec.key(path)
                    if k in used:
                        continue
                    chosen.add(path)
                    used.add(k)
                    if len(chosen) == target:
                        break
            if len(chosen) < target:
                raise ExtensionExhausted(
                    f"pair ({p},{q}) at level {J}: only {len(chosen)} of {target} edges available",
                    level=J,
                    pair=[p, q],
                    available=matrix_power(A, J)[p, q],
                    seed=len(seed[(p, q)]),
                    collisions=collisions[(p, q)],
                    bound=bound,
                )
            level[(p, q)] = tuple(sorted(chosen))
            scanned[(p, q)] = count
        tower.levels[J] = level
        tower.reports[J] = LevelReport(J, target, {k: len(v) for k, v in seed.items()}, collisions, bound, scanned)
    verify_tower(tower)
    return tower


@dataclass
class TowerCheck:
    condition1: bool
    condition2: bool
    condition3: bool
    failures: list

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3


def verify_tower(tower: SubgraphTower, raise_on_failure: bool = True) -> TowerCheck:
    """Exhaustive check of the three tower conditions at every level and divisor."""
    G, r = tower.base, tower.r
    A = G.matrix()
    g = G.graph
    failures = []
    c1 = c2 = c3 = True
    for j, level in sorted(tower.levels.items()):
        target = math.floor(Fraction(matrix_power(A, j).min_entry(), r))
        labels = set()
        total = 0
        for (p, q), paths in level.items():
            if len(paths) != target:
                c1 = False
                failures.append(f"level {j} pair ({p},{q}): {len(paths)} edges, expected {target}")
            for path in paths:
                if len(path) != j or g.src[path[0]] != p or g.dst[path[-1]] != q or not g.is_path(path):
                    c1 = False
                    failures.append(f"level {j}: {path} is not a path {p}->{q} in Gamma^({j})")
                labels.add(G.path_label(path))
                total += 1
        if len(labels) != total:
            c3 = False
            failures.append(f"level {j}: {total - len(labels)} repeated labels")
        edge_sets = {pair: set(paths) for pair, paths in level.items()}
        for d in divisors(j)[:-1]:
            for pair, paths in inclusion(tower, d, j).items():
                missing = sum(1 for path in paths if path not in edge_sets.get(pair, ()))
                if missing:
                    c2 = False
                    failures.append(f"level {j}: {missing} paths through G^({d}) missing at pair {pair}")
    check = TowerCheck(c1, c2, c3, failures)
    if raise_on_failure and not check.ok:
        raise AssertionError("tower verification failed: " + "; ".join(failures[:5]))
    return check


def sofic_growth_series(tower: SubgraphTower, j_list=None) -> GrowthSeries:
    """``a_j = (1/j) ln ln prod_{p,q} |Alt(E_pq(G^(j)))|`` with ``|E_pq| = floor(b_j)``.

    Constructed levels use their actual edge counts; other j use ``floor(b_j)``
    from the exact power ``A**j`` (the tower conditions fix the counts).  The
    target is the entropy enclosure of the base presentation.
    """
    A = tower.base.matrix()
    r = tower.r
    j_list = sorted(set(j_list or tower.levels))
    series = GrowthSeries(A, 1, [], topological_entropy(A))
    for j in j_list:
        if j in tower.levels:
            sizes = [len(paths) for paths in tower.levels[j].values()]
        else:
            sizes = [matrix_power(A, j).min_entry() // r] * (r * r)
        order = log_alt_order(sizes)
        try:
            series.samples.append(Sample(j, order.loglog() / j, order))
        except ValueError:
            series.undefined.append(j)
    return series
