"""Exhaustive checks of finite-group facts on small permutation groups.

Permutations are tuples ``p`` on ``range(degree)`` with ``p[x]`` the image
of x; products compose right-to-left like :mod:`sftlab.symmetries`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import chain

from .errors import NotNormal, NotSimple, TooLarge, ValidationError
from .extlog import lnfact
from .ps_entropy import PSParams
from .sft import AdjacencyMatrix, matrix_power
from .symmetries import SimpleSymmetry, level_graph, restriction_to_periodic, simp_ev_order

MAX_DEGREE = 12
MAX_ORDER = 10**4


def mul(p: tuple, q: tuple) -> tuple:
    """``p o q``."""
    return tuple(p[x] for x in q)


def inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def _closure(degree: int, gens, cap: int) -> frozenset:
    e = tuple(range(degree))
    gens = [g for g in gens if g != e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise TooLarge(f"group order exceeds {cap}", cap=cap)
        frontier = nxt
    return frozenset(seen)


@dataclass(eq=False)
class ExplicitGroup:
    """A permutation group with all elements listed.

    ``blocks`` records a direct-product structure: factor i moves only the
    points ``range(start, start + size)`` for ``blocks[i] = (start, size)``.
    """

    degree: int
    generators: tuple
    elements: frozenset = field(default=None, repr=False)
    blocks: tuple = ()
    tag: str = ""

    def __post_init__(self):
        if not 1 <= self.degree <= MAX_DEGREE:
            raise TooLarge(f"degree {self.degree} exceeds {MAX_DEGREE}", degree=self.degree)
        self.generators = tuple(tuple(g) for g in self.generators)
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise ValidationError(f"{g} is not a permutation of degree {self.degree}")
        if self.elements is None:
            self.elements = _closure(self.degree, self.generators, MAX_ORDER * 10)
        self.verify_closure()

    @property
    def identity(self) -> tuple:
        return tuple(range(self.degree))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, ExplicitGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def verify_closure(self) -> bool:
        """Contains e, every generator, and is closed under right multiplication
        by generators; a finite set with these properties that is spanned by
        the generators is a group."""
        els = self.elements
        if self.identity not in els:
            raise ValidationError("identity missing")
        for g in self.generators:
            if g not in els or inverse(g) not in els:
                raise ValidationError("generator or inverse missing")
        for x in els:
            for g in self.generators:
                if mul(x, g) not in els:
                    raise ValidationError("set is not closed under multiplication")
        return True

    def subgroup(self, gens, tag: str = "") -> "ExplicitGroup":
        gens = tuple(tuple(g) for g in gens)
        for g in gens:
            if g not in self.elements:
                raise ValidationError("generator not in the group")
        return ExplicitGroup(self.degree, gens, blocks=self.blocks, tag=tag)

    def projection(self, i: int) -> frozenset:
        """Image of the group under restriction to factor i."""
        start, size = self.blocks[i]
        return frozenset(tuple(p[x] - start for x in range(start, start + size)) for p in self.elements)

    def is_normal_in(self, G: "ExplicitGroup") -> bool:
        if not self.elements <= G.elements:
            return False
        return all(mul(mul(g, h), inverse(g)) in self.elements for g in G.generators for h in self.generators)


def _cycle(degree: int, points) -> tuple:
    p = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def alt(n: int) -> ExplicitGroup:
    gens = [_cycle(n, list(range(i, i + 3))) for i in range(n - 2)] if n >= 3 else []
    return ExplicitGroup(n, tuple(gens), blocks=((0, n),), tag=f"Alt{n}")


def sym(n: int) -> ExplicitGroup:
    gens = [_cycle(n, [i, i + 1]) for i in range(n - 1)]
    return ExplicitGroup(n, tuple(gens), blocks=((0, n),), tag=f"Sym{n}")


def _embed(p: tuple, start: int, degree: int) -> tuple:
    out = list(range(degree))
    for x, y in enumerate(p):
        out[start + x] = start + y
    return tuple(out)


def direct_product(*factors: ExplicitGroup) -> ExplicitGroup:
    degree = sum(f.degree for f in factors)
    if degree > MAX_DEGREE:
        raise TooLarge(f"product degree {degree} exceeds {MAX_DEGREE}", degree=degree)
    gens, blocks, start = [], [], 0
    for f in factors:
        gens.extend(_embed(g, start, degree) for g in f.generators)
        blocks.append((start, f.degree))
        start += f.degree
    return ExplicitGroup(degree, tuple(gens), blocks=tuple(blocks), tag="x".join(f.tag for f in factors))


def diagonal(G: ExplicitGroup, copies: int = 2) -> ExplicitGroup:
    """The diagonal copy of G inside ``G**copies`` (same point blocks as the product)."""
    degree = G.degree * copies
    if degree > MAX_DEGREE:
        raise TooLarge(f"degree {degree} exceeds {MAX_DEGREE}")
    gens = [tuple(chain.from_iterable([x + c * G.degree for x in g] for c in range(copies))) for g in G.generators]
    blocks = tuple((c * G.degree, G.degree) for c in range(copies))
    return ExplicitGroup(degree, tuple(gens), blocks=blocks, tag=f"diag({G.tag})")


def conjugacy_classes(G: ExplicitGroup) -> list:
    remaining = set(G.elements)
    classes = []
    while remaining:
        x = min(remaining)
        cls, frontier = {x}, [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in G.generators:
                    z = mul(mul(g, y), inverse(g))
                    if z not in cls:
                        cls.add(z)
                        nxt.append(z)
            frontier = nxt
        remaining -= cls
        classes.append(frozenset(cls))
    return classes


def _generated(G: ExplicitGroup, elements) -> ExplicitGroup:
    """Subgroup generated by ``elements``, using a greedy small generating set."""
    gens, H = [], frozenset([G.identity])
    for x in sorted(elements):
        if x not in H:
            gens.append(x)
            H = _closure(G.degree, gens, G.order)
    return ExplicitGroup(G.degree, tuple(gens), elements=H, blocks=G.blocks)


def normal_subgroups(G: ExplicitGroup) -> list:
    """Every normal subgroup of G, sorted by order.

    Each normal subgroup is the join of the normal closures of its elements,
    so closing the set of normal closures under joins finds all of them.
    """
    if G.order > MAX_ORDER:
        raise TooLarge(f"|G| = {G.order} exceeds {MAX_ORDER}", order=G.order)
    if G.elements not in _NORMAL_CACHE:
        _NORMAL_CACHE[G.elements] = _normal_subgroups(G)
    return list(_NORMAL_CACHE[G.elements])


_NORMAL_CACHE: dict = {}


def _normal_subgroups(G: ExplicitGroup) -> list:
    closures = {}
    for cls in conjugacy_classes(G):
        N = _generated(G, cls)
        closures[N.elements] = N
    found = {frozenset([G.identity]): _generated(G, [])}
    frontier = list(found.values())
    atoms = list(closures.values())
    while frontier:
        nxt = []
        for N in frontier:
            for M in atoms:
                if M.elements <= N.elements:
                    continue
                J = _generated(G, chain(N.generators, M.generators))
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda N: (N.order, sorted(N.elements)))


def is_simple(H: ExplicitGroup) -> bool:
    return H.order > 1 and len(normal_subgroups(H)) == 2


def verify_smallisland(r: int, degree: int = 5, factor: str = "alt") -> bool:
    """Every normal subgroup of ``Alt(degree)**r`` is the product of the
    factors it projects onto nontrivially."""
    if r not in (1, 2):
        raise ValidationError("r must be 1 or 2")
    if factor == "sym":
        raise NotSimple(f"Sym{degree} is not simple; the factors must be simple", degree=degree)
    if factor != "alt":
        raise ValidationError(f"unknown factor family {factor!r}")
    base = alt(degree)
    if not is_simple(base):
        raise NotSimple(f"Alt{degree} is not simple", degree=degree)
    G = direct_product(*[base] * r)
    for N in normal_subgroups(G):
        support = [i for i in range(r) if len(N.projection(i)) > 1]
        idle = [x for i in range(r) if i not in support for x in range(*_span(G.blocks[i]))]
        sub_product = {p for p in G.elements if all(p[x] == x for x in idle)}
        if sub_product != set(N.elements):
            return False
    return True


def _span(block):
    start, size = block
    return start, start + size


def verify_pondlight(G: ExplicitGroup, N: ExplicitGroup, H: ExplicitGroup) -> bool:
    """Instance of: N normal, H simple, ``H cap N != 1`` implies ``H <= N``."""
    if not N.is_normal_in(G):
        raise NotNormal("N is not a normal subgroup of G")
    if not H.elements <= G.elements:
        raise ValidationError("H is not a subgroup of G")
    if not is_simple(H):
        raise NotSimple("H is not simple")
    meets = len(H.elements & N.elements) > 1
    return (not meets) or H.elements <= N.elements


@dataclass
class KernelRow:
    matrix: list
    m: int
    order: int  # |Simp_ev(Gamma^(m))|
    p_m: int
    rD: float
    hypothesis: bool  # |H| > (p_m!)**(rD)
    conclusion: bool  # H acts trivially on period-m points
    image_order: int

    @property
    def consistent(self) -> bool:
        return self.conclusion or not self.hypothesis


def _three_cycle_generators(A: AdjacencyMatrix, m: int):
    """Simple symmetries generating Simp_ev at level m: 3-cycles inside each edge set."""
    G = level_graph(A, m)
    for i in range(A.size):
        for j in range(A.size):
            n = len(G.edge_set(i, j))
            for t in range(n - 2):
                yield SimpleSymmetry.from_components(A, m, {(i, j): _cycle(n, [t, t + 1, t + 2])})


def verify_kernel_lemma_toy(A: AdjacencyMatrix, m: int, params: PSParams) -> KernelRow:
    """Truth-table row for the kernel lemma at level m.

    The group ``Simp_ev(Gamma^(m))`` acts on the period-m points; the lemma
    says that if its order exceeds ``(p_m!)**(rD)`` the action is trivial.
    """
    order = simp_ev_order(A, m)
    if order > MAX_ORDER:
        raise TooLarge(f"|Simp_ev| = {order} exceeds {MAX_ORDER}", order=order)
    p_m = matrix_power(A, m).trace()
    rD = params.r * params.D
    hypothesis = math.log(order) > rD * lnfact(p_m)
    images = [restriction_to_periodic(a, m) for a in _three_cycle_generators(A, m)]
    degree = p_m
    image = _closure(degree, images, MAX_ORDER) if degree else frozenset([()])
    conclusion = all(p == tuple(range(degree)) for p in images)
    return KernelRow(A.tolist(), m, order, p_m, rD, hypothesis, conclusion, len(image))
