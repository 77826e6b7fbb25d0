import math

import pytest

from sftlab import group_oracle as go
from sftlab.errors import NotNormal, NotSimple, TooLarge, ValidationError
from sftlab.ps_entropy import PSParams
from sftlab.sft import AdjacencyMatrix


@pytest.mark.parametrize("n, order", [(3, 3), (4, 12), (5, 60), (6, 360)])
def test_alt_orders(n, order):
    assert go.alt(n).order == order


def test_sym_orders_and_normals():
    assert [N.order for N in go.normal_subgroups(go.sym(2))] == [1, 2]
    assert [N.order for N in go.normal_subgroups(go.sym(4))] == [1, 4, 12, 24]
    assert [N.order for N in go.normal_subgroups(go.alt(4))] == [1, 4, 12]


def test_simplicity():
    assert go.is_simple(go.alt(5))
    assert not go.is_simple(go.alt(4))
    assert not go.is_simple(go.sym(5))
    assert go.is_simple(go.alt(3))  # cyclic of prime order


def test_lattice_closed_under_meet_and_join():
    G = go.direct_product(go.alt(4), go.sym(3))
    normals = {N.elements for N in go.normal_subgroups(G)}
    for a in normals:
        for b in normals:
            assert a & b in normals
            joined = go._generated(G, a | b).elements
            assert joined in normals


def test_alt5_squared():
    A5 = go.alt(5)
    G = go.direct_product(A5, A5)
    assert G.order == 3600
    assert [N.order for N in go.normal_subgroups(G)] == [1, 60, 60, 3600]
    assert go.verify_smallisland(1) and go.verify_smallisland(2)


def test_smallisland_errors():
    with pytest.raises(NotSimple):
        go.verify_smallisland(2, factor="sym")
    with pytest.raises(ValidationError):
        go.verify_smallisland(3)


def test_pondlight():
    A5 = go.alt(5)
    G = go.direct_product(A5, A5)
    left = G.subgroup(G.generators[:3])
    diag = go.diagonal(A5)
    assert go.verify_pondlight(G, left, diag)
    assert go.verify_pondlight(G, left, left)
    with pytest.raises(NotNormal):
        go.verify_pondlight(G, diag, left)
    S4 = go.sym(4)
    with pytest.raises(NotSimple):
        go.verify_pondlight(S4, S4, S4)


def test_caps():
    with pytest.raises(TooLarge):
        go.alt(13)
    with pytest.raises(TooLarge):
        go.direct_product(go.alt(7), go.alt(6))


def test_closure_detects_bad_sets():
    with pytest.raises(ValidationError):
        go.ExplicitGroup(3, [(1, 0, 2)], elements=frozenset([(0, 1, 2), (1, 0, 2), (1, 2, 0)]))


@pytest.mark.parametrize("rows", [((2,),), ((3,),), ((4,),), ((5,),), ((1, 4), (4, 1))])
def test_kernel_rows(rows):
    A = AdjacencyMatrix.from_rows(rows)
    row = go.verify_kernel_lemma_toy(A, 1, PSParams(1.0, 1.0, A.size**2))
    assert row.consistent
    # p_1 is the trace; at level 1 each loop edge is its own fixed point
    assert row.p_m == A.trace()


def test_kernel_row_values():
    row = go.verify_kernel_lemma_toy(AdjacencyMatrix.from_rows([[5]]), 1, PSParams(1, 1, 1))
    assert row.order == 60 and row.p_m == 5
    # |Alt5| = 60 < 5! so the hypothesis fails, and the group moves fixed points
    assert not row.hypothesis and not row.conclusion and row.image_order == 60
    row2 = go.verify_kernel_lemma_toy(AdjacencyMatrix.from_rows([[1, 4], [4, 1]]), 1, PSParams(1, 1, 4))
    assert row2.p_m == 2 and row2.order == 12**2
    assert row2.hypothesis and row2.conclusion
