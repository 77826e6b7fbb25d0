"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from sftlab.sft import AdjacencyMatrix, is_primitive


@st.composite
def matrices(draw, max_size=3, max_entry=3):
    r = draw(st.integers(1, max_size))
    rows = draw(
        st.lists(st.lists(st.integers(0, max_entry), min_size=r, max_size=r), min_size=r, max_size=r).filter(
            lambda m: all(any(row) for row in m) and all(any(col) for col in zip(*m))
        )
    )
    return AdjacencyMatrix.from_rows(rows)


@st.composite
def primitive_matrices(draw, max_size=3, max_entry=3):
    A = draw(matrices(max_size, max_entry))
    ok, _ = is_primitive(A)
    draw(st.just(None).filter(lambda _: ok))
    return A
