"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from bgalois.exact import GF, QQ
from bgalois.linalg import Mat

small_ints = st.integers(-4, 4)


@st.composite
def rationals(draw, field=QQ):
    num = draw(st.integers(-6, 6))
    den = draw(st.integers(1, 4))
    return field(num) * field(den).inverse()


@st.composite
def matrices(draw, field=QQ, size=None, min_size=2, max_size=4):
    n = size if size is not None else draw(st.integers(min_size, max_size))
    if field == QQ:
        entry = rationals()
    else:
        entry = st.integers(0, field.p - 1).map(field)
    return Mat(field, [[draw(entry) for _ in range(n)] for _ in range(n)])


@st.composite
def invertible(draw, field=QQ, size=None, min_size=2, max_size=4):
    m = draw(matrices(field, size, min_size, max_size))
    if m.det().is_zero():
        # nudge onto the identity diagonal to keep the draw useful
        n = m.rows
        m = m + Mat.identity(field, n) * field(draw(st.integers(1, 3)))
    from hypothesis import assume
    assume(not m.det().is_zero())
    return m


fields = st.sampled_from([QQ, GF(5)])
