from hypothesis import assume
from hypothesis import strategies as st

from dartflip.geom import GeometryError, PointSet


@st.composite
def pointsets(draw, min_n=4, max_n=6, span=12):
    pts = draw(st.lists(st.tuples(st.integers(0, span), st.integers(0, span)),
                        min_size=min_n, max_size=max_n, unique=True))
    try:
        return PointSet(pts)
    except GeometryError:
        assume(False)
