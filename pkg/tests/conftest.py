from fractions import Fraction

import mpmath
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from darboux_wronskian.ring import RatPoly, TrigPoly, trig_expand

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
ratpolys = st.lists(small_fractions, max_size=5).map(RatPoly)
trigpolys = st.builds(TrigPoly, ratpolys, ratpolys)


@st.composite
def trig_combos(draw, max_k=4, max_terms=3):
    """Nonzero finite combinations of sin(kx), cos(kx) as (ring element, term list)."""
    terms = draw(st.lists(
        st.tuples(st.sampled_from(["sin", "cos"]), st.integers(0, max_k), st.integers(-3, 3)),
        min_size=1, max_size=max_terms,
    ))
    elem = TrigPoly()
    for kind, k, a in terms:
        if kind == "sin" and k == 0:
            continue
        elem = elem + trig_expand(kind, k) * a
    if elem.is_zero():
        elem = trig_expand("sin", 1)
        terms = [("sin", 1, 1)]
    return elem, terms


def combo_derivative(terms, order, x):
    """Analytic ``order``-th derivative of a sin/cos combination, in mpmath."""
    total = mpmath.mpf(0)
    for kind, k, a in terms:
        if kind == "sin" and k == 0:
            continue
        phase = order * mpmath.pi / 2 + (0 if kind == "sin" else mpmath.pi / 2)
        total += a * mpmath.mpf(k) ** order * mpmath.sin(k * x + phase)
    return total
