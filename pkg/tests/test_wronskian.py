import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux_wronskian.ring import RatPoly, TrigPoly, ring_eval, trig_expand
from darboux_wronskian.seeds import SeedSpec
from darboux_wronskian.wronskian import (RatioExpr, bareiss_det, generalized_wronskian,
                                         potential_from_wronskian, ratio_equal, wronskian)

from conftest import combo_derivative, small_fractions, trig_combos

S, C = TrigPoly.s(), TrigPoly.c()


def _pivoted_det(a):
    n = len(a)
    det = mpmath.mpf(1)
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[p][k] == 0:
            return mpmath.mpf(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return det


def numeric_wronskian(term_lists, x):
    n = len(term_lists)
    with mpmath.workdps(40):
        rows = [[combo_derivative(terms, i, mpmath.mpf(x)) for terms in term_lists] for i in range(n)]
        return float(_pivoted_det(rows))


def test_one_by_one():
    assert wronskian([S]) == S


def test_odd_powers_three_columns():
    assert wronskian([RatPoly.monomial(1), RatPoly.monomial(3), RatPoly.monomial(5)]) == RatPoly.monomial(6, 16)


def test_sin_x_sin_3x():
    w = wronskian([trig_expand("sin", 1), trig_expand("sin", 3)])
    assert w == S ** 3 * C * (-8)
    for x in np.linspace(0.1, 3.0, 20):
        ref = 3 * math.sin(x) * math.cos(3 * x) - math.cos(x) * math.sin(3 * x)
        assert abs(w(x) - ref) < 1e-12


def test_errors():
    with pytest.raises(ValueError, match="empty Wronskian"):
        wronskian([])
    with pytest.raises(TypeError):
        wronskian([S, RatPoly.x()])
    with pytest.raises(ValueError):
        potential_from_wronskian(TrigPoly())
    with pytest.raises(ValueError, match="unsupported base"):
        generalized_wronskian(SeedSpec.sin(1), [0])
    with pytest.raises(TypeError):
        ratio_equal(RatioExpr.of(S), RatioExpr.of(RatPoly.x()))


def test_generalized_wronskian_examples():
    assert generalized_wronskian(SeedSpec.k_deriv(0), [0]) == RatPoly.x()
    w = generalized_wronskian(SeedSpec.k_deriv(0), [0, 2, 4])
    assert w == wronskian([RatPoly.monomial(1), RatPoly.monomial(3), RatPoly.monomial(5)]) * Fraction(-1, 15)
    assert w == RatPoly.monomial(6, Fraction(-16, 15))


def test_potential_examples():
    assert ratio_equal(potential_from_wronskian(S), RatioExpr(TrigPoly.const(2), S * S))
    assert potential_from_wronskian(TrigPoly.const(7)).is_zero()
    v21 = RatioExpr(TrigPoly.const(6), S * S) + RatioExpr(TrigPoly.const(2), C * C)
    assert ratio_equal(potential_from_wronskian(S ** 3 * C), v21)
    assert not ratio_equal(RatioExpr(TrigPoly.const(2), S * S), RatioExpr(TrigPoly.const(2), C * C))


@pytest.mark.parametrize("m", range(1, 7))
def test_odd_power_closed_form(m):
    cols = [RatPoly.monomial(2 * j + 1) for j in range(m)]
    coeff = 2 ** (m * (m - 1) // 2) * math.prod(math.factorial(j) for j in range(1, m))
    assert wronskian(cols) == RatPoly.monomial(m * (m + 1) // 2, coeff)


def test_bareiss_matches_cofactor_expansion():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.integers(-4, 5, size=(4, 4))
        mat = [[RatPoly.const(int(v)) for v in row] for row in a]
        assert bareiss_det(mat).coeff(0) == round(np.linalg.det(a))


@given(st.lists(trig_combos(), min_size=2, max_size=4), st.data())
def test_multilinearity(cols, data):
    elems = [e for e, _ in cols]
    j = data.draw(st.integers(0, len(elems) - 1))
    lam = data.draw(small_fractions)
    other, _ = data.draw(trig_combos())
    w = wronskian(elems)
    scaled = list(elems)
    scaled[j] = elems[j] * lam
    assert wronskian(scaled) == w * lam
    summed = list(elems)
    summed[j] = elems[j] + other
    replaced = list(elems)
    replaced[j] = other
    assert wronskian(summed) == w + wronskian(replaced)


@given(st.lists(trig_combos(), min_size=2, max_size=4), st.data())
def test_antisymmetry(cols, data):
    elems = [e for e, _ in cols]
    i = data.draw(st.integers(0, len(elems) - 1))
    j = data.draw(st.integers(0, len(elems) - 1).filter(lambda t: t != i))
    swapped = list(elems)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert wronskian(swapped) == -wronskian(elems)


@given(trig_combos(max_terms=4), small_fractions.filter(lambda f: f != 0))
def test_potential_scale_invariance(combo, lam):
    w, _ = combo
    assert ratio_equal(potential_from_wronskian(w * lam), potential_from_wronskian(w))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True))
def test_polynomial_gauge_factor(exps):
    # W(g f_1, ..., g f_n) = g^n W(f_1, ..., f_n)
    cols = [RatPoly.monomial(e) for e in exps]
    g = RatPoly([1, 1])
    n = len(cols)
    assert wronskian([g * f for f in cols]) == g ** n * wronskian(cols)


@given(st.lists(trig_combos(), min_size=1, max_size=4),
       st.lists(st.floats(0.2, 2.9), min_size=10, max_size=10))
def test_exact_matches_numeric_determinant(cols, xs):
    w = wronskian([e for e, _ in cols])
    terms = [t for _, t in cols]
    for x in xs:
        ref = numeric_wronskian(terms, x)
        got = ring_eval(w, x)
        assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))
