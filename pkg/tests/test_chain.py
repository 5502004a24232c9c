import itertools
import json
import math

import numpy as np
import pytest

from darboux_wronskian.chain import (ChainError, ChainSpec, Family, PotentialParams, crum_vs_stepwise_many,
                                     dbt_apply, eigen_energy, filtered_interval, gm_seed_selection, predict_filtered_spectrum,
                                     rs_function, schrodinger_residual, tdpt_exact, tdpt_ground_state,
                                     verify_crum_vs_stepwise, verify_gm_theorem, verify_shape_invariance)
from darboux_wronskian.ring import RatPoly, TrigPoly, ring_eval, trig_expand
from darboux_wronskian.seeds import SeedSpec
from darboux_wronskian.wronskian import RatioExpr, potential_from_wronskian, ratio_equal, wronskian

from test_wronskian import numeric_wronskian

S, C = TrigPoly.s(), TrigPoly.c()
ZERO = RatioExpr.of(TrigPoly())


def sin_chain(*ks):
    return ChainSpec(tuple(SeedSpec.sin(k) for k in ks), PotentialParams(Family.ZERO))


def test_rs_function_examples():
    assert ratio_equal(rs_function(S), RatioExpr(-C, S))
    x = RatPoly.x()
    assert ratio_equal(rs_function(x), RatioExpr(RatPoly.const(-1), x))
    assert ratio_equal(rs_function(x * x), RatioExpr(RatPoly.const(-2), x))
    with pytest.raises(ChainError):
        rs_function(TrigPoly())


@pytest.mark.parametrize("l", range(1, 7))
def test_single_step_image(l):
    res = dbt_apply(ZERO, S, trig_expand("sin", l + 1))
    expected = RatioExpr(trig_expand("cos", l + 1) * (l + 1) * S - C * trig_expand("sin", l + 1), S)
    assert ratio_equal(res.transformed_state, expected)
    assert ratio_equal(res.new_potential, RatioExpr(TrigPoly.const(2), S * S))
    assert res.target_energy == (l + 1) ** 2
    assert res.energy_shift_used == (l + 1) ** 2 - 1


def test_single_step_low_states():
    first = dbt_apply(ZERO, S, trig_expand("sin", 2)).transformed_state
    assert RatioExpr(first.num, first.den * S * S).as_constant() == -2
    second = dbt_apply(ZERO, S, trig_expand("sin", 3)).transformed_state
    assert RatioExpr(second.num, second.den * S * S * C).as_constant() == -8


def test_single_step_errors():
    with pytest.raises(ChainError, match="confluent"):
        dbt_apply(ZERO, S, S * 3)
    with pytest.raises(ChainError, match="not eigenfunctions"):
        dbt_apply(ZERO, S, S * S)


def test_seed_selection_examples():
    assert [s.k for s in gm_seed_selection(1, 0).seeds] == [1]
    assert [s.k for s in gm_seed_selection(3, 1).seeds] == [1, 2, 4]
    two_two = gm_seed_selection(2, 2)
    assert [s.k for s in two_two.seeds] == [2, 4]
    assert "degenerate_m_equals_n" in two_two.flags
    with pytest.raises(ChainError):
        gm_seed_selection(1, 2)
    with pytest.raises(ChainError):
        gm_seed_selection(0, 0)


def test_gm_one_zero_and_two_one():
    one = verify_gm_theorem(1, 0)
    assert one and one.scale_constants["wronskian_over_s^a_c^b"] == "1"
    two = verify_gm_theorem(2, 1)
    assert two
    assert RatioExpr(wronskian(gm_seed_selection(2, 1).realize()), S ** 3 * C).as_constant() == -8


def test_gm_five_three_against_numeric_oracle():
    cert = verify_gm_theorem(5, 3)
    assert cert and cert.seeds == ["sin(x)", "sin(2x)", "sin(4x)", "sin(6x)", "sin(8x)"]
    w = wronskian(gm_seed_selection(5, 3).realize())
    v = potential_from_wronskian(w)
    terms = [[("sin", k, 1)] for k in (1, 2, 4, 6, 8)]
    for x in np.linspace(0.05, 1.5, 50):
        ref = numeric_wronskian(terms, x)
        assert abs(ring_eval(w, x) - ref) <= 1e-6 * abs(ref)
        assert abs(v(x) - (30 / math.sin(x) ** 2 + 12 / math.cos(x) ** 2)) < 1e-6 * v(x)


@pytest.mark.parametrize("m,n", [(3, 1), (4, 2), (4, 0)])
def test_seed_order_does_not_matter(m, n):
    seeds = gm_seed_selection(m, n).realize()
    w = wronskian(seeds)
    target = tdpt_exact(m, n)
    for perm in itertools.islice(itertools.permutations(seeds), 1, 8):
        wp = wronskian(list(perm))
        assert wp == w or wp == -w
        assert ratio_equal(potential_from_wronskian(wp), target)


def test_crum_examples():
    c = verify_crum_vs_stepwise(sin_chain(1), SeedSpec.sin(2))
    assert c and c.scale == 1 and c.potential_agrees
    assert RatioExpr(c.crum_state.num, c.crum_state.den * S * S).as_constant() is not None
    c = verify_crum_vs_stepwise(sin_chain(1, 2), SeedSpec.sin(3))
    assert c and RatioExpr(c.crum_state.num, c.crum_state.den * S ** 3).as_constant() is not None
    assert verify_crum_vs_stepwise(sin_chain(1, 2, 4), SeedSpec.sin(6))


def test_crum_rejects_confluent_chain():
    with pytest.raises(ChainError, match="confluent"):
        verify_crum_vs_stepwise(sin_chain(1, 2), SeedSpec.sin(2))


def test_crum_states_solve_transformed_equation():
    chain = gm_seed_selection(3, 1)
    v = potential_from_wronskian(wronskian(chain.realize()))
    comps = crum_vs_stepwise_many(chain, [SeedSpec.sin(k) for k in (3, 5, 6)])
    for c in comps:
        assert c
        assert schrodinger_residual(c.crum_state, v, c.energy).is_zero()


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (3, 2), (2, 0), (4, 4)])
def test_ground_state_energy(m, n):
    g = tdpt_ground_state(m, n)
    e = eigen_energy(tdpt_exact(m, n), g)
    expected = (m + 1) ** 2 if n == 0 else (m + n + 2) ** 2
    assert e == expected


def test_shape_invariance_examples():
    c10 = verify_shape_invariance(1, 0, S ** 2)
    assert c10 and c10.params["partner_m"] == 2 and c10.params["partner_n"] == 0
    c11 = verify_shape_invariance(1, 1, S ** 2 * C ** 2)
    assert c11 and (c11.params["partner_m"], c11.params["partner_n"]) == (2, 2)
    c32 = verify_shape_invariance(3, 2)
    assert c32.scale_constants == {"E0": "49", "R_raw": "0", "E0_partner": "81", "R_tsip": "32"}


def test_shape_invariance_rejects_non_eigenstate():
    with pytest.raises(ChainError):
        verify_shape_invariance(2, 1, S ** 2)


def test_filtered_spectrum_single_seed():
    assert predict_filtered_spectrum(sin_chain(1), 5) == [(k * k, f"sin({k}x)") for k in range(2, 6)]
    assert filtered_interval(sin_chain(1)) == (0.0, math.pi)


def test_filtered_spectrum_two_one():
    # W(sin x, sin 3x) puts a wall at pi/2; W(sin x, sin kx) = k cos(k pi/2) there,
    # so only odd k survive
    chain = gm_seed_selection(2, 1)
    assert predict_filtered_spectrum(chain, 11) == [(25, "sin(5x)"), (49, "sin(7x)"),
                                                    (81, "sin(9x)"), (121, "sin(11x)")]
    lo, hi = filtered_interval(chain)
    assert lo == 0.0 and abs(hi - math.pi / 2) < 1e-14


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (2, 2), (3, 3), (4, 2)])
def test_filtered_ground_level_matches_ground_state(m, n):
    levels = predict_filtered_spectrum(gm_seed_selection(m, n), m + n + 8)
    assert levels[0][0] == (m + n + 2) ** 2
    assert [e for e, _ in levels[:3]] == [(m + n + 2 + 2 * j) ** 2 for j in range(3)]


def test_filtering_requires_sin_seeds():
    with pytest.raises(ChainError):
        predict_filtered_spectrum(ChainSpec((SeedSpec.cos(1),), PotentialParams(Family.ZERO)), 4)


def test_certificate_json_roundtrip():
    cert = verify_gm_theorem(2, 1)
    doc = json.loads(cert.to_json())
    assert doc["identity_verified"] is True and doc["params"] == {"m": 2, "n": 1}
    assert "wall_time" not in cert.to_dict(timing=False)


def test_potential_params_validation():
    with pytest.raises(ChainError):
        PotentialParams(Family.TDPT, 1, 2)
    f = PotentialParams(Family.TDPT, 2, 1).function()
    assert abs(f(np.array([0.5]))[0] - (6 / math.sin(0.5) ** 2 + 2 / math.cos(0.5) ** 2)) < 1e-12
