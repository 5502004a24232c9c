"""
Exact Wronskian and Darboux-transformation engine for trigonometric
Poschl-Teller and Bessel potentials, with a Numerov spectral oracle.
"""

__version__ = "0.1.0"

from .ring import BigRational, RatPoly, RingFraction, TrigPoly, ring_eval, trig_expand
from .seeds import SeedKind, SeedSpec
from .wronskian import RatioExpr, generalized_wronskian, potential_from_wronskian, wronskian
from .chain import (
    Certificate,
    ChainError,
    ChainSpec,
    Family,
    PotentialParams,
    dbt_apply,
    gm_seed_selection,
    predict_filtered_spectrum,
    verify_crum_vs_stepwise,
    verify_gm_theorem,
    verify_shape_invariance,
)
from .bessel import (
    RayleighForm,
    RayleighState,
    comparison_table,
    rayleigh_operator_state,
    rayleigh_wronskian_state,
    spherical_bessel,
    verify_bessel_chain,
)
from .spectral import SolverConfig, SpectralResult, check_isospectral, node_positions, solve_dirichlet
from .seedexpr import parse_seed, pretty

__all__ = [
    "BigRational", "RatPoly", "TrigPoly", "RingFraction", "ring_eval", "trig_expand",
    "SeedKind", "SeedSpec",
    "RatioExpr", "wronskian", "generalized_wronskian", "potential_from_wronskian",
    "Certificate", "ChainError", "ChainSpec", "Family", "PotentialParams", "dbt_apply",
    "gm_seed_selection", "predict_filtered_spectrum", "verify_crum_vs_stepwise",
    "verify_gm_theorem", "verify_shape_invariance",
    "RayleighForm", "RayleighState", "comparison_table", "rayleigh_operator_state",
    "rayleigh_wronskian_state", "spherical_bessel", "verify_bessel_chain",
    "SolverConfig", "SpectralResult", "check_isospectral", "node_positions", "solve_dirichlet",
    "parse_seed", "pretty",
]
