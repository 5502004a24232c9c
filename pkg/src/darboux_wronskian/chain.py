"""
Darboux-Backlund steps, Crum chains and the trigonometric Poschl-Teller family.

All potentials and states here are exact ring objects.  "Proportional to"
relations are realised as equalities up to a recorded rational constant,
and energies of the free-particle seeds ``sin(kx)`` are the integers ``k**2``.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np

from .ring import RatPoly, RingElem, RingFraction, TrigPoly, ring_eval, ring_eval_mp, trig_expand
from .seeds import SeedKind, SeedSpec
from .wronskian import RatioExpr, potential_from_wronskian, ratio_equal, wronskian

__all__ = [
    "Family",
    "PotentialParams",
    "ChainSpec",
    "DbtStepResult",
    "Certificate",
    "CrumComparison",
    "ChainError",
    "rs_function",
    "schrodinger_residual",
    "eigen_energy",
    "dbt_apply",
    "gm_seed_selection",
    "verify_gm_theorem",
    "verify_crum_vs_stepwise",
    "crum_vs_stepwise_many",
    "verify_shape_invariance",
    "predict_filtered_spectrum",
    "tdpt_exact",
    "tdpt_ground_state",
]


class ChainError(ValueError):
    """A chain or step violates its preconditions."""


class Family(str, enum.Enum):
    TDPT = "tdpt"
    BESSEL = "bessel"
    ZERO = "zero"


_C = TrigPoly.c()
_S = TrigPoly.s()


def tdpt_exact(m: int, n: int) -> RatioExpr:
    """``m(m+1)/sin^2 x + n(n+1)/cos^2 x`` over the common denominator ``s^2 c^2``."""
    a, b = m * (m + 1), n * (n + 1)
    num = TrigPoly(RatPoly([b, 0, a - b]))
    den = TrigPoly(RatPoly([0, 0, 1, 0, -1]))
    return RatioExpr(num, den)


def tdpt_ground_state(m: int, n: int) -> TrigPoly:
    """``s^(m+1) c^(n+1)``; the ``c`` (resp. ``s``) factor is dropped when n = 0 (resp. m = 0)."""
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise ChainError("ground state needs m, n >= 0, not both zero")
    g = TrigPoly.const(1)
    if m > 0:
        g = g * _S ** (m + 1)
    if n > 0:
        g = g * _C ** (n + 1)
    return g


@dataclass(frozen=True)
class PotentialParams:
    family: Family
    m: int = 0
    n: int = 0
    interval: tuple = (0.0, math.pi / 2)

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if self.m < 0 or self.n < 0:
            raise ChainError("potential parameters must be non-negative")
        if fam is Family.TDPT and self.m < self.n:
            raise ChainError("TDPT parameters need m >= n")
        if fam is Family.ZERO and (self.m or self.n):
            raise ChainError("zero potential has m = n = 0")

    def exact(self) -> RatioExpr:
        if self.family is Family.TDPT:
            return tdpt_exact(self.m, self.n)
        if self.family is Family.BESSEL:
            return RatioExpr(RatPoly.const(self.m * (self.m + 1)), RatPoly.monomial(2))
        return RatioExpr.of(TrigPoly())

    def function(self) -> Callable:
        """Vectorised float evaluator ``V(x)``."""
        a, b = self.m * (self.m + 1), self.n * (self.n + 1)
        if self.family is Family.TDPT:
            return lambda x: a / np.sin(x) ** 2 + b / np.cos(x) ** 2
        if self.family is Family.BESSEL:
            return lambda x: a / np.asarray(x) ** 2
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))

    def to_dict(self) -> dict:
        return {"family": self.family.value, "m": self.m, "n": self.n,
                "interval": [float(self.interval[0]), float(self.interval[1])]}


@dataclass(frozen=True)
class ChainSpec:
    """An ordered seed tuple ``N_m`` and the potential it should reach."""

    seeds: tuple
    target: PotentialParams
    flags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if not self.seeds:
            raise ChainError("empty chain")

    @property
    def confluent(self) -> bool:
        energies = [s.energy for s in self.seeds]
        return (len(set(energies)) != len(energies)
                or any(s.kind is SeedKind.K_DERIV for s in self.seeds))

    def realize(self) -> list:
        return [s.realize() for s in self.seeds]


@dataclass(frozen=True)
class DbtStepResult:
    new_potential: RatioExpr
    transformed_state: RatioExpr
    energy_shift_used: Fraction
    seed_energy: Fraction
    target_energy: Fraction


@dataclass
class Certificate:
    """Outcome of an exact identity check, JSON-serialisable."""

    kind: str
    params: dict
    seeds: list
    wronskian: str
    identity_verified: bool
    scale_constants: dict = field(default_factory=dict)
    coefficient_bits: int = 0
    wall_time: float = 0.0
    flags: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.identity_verified

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("wall_time")
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _fr(x: Fraction) -> str:
    return str(Fraction(x))


# -- single steps ---------------------------------------------------------


def rs_function(state: RingElem) -> RatioExpr:
    """Riccati-Schrodinger function ``-state'/state``."""
    if state.is_zero():
        raise ChainError("RS function of the zero state")
    return RatioExpr(-state.derive(), state)


def schrodinger_residual(state: RatioExpr, potential: RatioExpr, energy) -> RatioExpr:
    """``-psi'' + (V - E) psi`` as an unreduced ratio."""
    return -state.second_derivative() + (potential - Fraction(energy)) * state


def eigen_energy(potential: RatioExpr, state) -> Fraction | None:
    """Energy ``E`` with ``-psi'' + V psi = E psi`` exactly, or None if there is none."""
    if not isinstance(state, RatioExpr):
        state = RatioExpr.of(state)
    if state.is_zero():
        return None
    h_psi = -state.second_derivative() + potential * state
    return RatioExpr(h_psi.num * state.den, h_psi.den * state.num).as_constant()


def _zero_potential_like(e: RingElem) -> RatioExpr:
    return RatioExpr.of(e.__class__())


def dbt_apply(potential: RatioExpr, seed_state: RingElem, target_state: RingElem) -> DbtStepResult:
    """One Darboux-Backlund step ``A(w_seed)`` applied to ``target_state``.

    The new potential is ``V + 2 w'``; the image state is
    ``W(seed, target)/seed``.  Both input states are checked to be exact
    eigenfunctions of ``potential``, and the image is checked to satisfy the
    transformed Schrodinger equation exactly.
    """
    e_seed = eigen_energy(potential, seed_state)
    e_target = eigen_energy(potential, target_state)
    if e_seed is None or e_target is None:
        raise ChainError("seed/target not eigenfunctions")
    if e_seed == e_target:
        raise ChainError("confluent step requires bessel-confluent module")
    w = rs_function(seed_state)
    new_v = potential + w.derive() * 2
    state = RatioExpr(wronskian([seed_state, target_state]), seed_state)
    if not schrodinger_residual(state, new_v, e_target).is_zero():
        raise ChainError("transformed state fails the Schrodinger residual")
    return DbtStepResult(new_v, state, e_target - e_seed, e_seed, e_target)


# -- Gaillard-Matveev chains ----------------------------------------------


def gm_seed_selection(m: int, n: int) -> ChainSpec:
    """Seeds ``sin x, ..., sin((m-n)x), sin((m-n+2)x), ..., sin((m+n)x)``."""
    if m < n:
        raise ChainError("seed selection needs m >= n")
    if n < 0:
        raise ChainError("n must be non-negative")
    if m == 0:
        raise ChainError("m = 0 gives an empty chain (zero potential)")
    p = m - n
    ks = list(range(1, p + 1)) + [p + 2 * l for l in range(1, n + 1)]
    flags = ("degenerate_m_equals_n",) if p == 0 else ()
    return ChainSpec(tuple(SeedSpec.sin(k) for k in ks),
                     PotentialParams(Family.TDPT, m, n, (0.0, math.pi / 2)), flags)


def _monomial_scale(w: TrigPoly, a: int, b: int) -> Fraction | None:
    """C such that w == C s^a c^b, or None."""
    mono = _S ** a * _C ** b
    return RatioExpr(w, mono).as_constant()


def verify_gm_theorem(m: int, n: int) -> Certificate:
    """Certify ``-2 (ln W(gm seeds))'' == m(m+1)/sin^2 + n(n+1)/cos^2`` exactly."""
    t0 = time.perf_counter()
    chain = gm_seed_selection(m, n)
    w = wronskian(chain.realize())
    v = potential_from_wronskian(w)
    ok = ratio_equal(v, tdpt_exact(m, n))
    scale = _monomial_scale(w, m * (m + 1) // 2, n * (n + 1) // 2)
    consts = {}
    if scale is not None:
        consts["wronskian_over_s^a_c^b"] = _fr(scale)
        consts["a"] = m * (m + 1) // 2
        consts["b"] = n * (n + 1) // 2
    return Certificate(
        kind="gaillard_matveev",
        params={"m": m, "n": n},
        seeds=[s.label for s in chain.seeds],
        wronskian=w.to_str(),
        identity_verified=ok,
        scale_constants=consts,
        coefficient_bits=w.max_bits(),
        wall_time=time.perf_counter() - t0,
        flags=list(chain.flags),
    )


# -- Crum formula versus stepwise dressing ---------------------------------


@dataclass
class CrumComparison:
    """Stepwise product ``A(w_m)...A(w_1) psi`` against ``W(seeds, psi)/W(seeds)``."""

    agrees: bool
    scale: Fraction | None
    potential_agrees: bool
    energy: Fraction
    crum_state: RatioExpr
    stepwise_state: RingFraction

    def __bool__(self):
        return self.agrees


def _seed_elem(s) -> RingElem:
    return s.realize() if isinstance(s, SeedSpec) else s


def crum_vs_stepwise_many(chain: ChainSpec, targets: Sequence) -> list:
    """Compare both routes for several targets sharing one chain.

    The stepwise route works in the gcd-reduced fraction field
    (:class:`RingFraction`); the Crum route uses the Bareiss Wronskian.
    """
    if chain.confluent:
        raise ChainError("confluent chain: use the bessel-confluent module")
    seeds = chain.realize()
    targets = [_seed_elem(t) for t in targets]
    zero_v = _zero_potential_like(seeds[0])
    seed_e = [eigen_energy(zero_v, s) for s in seeds]
    target_e = [eigen_energy(zero_v, t) for t in targets]
    if any(e is None for e in seed_e + target_e):
        raise ChainError("seeds and targets must be zero-potential eigenfunctions")
    if len(set(seed_e + target_e)) != len(seed_e) + len(target_e):
        raise ChainError("confluent chain: use the bessel-confluent module")

    # stepwise: carry images of the remaining seeds and every target
    images = [RingFraction(e) for e in seeds + targets]
    v_step = RingFraction(seeds[0].__class__())
    for j in range(len(seeds)):
        phi = images[j]
        w = -(phi.derive() / phi)
        v_step = v_step + w.derive() * 2
        for i in range(j + 1, len(images)):
            f = images[i]
            images[i] = f.derive() + w * f
    w_seeds = wronskian(seeds)
    v_crum = potential_from_wronskian(w_seeds)
    v_ok = RingFraction(v_crum.num) == v_step * RingFraction(v_crum.den)

    out = []
    for t, e, step in zip(targets, target_e, images[len(seeds):]):
        crum = RatioExpr(wronskian(seeds + [t]), w_seeds)
        ratio = step * RingFraction(crum.den) / RingFraction(crum.num) if not crum.is_zero() else None
        scale = ratio.constant_value() if ratio is not None else None
        out.append(CrumComparison(scale is not None and scale != 0, scale, v_ok, e, crum, step))
    return out


def verify_crum_vs_stepwise(chain: ChainSpec, target_state) -> CrumComparison:
    return crum_vs_stepwise_many(chain, [target_state])[0]


# -- shape invariance -----------------------------------------------------


def _partner_params(m: int, n: int) -> tuple:
    if m > 0 and n > 0:
        return m + 1, n + 1
    if n == 0:
        return m + 1, 0
    return 0, n + 1


def verify_shape_invariance(m: int, n: int, ground: RingElem | None = None) -> Certificate:
    """Certify ``V(m,n) + 2 w_0' - V(partner)`` is a rational constant.

    The partner parameters are ``(m+1, n+1)``, or ``(m+1, 0)`` / ``(0, n+1)``
    on the boundary branches.  Two constants are recorded: the raw constant
    between the unshifted potentials, and the translation constant
    ``E0(partner) - E0(m, n)`` relating the zero-ground-energy forms.
    """
    t0 = time.perf_counter()
    if ground is None:
        ground = tdpt_ground_state(m, n)
    v = tdpt_exact(m, n)
    e0 = eigen_energy(v, ground)
    if e0 is None:
        raise ChainError("ground state fails Schrodinger residual")
    mp, np_ = _partner_params(m, n)
    partner = v + rs_function(ground).derive() * 2
    v_next = tdpt_exact(mp, np_)
    diff = partner - v_next
    r_raw = diff.as_constant()
    e0_next = eigen_energy(v_next, tdpt_ground_state(mp, np_))
    consts = {"E0": _fr(e0)}
    if r_raw is not None:
        consts["R_raw"] = _fr(r_raw)
    if e0_next is not None:
        consts["E0_partner"] = _fr(e0_next)
        consts["R_tsip"] = _fr(e0_next - e0)
    return Certificate(
        kind="shape_invariance",
        params={"m": m, "n": n, "partner_m": mp, "partner_n": np_},
        seeds=[],
        wronskian=ground.to_str(),
        identity_verified=r_raw is not None and e0_next is not None,
        scale_constants=consts,
        coefficient_bits=partner.num.max_bits(),
        wall_time=time.perf_counter() - t0,
    )


# -- spectrum filtering ---------------------------------------------------


def _interior_zeros(e: TrigPoly, lo: float, hi: float, samples: int = 800) -> list:
    """Simple zeros of ``e`` in the open interval, located to high precision.

    Seed Wronskians vanish to high order at the walls, so samples next to a
    wall lose about ``degree * log10(1/d)`` digits to cancellation; the
    working precision is raised accordingly.
    """
    xs = np.linspace(lo, hi, samples + 2)[1:-1]
    dps = 30 + int(max(e.degree, 1) * math.log10(samples / (hi - lo) + 10))

    def f(x):
        return ring_eval_mp(e, x, dps)

    vals = [f(x) for x in xs]
    zeros = []
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0:
            zeros.append(mpmath.mpf(xs[i]))
        elif a * b < 0:
            with mpmath.workdps(40):
                zeros.append(mpmath.findroot(f, (xs[i], xs[i + 1]), solver="anderson"))
    return sorted(set(zeros))


def _vanishes_at(e: TrigPoly, x0, scale) -> bool:
    with mpmath.workdps(40):
        return abs(ring_eval_mp(e, x0)) <= mpmath.mpf(10) ** -20 * scale


def predict_filtered_spectrum(chain: ChainSpec, max_level: int) -> list:
    """Free levels ``k**2`` (``k <= max_level``) that survive the singular chain.

    The chain is followed stage by stage.  When the image of a seed acquires
    nodes inside the working interval, the transformed potential gets strong
    singularities there, acting as Dirichlet walls; a level survives only if
    its own image at that stage vanishes at every such node.  The working
    interval then shrinks to the part adjacent to the origin.
    """
    if any(s.kind is not SeedKind.SIN for s in chain.seeds):
        raise ChainError("filtering prediction is implemented for sin seeds only")
    ks = [s.k for s in chain.seeds]
    if len(set(ks)) != len(ks):
        raise ChainError("seeds must be distinct")
    seeds = chain.realize()
    lo, hi = 0.0, math.pi
    alive = [k for k in range(1, max_level + 1) if k not in ks]
    for j in range(len(seeds)):
        wj = wronskian(seeds[: j + 1])
        nodes = _interior_zeros(wj, lo, hi)
        if not nodes:
            continue
        keep = []
        for k in alive:
            num = wronskian(seeds[:j] + [trig_expand("sin", k)]) if j else trig_expand("sin", k)
            scale = max(abs(ring_eval_mp(num, x)) for x in np.linspace(lo, hi, 64)[1:-1])
            if all(_vanishes_at(num, x0, scale) for x0 in nodes):
                keep.append(k)
        alive = keep
        hi = float(nodes[0])
    return [(k * k, f"sin({k}x)") for k in alive]


def filtered_interval(chain: ChainSpec) -> tuple:
    """Working interval left after all singular stages of a sin-seed chain."""
    seeds = chain.realize()
    lo, hi = 0.0, math.pi
    for j in range(len(seeds)):
        nodes = _interior_zeros(wronskian(seeds[: j + 1]), lo, hi)
        if nodes:
            hi = float(nodes[0])
    return lo, hi
