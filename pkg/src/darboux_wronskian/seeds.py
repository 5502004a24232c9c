"""Seed descriptions shared by the Wronskian engine and the chain builders."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .ring import RatPoly, RingElem, trig_expand


class SeedKind(str, enum.Enum):
    SIN = "sin"
    COS = "cos"
    POWER_ODD = "power_odd"
    K_DERIV = "k_deriv"


@dataclass(frozen=True)
class SeedSpec:
    """One seed eigenfunction of the free particle.

    ``k`` is the wavenumber for ``SIN``/``COS``, the exponent for
    ``POWER_ODD`` and the order of the derivative in the spectral parameter
    (taken at ``kappa = 0`` of ``sin(kappa x)/kappa``) for ``K_DERIV``.
    """

    kind: SeedKind
    k: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        kind = SeedKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not self.label:
            object.__setattr__(self, "label", self.default_label())
        if kind is SeedKind.SIN and self.k < 1:
            raise ValueError("sin seed needs k >= 1")
        if kind is SeedKind.COS and self.k < 0:
            raise ValueError("cos seed needs k >= 0")
        if kind is SeedKind.POWER_ODD and (self.k < 1 or self.k % 2 == 0):
            raise ValueError("power seed needs an odd exponent >= 1")
        if kind is SeedKind.K_DERIV and (self.k < 0 or self.k % 2):
            raise ValueError("k-derivative column needs an even order >= 0")

    @classmethod
    def sin(cls, k: int) -> "SeedSpec":
        return cls(SeedKind.SIN, k)

    @classmethod
    def cos(cls, k: int) -> "SeedSpec":
        return cls(SeedKind.COS, k)

    @classmethod
    def power(cls, e: int) -> "SeedSpec":
        return cls(SeedKind.POWER_ODD, e)

    @classmethod
    def k_deriv(cls, order: int) -> "SeedSpec":
        return cls(SeedKind.K_DERIV, order)

    def default_label(self) -> str:
        if self.kind is SeedKind.SIN:
            return "sin(x)" if self.k == 1 else f"sin({self.k}x)"
        if self.kind is SeedKind.COS:
            return "cos(x)" if self.k == 1 else f"cos({self.k}x)"
        if self.kind is SeedKind.POWER_ODD:
            return f"x^{self.k}"
        return f"d^{self.k}psi/dk^{self.k}|k=0"

    @property
    def energy(self) -> int:
        """Free-particle energy k**2 (zero for the polynomial seeds)."""
        if self.kind in (SeedKind.SIN, SeedKind.COS):
            return self.k * self.k
        return 0

    def realize(self) -> RingElem:
        if self.kind is SeedKind.SIN:
            return trig_expand("sin", self.k)
        if self.kind is SeedKind.COS:
            return trig_expand("cos", self.k)
        if self.kind is SeedKind.POWER_ODD:
            return RatPoly.monomial(self.k)
        return k_derivative_column(self.k)


def k_derivative_column(order: int) -> RatPoly:
    """``d^order/dkappa^order [sin(kappa x)/kappa]`` at ``kappa = 0``.

    Odd orders vanish identically; order ``2j`` gives ``(-1)**j x**(2j+1)/(2j+1)``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if order % 2:
        return RatPoly()
    j = order // 2
    return RatPoly.monomial(2 * j + 1, Fraction((-1) ** j, 2 * j + 1))
