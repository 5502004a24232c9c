"""
Exact Wronskians over :mod:`darboux_wronskian.ring` and the log-derivative map.

Determinants are evaluated by fraction-free (Bareiss) elimination.  Every
intermediate division is exact in the ring; a non-zero remainder raises,
so a returned Wronskian is always a certified ring element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ring import RatPoly, RingElem, TrigPoly, ring_eval, ring_tag
from .seeds import SeedKind, SeedSpec, k_derivative_column

__all__ = [
    "RatioExpr",
    "WronskianMatrix",
    "wronskian",
    "generalized_wronskian",
    "potential_from_wronskian",
    "ratio_equal",
    "bareiss_det",
]


def _one_like(e: RingElem) -> RingElem:
    return e.__class__.const(1)


def _check_tags(elems: Sequence[RingElem]) -> str:
    tags = {ring_tag(e) for e in elems}
    if len(tags) > 1:
        raise TypeError("mixed ring tags in one computation")
    return tags.pop()


@dataclass(frozen=True)
class RatioExpr:
    """Quotient ``num / den`` of two ring elements, kept unreduced.

    Equality of two ratios is decided by cross-multiplication
    (see :func:`ratio_equal`), so no gcd is ever needed.
    """

    num: RingElem
    den: RingElem

    def __post_init__(self):
        _check_tags([self.num, self.den])
        if self.den.is_zero():
            raise ZeroDivisionError("RatioExpr with zero denominator")

    @classmethod
    def of(cls, e: RingElem) -> "RatioExpr":
        return cls(e, _one_like(e))

    @classmethod
    def const(cls, value, like: RingElem) -> "RatioExpr":
        return cls(like.__class__.const(value), _one_like(like))

    @property
    def tag(self) -> str:
        return ring_tag(self.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatioExpr.const(other, self.num)
        if self.den == other.den:
            return RatioExpr(self.num + other.num, self.den)
        return RatioExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatioExpr(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatioExpr.const(other, self.num)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatioExpr(self.num * other, self.den)
        if not isinstance(other, RatioExpr):
            other = RatioExpr.of(other)
        return RatioExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def derive(self) -> "RatioExpr":
        n, d = self.num, self.den
        if d.is_constant():
            return RatioExpr(n.derive(), d)
        return RatioExpr(n.derive() * d - n * d.derive(), d * d)

    def second_derivative(self) -> "RatioExpr":
        """``(n/d)''`` over ``d**3`` (one power lower than differentiating twice)."""
        n, d = self.num, self.den
        if d.is_constant():
            return RatioExpr(n.derive().derive(), d)
        n1, d1 = n.derive(), d.derive()
        n2, d2 = n1.derive(), d1.derive()
        num = n2 * d * d - 2 * n1 * d1 * d - n * d2 * d + 2 * n * d1 * d1
        return RatioExpr(num, d * d * d)

    def as_constant(self) -> Fraction | None:
        """Rational value if the ratio is a constant function, else None."""
        if self.num.is_zero():
            return Fraction(0)
        # num = r * den for a constant r; read r off a nonzero coefficient
        r = _leading_ratio(self.num, self.den)
        if r is not None and self.num == self.den * r:
            return r
        return None

    def __call__(self, x) -> float:
        return ring_eval(self.num, x) / ring_eval(self.den, x)

    def to_str(self) -> str:
        return f"({self.num.to_str()}) / ({self.den.to_str()})"


def _leading_ratio(a: RingElem, b: RingElem) -> Fraction | None:
    if isinstance(a, TrigPoly):
        for pa, pb in ((a.even, b.even), (a.odd, b.odd)):
            if not pb.is_zero():
                return pa.coeff(pb.degree) / pb.lc if pa.degree == pb.degree else None
        return None
    if a.degree != b.degree:
        return None
    return a.lc / b.lc


@dataclass(frozen=True)
class WronskianMatrix:
    """Derivative matrix ``M[i][j] = d^i/dx^i cols[j]``."""

    columns: tuple

    def __post_init__(self):
        if not self.columns:
            raise ValueError("empty Wronskian")
        _check_tags(self.columns)

    @property
    def size(self) -> int:
        return len(self.columns)

    def rows(self) -> list:
        n = self.size
        table = []
        current = list(self.columns)
        for _ in range(n):
            table.append(current)
            current = [e.derive() for e in current]
        return table


def bareiss_det(matrix: list) -> RingElem:
    """Determinant of a square matrix of ring elements (fraction-free)."""
    m = [list(row) for row in matrix]
    n = len(m)
    one = _one_like(m[0][0])
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                if mik.is_zero():
                    val = pivot * row_i[j]
                else:
                    val = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = val if prev is one else val.exact_div(prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def wronskian(cols: Sequence[RingElem]) -> RingElem:
    """Exact Wronskian ``W(cols | x)`` (column order as given)."""
    if not cols:
        raise ValueError("empty Wronskian")
    matrix = WronskianMatrix(tuple(cols))
    return bareiss_det(matrix.rows())


_FREE_FAMILY = SeedSpec(SeedKind.K_DERIV, 0)


def generalized_wronskian(base: SeedSpec, deriv_orders: Sequence[int],
                          extra: RingElem | None = None) -> RingElem:
    """Matveev-type Wronskian of spectral-parameter derivatives of a seed family.

    Only the free-particle family ``sin(kappa x)/kappa`` expanded at
    ``kappa = 0`` is supported; ``base`` must be ``SeedSpec.k_deriv(0)``.
    Column ``j`` is ``d^{i_j}/dkappa^{i_j}`` of the family at ``kappa = 0``,
    a polynomial in ``x``.  ``extra`` is appended as the last column.
    """
    if base != _FREE_FAMILY:
        raise ValueError("unsupported base family: only sin(kx)/k at k0=0 is implemented")
    orders = list(deriv_orders)
    if not orders or orders[0] != 0 or any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("deriv_orders must be strictly increasing and start at 0")
    cols: list = [k_derivative_column(i) for i in orders]
    if extra is not None:
        if ring_tag(extra) != "poly":
            raise TypeError("extra column must live in the polynomial ring; "
                            "use bessel.rayleigh_wronskian_state for sin(kx)/k")
        cols.append(extra)
    return wronskian(cols)


def potential_from_wronskian(w: RingElem) -> RatioExpr:
    """``-2 (ln w)''`` as ``-2 (w'' w - w'^2) / w^2``."""
    if w.is_zero():
        raise ValueError("potential of a zero Wronskian")
    w1 = w.derive()
    num = (w1.derive() * w - w1 * w1) * (-2)
    return RatioExpr(num, w * w)


def ratio_equal(a: RatioExpr, b: RatioExpr) -> bool:
    if a.tag != b.tag:
        raise TypeError("mixed ring tags in ratio comparison")
    return (a.num * b.den - b.num * a.den).is_zero()
