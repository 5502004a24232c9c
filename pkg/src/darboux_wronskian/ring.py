"""
Exact rings for Wronskian computations.

Two rings are provided:

* :class:`RatPoly` -- polynomials in one variable with rational coefficients.
  Used directly for polynomial seeds (``x, x**3, ...``) and as the coefficient
  ring of trigonometric elements.
* :class:`TrigPoly` -- elements of ``Q[c, s] / (s**2 + c**2 - 1)`` with
  ``c = cos x`` and ``s = sin x``, stored in the canonical form
  ``P(c) + s * Q(c)``.

Both classes are immutable and share the same small protocol (arithmetic,
``derive``, ``exact_div``, ``conj``/``norm``) so the Wronskian engine can work
on either.  :class:`RingFraction` is the gcd-normalised fraction field used by
the stepwise Darboux route.

Coefficients are :class:`fractions.Fraction` at the API boundary; internally a
``RatPoly`` keeps integer numerators over one shared positive denominator,
which keeps the inner loops on Python ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import mpmath

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

BigRational = Fraction

__all__ = [
    "BigRational",
    "RatPoly",
    "TrigPoly",
    "RingElem",
    "RingFraction",
    "ring_tag",
    "trig_expand",
    "ring_derive",
    "ring_eval",
    "ring_eval_mp",
    "poly_gcd",
]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _conv(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


class RatPoly:
    """Polynomial with exact rational coefficients, lowest degree first.

    The zero polynomial has degree -1.

    Examples
    --------
    >>> p = RatPoly([0, 0, 0, 1])          # x**3
    >>> p.derive()
    RatPoly('3*x^2')
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        fr = [_to_fraction(c) for c in coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
        num = [f.numerator * (den // f.denominator) for f in fr]
        self._set(num, den)

    def _set(self, num: list, den: int) -> None:
        _strip(num)
        if not num:
            self._num, self._den = (), 1
        else:
            if den < 0:
                num = [-a for a in num]
                den = -den
            g = math.gcd(den, *num)
            if g != 1:
                num = [a // g for a in num]
                den //= g
            self._num, self._den = tuple(num), den
        self._hash = None

    @classmethod
    def _raw(cls, num: list, den: int = 1) -> "RatPoly":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def const(cls, value) -> "RatPoly":
        f = _to_fraction(value)
        return cls._raw([f.numerator], f.denominator)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RatPoly":
        f = _to_fraction(coeff)
        return cls._raw([0] * degree + [f.numerator], f.denominator)

    @classmethod
    def x(cls) -> "RatPoly":
        return cls.monomial(1)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def degree(self) -> int:
        return len(self._num) - 1

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    @property
    def lc(self) -> Fraction:
        return self.coeff(self.degree) if self._num else Fraction(0)

    def max_bits(self) -> int:
        """Largest bit length among reduced numerators and denominators."""
        return max((max(f.numerator.bit_length(), f.denominator.bit_length())
                    for f in self.coeffs), default=0)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._num, other._num
        da, db = self._den, other._den
        n = max(len(a), len(b))
        out = [0] * n
        for i, v in enumerate(a):
            out[i] = v * db
        for i, v in enumerate(b):
            out[i] += v * da
        return RatPoly._raw(out, da * db)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._raw([-a for a in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return RatPoly._raw([a * f.numerator for a in self._num], self._den * f.denominator)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return RatPoly._raw(_conv(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = RatPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly.const(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatPoly", self._num, self._den))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    def derive(self) -> "RatPoly":
        return RatPoly._raw([i * a for i, a in enumerate(self._num)][1:], self._den)

    def divmod(self, other: "RatPoly") -> tuple:
        """Quotient and remainder over Q (pseudo-division on integer numerators)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a, b = list(self._num), other._num
        db, lb = len(b) - 1, b[-1]
        if len(a) - 1 < db:
            return RatPoly(), self
        k = len(a) - 1 - db + 1
        q = [0] * k
        # lb**k * a = q * b + r with integer q, r
        for i in range(len(a) - 1, db - 1, -1):
            t = a[i]
            q = [qq * lb for qq in q]
            a = [v * lb for v in a]
            pos = i - db
            q[pos] += t
            for j, bj in enumerate(b):
                a[pos + j] -= t * bj
        scale = lb ** k
        quot = RatPoly._raw(q, scale) * Fraction(other._den, self._den)
        rem = RatPoly._raw(a[:db], scale * self._den)
        return quot, rem

    def exact_div(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def conj(self) -> "RatPoly":
        return self

    def norm(self) -> "RatPoly":
        return self

    def primitive(self) -> tuple:
        """Return (content, integer coefficient list) with self = content * poly."""
        if not self._num:
            return Fraction(0), []
        g = math.gcd(*self._num)
        if self._num[-1] < 0:
            g = -g
        return Fraction(g, self._den), [a // g for a in self._num]

    def monic(self) -> "RatPoly":
        if not self._num:
            return self
        return RatPoly._raw(list(self._num), self._num[-1])

    def compose_scale(self, factor) -> "RatPoly":
        """p(factor * x)."""
        f = _to_fraction(factor)
        return RatPoly([c * f ** i for i, c in enumerate(self.coeffs)])

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        if not self._num:
            return x * 0
        if isinstance(x, (int, Fraction)):
            acc = 0
            for a in reversed(self._num):
                acc = acc * x + a
            return Fraction(acc, self._den)
        acc = 0.0
        for a in reversed(self._num):
            acc = acc * x + float(a)
        return acc / float(self._den)

    def eval_mp(self, x):
        acc = mpmath.mpf(0)
        for a in reversed(self._num):
            acc = acc * x + a
        return acc / self._den

    # -- printing ---------------------------------------------------------

    def to_str(self, var: str = "x") -> str:
        if not self._num:
            return "0"
        terms = []
        for i in range(len(self._num) - 1, -1, -1):
            c = Fraction(self._num[i], self._den)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"RatPoly('{self.to_str()}')"


def poly_gcd(*polys: RatPoly) -> RatPoly:
    """Monic gcd over Q of the given polynomials (zero entries ignored)."""
    parts = [p.primitive()[1] for p in polys if not p.is_zero()]
    if not parts:
        return RatPoly()
    g = [ZZ(a) for a in reversed(parts[0])]
    for other in parts[1:]:
        if len(g) == 1:
            break
        g = dup_gcd(g, [ZZ(a) for a in reversed(other)], ZZ)
    return RatPoly._raw([int(a) for a in reversed(g)], 1).monic()


# c**2 and 1 - c**2 as constants of the trig ring
_ONE_MINUS_C2 = RatPoly([1, 0, -1])


class TrigPoly:
    """Element ``even(c) + s * odd(c)`` of ``Q[c, s]/(s^2 + c^2 - 1)``.

    ``c`` stands for ``cos x`` and ``s`` for ``sin x``.  Every instance is
    canonical: ``s**2`` never appears because products are reduced on the fly.
    """

    __slots__ = ("even", "odd", "_hash")

    def __init__(self, even: RatPoly | None = None, odd: RatPoly | None = None):
        self.even = even if even is not None else RatPoly()
        self.odd = odd if odd is not None else RatPoly()
        self._hash = None

    @classmethod
    def const(cls, value) -> "TrigPoly":
        return cls(RatPoly.const(value))

    @classmethod
    def c(cls) -> "TrigPoly":
        return cls(RatPoly.x())

    @classmethod
    def s(cls) -> "TrigPoly":
        return cls(RatPoly(), RatPoly.const(1))

    @classmethod
    def from_bivariate(cls, terms: dict) -> "TrigPoly":
        """Canonicalise ``sum coeff * c**i * s**j`` given as ``{(i, j): coeff}``."""
        even, odd = RatPoly(), RatPoly()
        for (i, j), coeff in terms.items():
            mono = RatPoly.monomial(i, coeff) * _ONE_MINUS_C2 ** (j // 2)
            if j % 2:
                odd = odd + mono
            else:
                even = even + mono
        return cls(even, odd)

    def to_bivariate(self) -> dict:
        out = {}
        for i, v in enumerate(self.even.coeffs):
            if v:
                out[(i, 0)] = v
        for i, v in enumerate(self.odd.coeffs):
            if v:
                out[(i, 1)] = v
        return out

    def canonical(self) -> "TrigPoly":
        return TrigPoly.from_bivariate(self.to_bivariate())

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def is_constant(self) -> bool:
        return self.odd.is_zero() and self.even.is_constant()

    @property
    def degree(self) -> int:
        """Total degree in (c, s)."""
        return max(self.even.degree, self.odd.degree + 1 if not self.odd.is_zero() else -1)

    def max_bits(self) -> int:
        return max(self.even.max_bits(), self.odd.max_bits())

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TrigPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TrigPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TrigPoly(self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(-self.even, -self.odd)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TrigPoly(self.even - other.even, self.odd - other.odd)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TrigPoly(self.even * other, self.odd * other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        a0, a1, b0, b1 = self.even, self.odd, other.even, other.odd
        even = a0 * b0
        if not a1.is_zero() and not b1.is_zero():
            even = even + _ONE_MINUS_C2 * (a1 * b1)
        return TrigPoly(even, a0 * b1 + a1 * b0)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = TrigPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TrigPoly.const(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("TrigPoly", self.even, self.odd))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def derive(self) -> "TrigPoly":
        # d/dx with dc/dx = -s, ds/dx = c, then s^2 -> 1 - c^2
        p, q = self.even, self.odd
        return TrigPoly(RatPoly.x() * q - _ONE_MINUS_C2 * q.derive(), -p.derive())

    def conj(self) -> "TrigPoly":
        return TrigPoly(self.even, -self.odd)

    def norm(self) -> RatPoly:
        """``self * conj(self)``, an element of Q[c]."""
        return self.even * self.even - _ONE_MINUS_C2 * (self.odd * self.odd)

    def exact_div(self, other) -> "TrigPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = 1 / Fraction(other)
            return TrigPoly(self.even * inv, self.odd * inv)
        if other.is_zero():
            raise ZeroDivisionError("division by zero ring element")
        if other.odd.is_zero():
            d = other.even
            return TrigPoly(self.even.exact_div(d), self.odd.exact_div(d))
        num = self * other.conj()
        d = other.norm()
        return TrigPoly(num.even.exact_div(d), num.odd.exact_div(d))

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, mpmath.mpf):
            return self.eval_mp(x)
        import numpy as np

        c, s = np.cos(x), np.sin(x)
        return self.even(c) + s * self.odd(c)

    def eval_mp(self, x):
        c, s = mpmath.cos(x), mpmath.sin(x)
        return self.even.eval_mp(c) + s * self.odd.eval_mp(c)

    # -- printing ---------------------------------------------------------

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if not self.even.is_zero():
            parts.append(self.even.to_str("c"))
        if not self.odd.is_zero():
            parts.append(f"s*({self.odd.to_str('c')})")
        return " + ".join(parts)

    def __repr__(self):
        return f"TrigPoly('{self.to_str()}')"


RingElem = Union[RatPoly, TrigPoly]


def ring_tag(e: RingElem) -> str:
    if isinstance(e, TrigPoly):
        return "trig"
    if isinstance(e, RatPoly):
        return "poly"
    raise TypeError(f"not a ring element: {type(e).__name__}")


def trig_expand(kind: str, k: int) -> TrigPoly:
    """Realise ``sin(kx)`` or ``cos(kx)`` as ``s*U_{k-1}(c)`` or ``T_k(c)``."""
    if kind not in ("sin", "cos"):
        raise ValueError(f"unknown kind {kind!r}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if kind == "sin" and k == 0:
        raise ValueError("sin(0*x) is the zero function")
    c = RatPoly.x()
    if kind == "cos":
        prev, cur = RatPoly.const(1), c
        if k == 0:
            return TrigPoly(prev)
        for _ in range(k - 1):
            prev, cur = cur, 2 * c * cur - prev
        return TrigPoly(cur)
    prev, cur = RatPoly.const(1), 2 * c
    if k == 1:
        return TrigPoly(RatPoly(), prev)
    for _ in range(k - 2):
        prev, cur = cur, 2 * c * cur - prev
    return TrigPoly(RatPoly(), cur)


def ring_derive(e: RingElem) -> RingElem:
    return e.derive()


def _work_dps(e: RingElem) -> int:
    return 30 + int(0.31 * e.max_bits()) + 2 * max(e.degree, 0)


def ring_eval_mp(e: RingElem, x, dps: int | None = None):
    """Evaluate at ``x`` with mpmath, returning an ``mpf``.

    ``dps`` raises the working precision above the default sized to the
    coefficients; it is needed close to high-order zeros where the terms
    cancel to many digits.
    """
    with mpmath.workdps(max(_work_dps(e), dps or 0)):
        xm = mpmath.mpf(x)
        val = e.eval_mp(xm)
    return +val


def ring_eval(e: RingElem, x) -> float:
    """Evaluate ``e`` at real ``x`` (trig elements use c=cos x, s=sin x).

    Evaluation is carried out in extended precision sized to the coefficient
    bit length, so cancellation in large Wronskians does not leak into the
    returned double.
    """
    return float(ring_eval_mp(e, x))


class RingFraction:
    """Fraction-field element ``num / den`` with ``den`` in the base ring Q[c] (or Q[x]).

    Instances are reduced: ``gcd(num parts, den) == 1`` and ``den`` is monic.
    Trigonometric denominators are moved into Q[c] with the conjugate, which
    keeps the gcd inside a Euclidean ring.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: RingElem, den: RatPoly | None = None):
        if den is None:
            den = RatPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if isinstance(num, TrigPoly):
            g = poly_gcd(num.even, num.odd, den)
            if not g.is_constant():
                num = TrigPoly(num.even.exact_div(g), num.odd.exact_div(g))
                den = den.exact_div(g)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def of(cls, e: RingElem) -> "RingFraction":
        return cls(e)

    def _lift(self, other):
        if isinstance(other, RingFraction):
            return other
        if isinstance(other, (RatPoly, TrigPoly)):
            return RingFraction(other)
        if isinstance(other, (int, Fraction)):
            one = self.num.__class__.const(other)
            return RingFraction(one)
        return NotImplemented

    def _den_as_elem(self, den: RatPoly) -> RingElem:
        return TrigPoly(den) if isinstance(self.num, TrigPoly) else den

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        num = self.num * self._den_as_elem(other.den) + other.num * self._den_as_elem(self.den)
        return RingFraction(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RingFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RingFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RingFraction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        norm = self.num.norm()
        return RingFraction(self.num.conj() * self._den_as_elem(self.den), norm)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def derive(self) -> "RingFraction":
        d = self._den_as_elem(self.den)
        num = self.num.derive() * d - self.num * d.derive()
        return RingFraction(num, self.den * self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def constant_value(self) -> Fraction | None:
        """The rational value if this fraction is a constant, else None."""
        if self.num.is_constant() and self.den.is_constant():
            num = self.num.even if isinstance(self.num, TrigPoly) else self.num
            return num.coeff(0) / self.den.coeff(0)
        return None

    def __repr__(self):
        return f"RingFraction({self.num!r} / {self.den!r})"
