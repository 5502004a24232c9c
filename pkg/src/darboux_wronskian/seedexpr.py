"""
Surface syntax for seed functions.

::

    seed     := [ rational "*" ] ( "sin(" int "x)" | "cos(" int "x)" | "x^" int )
    rational := int [ "/" int ]

Whitespace is not part of the grammar.  ``sin(1x)`` is the canonical spelling
of ``sin(x)``; the pretty-printer always emits the explicit integer so that
printing and re-parsing is the identity on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .ring import RatPoly, RingElem, trig_expand
from .seeds import SeedSpec

__all__ = [
    "SinNode",
    "CosNode",
    "PowNode",
    "ScaleNode",
    "SeedExprAst",
    "SeedSyntaxError",
    "SeedSemanticError",
    "parse_seed",
    "pretty",
    "to_ring",
    "to_seedspec",
]


@dataclass(frozen=True)
class SinNode:
    k: int


@dataclass(frozen=True)
class CosNode:
    k: int


@dataclass(frozen=True)
class PowNode:
    e: int


@dataclass(frozen=True)
class ScaleNode:
    scale: Fraction
    child: Union[SinNode, CosNode, PowNode]


SeedExprAst = Union[SinNode, CosNode, PowNode, ScaleNode]


class SeedSyntaxError(SyntaxError):
    """Malformed seed text; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at byte {offset}: {text!r}")
        self.text = text
        self.offset = offset


class SeedSemanticError(ValueError):
    """Grammatical input with an invalid parameter (``sin(0x)``, zero scale...)."""


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise SeedSyntaxError(message, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.text[start:self.pos])

    def atom(self):
        start = self.pos
        if self.text.startswith("sin(", self.pos) or self.text.startswith("cos(", self.pos):
            kind = self.text[self.pos:self.pos + 3]
            self.pos += 4
            k = self.integer()
            self.expect("x)")
            if k < 1:
                raise SeedSemanticError(f"{kind}({k}x) at byte {start}: wavenumber must be positive")
            return SinNode(k) if kind == "sin" else CosNode(k)
        if self.text.startswith("x^", self.pos):
            self.pos += 2
            e = self.integer()
            if e < 1:
                raise SeedSemanticError(f"x^{e} at byte {start}: exponent must be positive")
            return PowNode(e)
        self.fail("expected 'sin(', 'cos(' or 'x^'")

    def seed(self):
        if self.peek().isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    raise SeedSemanticError("zero denominator in scale")
            self.expect("*")
            scale = Fraction(num, den)
            if scale == 0:
                raise SeedSemanticError("scale must be nonzero")
            node = ScaleNode(scale, self.atom())
        else:
            node = self.atom()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return node


def parse_seed(text: str) -> SeedExprAst:
    """Parse one seed expression, e.g. ``"2/3*sin(2x)"``."""
    return _Parser(text).seed()


def pretty(ast: SeedExprAst) -> str:
    if isinstance(ast, SinNode):
        return f"sin({ast.k}x)"
    if isinstance(ast, CosNode):
        return f"cos({ast.k}x)"
    if isinstance(ast, PowNode):
        return f"x^{ast.e}"
    s = ast.scale
    prefix = str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
    return f"{prefix}*{pretty(ast.child)}"


def to_seedspec(ast: SeedExprAst) -> SeedSpec:
    """Unscaled seed; a scale factor never changes the transformed potential."""
    if isinstance(ast, ScaleNode):
        ast = ast.child
    if isinstance(ast, SinNode):
        return SeedSpec.sin(ast.k)
    if isinstance(ast, CosNode):
        return SeedSpec.cos(ast.k)
    return SeedSpec.power(ast.e)


def to_ring(ast: SeedExprAst) -> RingElem:
    if isinstance(ast, ScaleNode):
        return _atom_ring(ast.child) * ast.scale
    return _atom_ring(ast)


def _atom_ring(ast) -> RingElem:
    if isinstance(ast, SinNode):
        return trig_expand("sin", ast.k)
    if isinstance(ast, CosNode):
        return trig_expand("cos", ast.k)
    return RatPoly.monomial(ast.e)
