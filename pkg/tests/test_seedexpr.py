from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux_wronskian.ring import RatPoly, trig_expand
from darboux_wronskian.seedexpr import (CosNode, PowNode, ScaleNode, SeedSemanticError, SeedSyntaxError, SinNode,
                                        parse_seed, pretty, to_ring, to_seedspec)
from darboux_wronskian.seeds import SeedSpec

atoms = st.one_of(
    st.builds(SinNode, st.integers(1, 10 ** 6)),
    st.builds(CosNode, st.integers(1, 10 ** 6)),
    st.builds(PowNode, st.integers(1, 10 ** 6)),
)
scales = st.builds(Fraction, st.integers(1, 10 ** 9), st.integers(1, 10 ** 9))
asts = st.one_of(atoms, st.builds(ScaleNode, scales, atoms))


@st.composite
def seed_texts(draw):
    """Grammar-valid strings, including leading zeros and unreduced fractions."""
    def integer(lo):
        value = draw(st.integers(lo, 10 ** 5))
        return "0" * draw(st.integers(0, 2)) + str(value)

    atom = draw(st.sampled_from(["sin", "cos", "pow"]))
    body = f"x^{integer(1)}" if atom == "pow" else f"{atom}({integer(1)}x)"
    if draw(st.booleans()):
        num = integer(1)
        prefix = num + (f"/{integer(1)}" if draw(st.booleans()) else "")
        return f"{prefix}*{body}"
    return body


def test_examples():
    assert parse_seed("sin(3x)") == SinNode(3)
    assert parse_seed("x^5") == PowNode(5)
    assert parse_seed("2/3*sin(2x)") == ScaleNode(Fraction(2, 3), SinNode(2))
    assert parse_seed("cos(1x)") == CosNode(1)


@pytest.mark.parametrize("text,offset", [
    ("sin(x)", 4), ("sin(3y)", 5), ("tan(2x)", 0), ("2*", 2), ("sin(3x) ", 7),
    ("x^", 2), ("", 0), ("2/*x^3", 2), ("-1*x^3", 0),
])
def test_syntax_errors_carry_offset(text, offset):
    with pytest.raises(SeedSyntaxError) as info:
        parse_seed(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["sin(0x)", "cos(0x)", "x^0", "0*sin(2x)", "1/0*x^3"])
def test_semantic_errors(text):
    with pytest.raises(SeedSemanticError):
        parse_seed(text)


@given(asts)
def test_pretty_parse_roundtrip_from_ast(ast):
    assert parse_seed(pretty(ast)) == ast


@given(seed_texts())
def test_parse_pretty_parse_roundtrip(text):
    ast = parse_seed(text)
    assert parse_seed(pretty(ast)) == ast


def test_conversion_to_ring_and_seed():
    assert to_ring(parse_seed("3*sin(2x)")) == trig_expand("sin", 2) * 3
    assert to_ring(parse_seed("x^3")) == RatPoly.monomial(3)
    assert to_seedspec(parse_seed("1/2*cos(4x)")) == SeedSpec.cos(4)
    assert to_seedspec(parse_seed("x^5")) == SeedSpec.power(5)
