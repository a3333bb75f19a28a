"""Tests for TeX and structured output."""

import json
from fractions import Fraction

import pytest
from diffrealize.const import MODULE_COINDUCED, MODULE_INDUCED, STRUCTURED_FORMAT_VERSION
from diffrealize.emit import (
    emit_structured,
    emit_tex,
    monomial_tex,
    operator_tex,
    parse_structured,
    rational_tex,
)
from diffrealize.errors import ConfigError
from diffrealize.realize import build_realization, compose, make_adjoint, make_character
from diffrealize.superpoly import VariableSet
from diffrealize.verify import phi_h_table

from .const import INDUCED_TRUNCATION, SL2_E, SL2_F, SL2_H, SL2_TEX_E, SL2_TEX_F, SL2_TEX_H


@pytest.fixture
def sl2_realization(sl2_decomp, sl2_character):
    return build_realization(MODULE_COINDUCED, sl2_character, phi_h_table(sl2_decomp))


def test_fragments():
    variables = VariableSet([0, 0], ["X", "Y"])
    assert monomial_tex(variables, (0, 0, 1)) == "X^{2}Y"
    assert monomial_tex(variables, ()) == ""
    assert rational_tex(Fraction(3)) == "3"
    assert rational_tex(Fraction(-1, 2)) == "\\frac{-1}{2}"


def test_tex_sl2(sl2_realization):
    operators = sl2_realization.operators
    assert operator_tex(operators[SL2_E]) == SL2_TEX_E
    assert operator_tex(operators[SL2_H]) == SL2_TEX_H
    assert operator_tex(operators[SL2_F]) == SL2_TEX_F

    composed = compose(operators[SL2_F], operators[SL2_H])
    assert operator_tex(composed) == "2X\\partial_{X}^{2} + (\\lambda + 2) \\partial_{X}"

    lines = emit_tex(sl2_realization).splitlines()
    assert lines == [
        "% coinduced module of A_1, character representation",
        "% A_1: g_- = <f>, h = <e, h>",
        f"$$T(e) = {SL2_TEX_E}$$",
        f"$$T(h) = {SL2_TEX_H}$$",
        f"$$T(f) = {SL2_TEX_F}$$",
    ]


def test_tex_numeric_weight(sl2_decomp):
    rep = make_character(sl2_decomp, [3])
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(sl2_decomp))
    assert operator_tex(realization.operators[SL2_E]) == "-X^{2}\\partial_{X} - 3X"
    assert operator_tex(realization.operators[SL2_H]) == "2X\\partial_{X} + 3"


def test_tex_induced(sl2_decomp, sl2_character):
    realization = build_realization(
        MODULE_INDUCED, sl2_character, phi_h_table(sl2_decomp), INDUCED_TRUNCATION
    )
    text = emit_tex(realization)
    assert text.startswith("% induced module of A_1, character representation\n")
    assert f"% truncated at degree {INDUCED_TRUNCATION}\n" in text
    assert "$$I(e) = -f\\partial_{f}^{2} + \\lambda \\partial_{f}$$" in text


def test_tex_matrix_units(gl2_decomp):
    rep = make_adjoint(gl2_decomp, "h")
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(gl2_decomp))
    text = emit_tex(realization)
    assert ", adjoint representation" in text
    assert "\\mathrm{E}_{" in text


def test_structured(sl2_realization, sl2_character):
    text = emit_structured(sl2_realization)
    document = json.loads(text)
    assert document["format_version"] == STRUCTURED_FORMAT_VERSION
    assert document["algebra"] == "A_1"
    assert document["module"] == "coinduced"
    assert document["variables"] == [{"name": "X", "parity": "even"}]
    assert [op["generator"] for op in document["operators"]] == ["e", "h", "f"]
    assert document["operators"][2]["terms"] == [
        {
            "monomial": [0],
            "matrix": [0, 0],
            "derivative": [1],
            "coefficient": [{"exponents": [0], "value": "1"}],
        }
    ]

    operators = parse_structured(text, sl2_character)
    for g, op in sl2_realization.operators.items():
        assert operators[g].terms == op.terms


def test_structured_errors(sl2_character):
    with pytest.raises(ConfigError) as e:
        _ = parse_structured("{}", sl2_character)
    assert "malformed structured operator document" in str(e)

    with pytest.raises(ConfigError) as e:
        _ = parse_structured("not json", sl2_character)
    assert "malformed structured operator document" in str(e)

    with pytest.raises(ConfigError) as e:
        _ = parse_structured(json.dumps({"format_version": 99}), sl2_character)
    assert "unsupported structured format version 99" in str(e)
