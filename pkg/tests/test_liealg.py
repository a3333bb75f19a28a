"""Tests for Lie superalgebras and their validation."""

from fractions import Fraction

import pytest
import voluptuous as vol
from diffrealize.const import ODD
from diffrealize.errors import AlgebraValidationError, DomainError
from diffrealize.liealg import (
    basis_vector,
    build_gl,
    build_sl,
    load_custom,
    span_vectors,
    validate,
)

from .const import ANTISYMMETRY_BROKEN_SPEC, BROKEN_GL11_SPEC, GL11_SPEC


def test_build_gl():
    gl2 = build_gl(2)
    assert gl2.name == "gl(2)"
    assert gl2.labels == ["E_{11}", "E_{12}", "E_{21}", "E_{22}"]
    assert [gl2.degree(i) for i in range(gl2.dim)] == [0, 1, -1, 0]
    e12 = gl2.label_index("E_{12}")
    e21 = gl2.label_index("E_{21}")
    assert gl2.bracket_basis(e12, e21) == {
        gl2.label_index("E_{11}"): 1,
        gl2.label_index("E_{22}"): -1,
    }
    ad = gl2.ad_matrix(e12)
    assert ad[e21] == {gl2.label_index("E_{11}"): 1, gl2.label_index("E_{22}"): -1}
    assert ad[gl2.label_index("E_{11}")] == {e12: -1}
    assert e12 not in ad
    assert gl2.depth() == 1
    assert build_gl(3).depth() == 2
    assert "E_{1,10}" in build_gl(10).labels
    assert validate(build_gl(3)).passed

    with pytest.raises(DomainError) as e:
        _ = build_gl(0)
    assert "gl(n) needs n >= 1" in str(e)


def test_build_sl():
    sl3 = build_sl(3)
    assert sl3.dim == 8
    assert sl3.labels[-2:] == ["H_{1}", "H_{2}"]
    assert sl3.homogeneous(-2) == [sl3.label_index("E_{31}")]
    assert validate(sl3).passed

    sl2 = build_sl(2)
    e12 = sl2.label_index("E_{12}")
    e21 = sl2.label_index("E_{21}")
    h1 = sl2.label_index("H_{1}")
    assert sl2.bracket_basis(e12, e21) == {h1: 1}
    assert sl2.bracket_basis(h1, e12) == {e12: 2}

    with pytest.raises(DomainError) as e:
        _ = build_sl(1)
    assert "sl(n) needs n >= 2" in str(e)


def test_label_lookup(caplog):
    gl2 = build_gl(2)
    caplog.clear()
    with pytest.raises(DomainError) as e:
        _ = gl2.label_index("E_{33}")
    assert "unknown basis element 'E_{33}' in gl(2)" in str(e)
    assert "unknown basis element" in caplog.text

    vectors = span_vectors(gl2, ["E_{21}", {"E_{11}": 1, "E_{22}": "-1/2"}])
    assert vectors == [basis_vector(2), {0: Fraction(1), 3: Fraction(-1, 2)}]


def test_format():
    gl2 = build_gl(2)
    assert gl2.format({0: Fraction(1), 3: Fraction(-2)}) == "E_{11} - 2*E_{22}"
    assert gl2.format({3: Fraction(-1)}) == "-E_{22}"
    assert gl2.format({1: Fraction(1, 2)}) == "1/2*E_{12}"
    assert gl2.format({}) == "0"


def test_load_custom(gl11):
    assert gl11.name == "gl(1|1)"
    assert gl11.is_super
    assert gl11.is_graded
    psi_minus = gl11.label_index("psi-")
    psi_plus = gl11.label_index("psi+")
    e11 = gl11.label_index("E11")
    e22 = gl11.label_index("E22")
    assert gl11.parity(psi_minus) == ODD
    # odd-odd brackets are symmetric
    assert gl11.bracket_basis(psi_minus, psi_plus) == {e11: 1, e22: 1}
    assert gl11.bracket_basis(psi_minus, e11) == {psi_minus: 1}
    assert gl11.vector_parity({psi_minus: Fraction(1)}) == ODD

    with pytest.raises(DomainError) as e:
        _ = gl11.vector_parity({psi_minus: Fraction(1), e11: Fraction(1)})
    assert "is not homogeneous" in str(e)


def test_to_spec(gl11):
    reloaded = load_custom(gl11.to_spec())
    assert reloaded.labels == gl11.labels
    assert list(reloaded.structure_table()) == list(gl11.structure_table())

    gl2 = build_gl(2)
    reloaded = load_custom(gl2.to_spec())
    assert reloaded.family == gl2.family
    assert reloaded.rank == 2
    assert list(reloaded.structure_table()) == list(gl2.structure_table())


def test_jacobi_violation(caplog):
    caplog.clear()
    with pytest.raises(AlgebraValidationError) as e:
        _ = load_custom(BROKEN_GL11_SPEC)
    assert "gl(1|1) is not a Lie superalgebra: super-Jacobi fails" in str(e)
    assert "is not a Lie superalgebra" in caplog.text
    report = e.value.report
    assert not report.passed
    assert {v.kind for v in report.violations} == {"super-Jacobi"}
    assert report.pairs_checked == 10
    assert report.triples_checked == 20


def test_antisymmetry_violation():
    with pytest.raises(AlgebraValidationError) as e:
        _ = load_custom(ANTISYMMETRY_BROKEN_SPEC)
    first = e.value.report.first()
    assert first.kind == "antisymmetry"
    assert first.items == ("E11", "psi+")
    assert "antisymmetry fails for (E11, psi+): psi+ != -psi+" in str(e)


def test_with_bracket(gl11):
    e22 = gl11.label_index("E22")
    psi_plus = gl11.label_index("psi+")
    broken = gl11.with_bracket(e22, psi_plus, {psi_plus: Fraction(1)})
    assert broken.bracket_basis(psi_plus, e22) == {psi_plus: -1}
    assert not validate(broken).passed
    assert validate(gl11).passed


def test_grading_violation(gl11):
    e11 = gl11.label_index("E11")
    psi_plus = gl11.label_index("psi+")
    psi_minus = gl11.label_index("psi-")
    shifted = gl11.with_bracket(e11, psi_plus, {psi_minus: Fraction(1)})
    kinds = {v.kind for v in validate(shifted).violations}
    assert "grading" in kinds


def test_custom_input_errors():
    spec = {**GL11_SPEC, "brackets": [{"left": "psi+", "right": "chi", "result": {}}]}
    with pytest.raises(AlgebraValidationError) as e:
        _ = load_custom(spec)
    assert "unknown basis element 'chi'" in str(e)

    twice = {**GL11_SPEC, "brackets": [GL11_SPEC["brackets"][0]] * 2}
    with pytest.raises(AlgebraValidationError) as e:
        _ = load_custom(twice)
    assert "bracket [psi+, psi-] given twice" in str(e)

    with pytest.raises(vol.Invalid):
        _ = load_custom({"name": "empty"})
    with pytest.raises(vol.Invalid):
        _ = load_custom({"name": "bad", "basis": [{"label": "x", "parity": "weird"}]})
