"""Tests for representations of h and the realizing operators."""

from fractions import Fraction

import pytest
from diffrealize.const import MODULE_COINDUCED, MODULE_INDUCED, STATUS_FAIL
from diffrealize.errors import DomainError, RepresentationError, TruncationError
from diffrealize.realize import (
    WeightRing,
    apply,
    build_realization,
    character_support,
    coinduced_operator,
    compose,
    induced_operator,
    induced_variables,
    make_adjoint,
    make_character,
    make_custom,
    supercommutator,
)
from diffrealize.superpoly import SuperPoly
from diffrealize.verify import (
    check_duality,
    check_homomorphism,
    check_induced_oracle,
    phi_h_table,
)

from .const import (
    DUALITY_TRUNCATION,
    INDUCED_TRUNCATION,
    PBW_TRUNCATION,
    SL2_E,
    SL2_F,
    SL2_H,
    VERMA_DEGREES,
)

V = (0, 0)


def test_weight_ring():
    weights = WeightRing(2)
    assert weights.names == ("lambda_1", "lambda_2")
    value = weights.parse("lambda_1 + 1/2")
    assert value == weights.gen(0) + weights.scalar(Fraction(1, 2))
    assert weights.coefficients(value) == [((0, 0), Fraction(1, 2)), ((1, 0), Fraction(1))]
    assert weights.from_coefficients(weights.coefficients(value)) == value
    assert weights.constant_value(weights.scalar(3)) == 3
    assert weights.constant_value(weights.gen(1)) is None
    assert weights.constant_value(weights.zero) == 0

    with pytest.raises(RepresentationError) as e:
        _ = weights.parse("1/")
    assert "as a polynomial in lambda_1, lambda_2" in str(e)


def test_character_sl2(sl2_decomp, sl2_character):
    assert character_support(sl2_decomp) == [SL2_H]
    lam = sl2_character.weights.gen(0)
    assert sl2_character.matrices == {SL2_H: {V: lam}}
    assert sl2_character.dim == 1
    assert sl2_character.dual().matrices == {SL2_H: {V: -lam}}
    assert sl2_character.dual().labels == ("v^*",)

    fixed = make_character(sl2_decomp, [3])
    assert fixed.matrices == {SL2_H: {V: fixed.weights.scalar(3)}}
    zero = make_character(sl2_decomp, ["0"])
    assert zero.matrices == {}


def test_character_errors(sl2_decomp, caplog):
    caplog.clear()
    with pytest.raises(RepresentationError) as e:
        _ = make_character(sl2_decomp, [1, 2])
    assert "1 weight values expected for h, got 2" in str(e)
    assert "weight values expected" in caplog.text

    with pytest.raises(RepresentationError) as e:
        _ = make_character(sl2_decomp, values={"f": 1})
    assert "f is not in h" in str(e)


def test_character_gl11(gl11, gl11_decomp):
    support = character_support(gl11_decomp)
    assert support == [gl11.label_index("E11"), gl11.label_index("E22")]
    rep = make_character(gl11_decomp)
    assert rep.weights.names == ("lambda_1", "lambda_2")


def test_adjoint(sl2_decomp):
    on_h = make_adjoint(sl2_decomp, "h")
    assert on_h.labels == ("e", "h")
    two = on_h.weights.scalar(2)
    assert on_h.matrices[SL2_E] == {(0, 1): -two}
    assert on_h.matrices[SL2_H] == {(0, 0): two}
    on_g = make_adjoint(sl2_decomp)
    assert on_g.dim == 3
    assert not on_g.failures()

    with pytest.raises(DomainError) as e:
        _ = make_adjoint(sl2_decomp, "g_-")
    assert "adjoint target must be 'g' or 'h'" in str(e)


def test_custom_representation(sl2_decomp):
    rep = make_custom(sl2_decomp, {"dimension": 1, "matrices": {"h": [["lambda_1"]]}})
    assert rep.labels == ("v_{1}",)
    assert rep.matrices[SL2_H] == {V: rep.weights.gen(0)}

    with pytest.raises(RepresentationError) as e:
        _ = make_custom(sl2_decomp, {"dimension": 1, "matrices": {"e": [[1]], "h": [[1]]}})
    assert "not a representation of h: rho([e, h]) != [rho(e), rho(h)]" in str(e)

    with pytest.raises(RepresentationError) as e:
        _ = make_custom(sl2_decomp, {"dimension": 2, "matrices": {"h": [[1]]}})
    assert "matrix of h must be 2x2" in str(e)

    with pytest.raises(RepresentationError) as e:
        _ = make_custom(sl2_decomp, {"dimension": 1, "matrices": {"f": [[1]]}})
    assert "f is not in h" in str(e)

    with pytest.raises(RepresentationError) as e:
        _ = make_custom(sl2_decomp, {"dimension": 2, "labels": ["a"], "matrices": {}})
    assert "parities and labels must have length 2" in str(e)


def test_coinduced_sl2(sl2_decomp, sl2_character):
    weights = sl2_character.weights
    lam = weights.gen(0)
    one = weights.one
    table = phi_h_table(sl2_decomp)
    t_e = coinduced_operator(SL2_E, table[SL2_E], sl2_character)
    t_h = coinduced_operator(SL2_H, table[SL2_H], sl2_character)
    t_f = coinduced_operator(SL2_F, table[SL2_F], sl2_character)
    assert t_e.terms == {((0, 0), V, (0,)): -one, ((0,), V, ()): -lam}
    assert t_h.terms == {((0,), V, (0,)): 2 * one, ((), V, ()): lam}
    assert t_f.terms == {((), V, (0,)): one}
    assert t_f.order() == 1

    assert supercommutator(t_e, t_f) == t_h
    assert supercommutator(t_h, t_e) == t_e.scale(weights.scalar(2))

    # d o (2X d + lambda) = 2X d^2 + (2 + lambda) d
    assert compose(t_f, t_h).terms == {
        ((0,), V, (0, 0)): 2 * one,
        ((), V, (0,)): lam + 2 * one,
    }


def test_apply_coinduced(sl2_decomp, sl2_character):
    weights = sl2_character.weights
    table = phi_h_table(sl2_decomp)
    t_e = coinduced_operator(SL2_E, table[SL2_E], sl2_character)
    variables = t_e.variables
    x = SuperPoly(variables, {((0,), 0): weights.one})
    # (-X^2 d - lambda X) X = -(1 + lambda) X^2
    assert apply(t_e, x).terms == {((0, 0), 0): -weights.one - weights.gen(0)}

    with pytest.raises(TruncationError) as e:
        _ = apply(t_e, SuperPoly(variables, {((0,), 0): weights.one}, 1))
    assert "exceeds truncation 1" in str(e)


def test_coinduced_homomorphism_sl2(sl2_decomp, sl2_character):
    realization = build_realization(MODULE_COINDUCED, sl2_character, phi_h_table(sl2_decomp))
    assert sorted(realization.operators) == [SL2_E, SL2_H, SL2_F]
    assert check_homomorphism(realization).passed

    realization.operators[SL2_F] = realization.operators[SL2_F].scale(
        sl2_character.weights.scalar(2)
    )
    report = check_homomorphism(realization)
    assert report.status == STATUS_FAIL
    assert report.counterexample.startswith("[R(e), R(f)]: term")


def test_coinduced_homomorphism_gl11(gl11, gl11_decomp):
    rep = make_character(gl11_decomp)
    weights = rep.weights
    one = weights.one
    table = phi_h_table(gl11_decomp)
    realization = build_realization(MODULE_COINDUCED, rep, table)

    psi_minus = gl11.label_index("psi-")
    e11 = gl11.label_index("E11")
    e22 = gl11.label_index("E22")
    assert realization.operators[psi_minus].terms == {((), V, (0,)): one}
    assert realization.operators[e11].terms == {
        ((0,), V, (0,)): one,
        ((), V, ()): weights.gen(0),
    }
    assert realization.operators[e22].terms == {
        ((0,), V, (0,)): -one,
        ((), V, ()): weights.gen(1),
    }
    assert realization.operators[psi_minus].parity == 1

    report = check_homomorphism(realization)
    assert report.passed, report.counterexample


def test_coinduced_homomorphism_gl3(gl3_decomp):
    rep = make_character(gl3_decomp)
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(gl3_decomp))
    assert check_homomorphism(realization).passed


def test_coinduced_homomorphism_a2(a2_decomp):
    rep = make_character(a2_decomp)
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(a2_decomp))
    report = check_homomorphism(realization)
    assert report.passed, report.counterexample


@pytest.mark.slow
def test_coinduced_homomorphism_d4(d4_decomp):
    rep = make_character(d4_decomp)
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(d4_decomp))
    report = check_homomorphism(realization)
    assert report.passed, report.counterexample


def test_coinduced_homomorphism_adjoint(gl2_decomp):
    rep = make_adjoint(gl2_decomp, "h")
    realization = build_realization(MODULE_COINDUCED, rep, phi_h_table(gl2_decomp))
    assert check_homomorphism(realization).passed


def test_induced_verma(sl2_decomp, sl2_character):
    weights = sl2_character.weights
    lam = weights.gen(0)
    table = phi_h_table(sl2_decomp)
    i_e = induced_operator(SL2_E, table[SL2_E], sl2_character)
    i_h = induced_operator(SL2_H, table[SL2_H], sl2_character)
    i_f = induced_operator(SL2_F, table[SL2_F], sl2_character)
    variables = induced_variables(sl2_decomp)
    assert variables.names == ("f",)

    for n in VERMA_DEGREES:
        power = SuperPoly(variables, {((0,) * n, 0): weights.one})
        lowered = apply(i_e, power)
        if n == 0:
            assert lowered.is_zero()
        else:
            expected = weights.scalar(n) * (lam - weights.scalar(n - 1))
            assert lowered.terms == {((0,) * (n - 1), 0): expected}
        assert apply(i_h, power).terms == {((0,) * n, 0): lam - weights.scalar(2 * n)}
        assert apply(i_f, power).terms == {((0,) * (n + 1), 0): weights.one}


def test_induced_oracle_sl2(sl2_decomp, sl2_character):
    report = check_induced_oracle(sl2_decomp, sl2_character, INDUCED_TRUNCATION)
    assert report.passed, report.counterexample


def test_induced_oracle_a2(a2_decomp):
    report = check_induced_oracle(a2_decomp, make_character(a2_decomp), PBW_TRUNCATION)
    assert report.passed, report.counterexample
    assert report.details["truncation"] == PBW_TRUNCATION


def test_induced_homomorphism_sl2(sl2_decomp, sl2_character):
    realization = build_realization(
        MODULE_INDUCED, sl2_character, phi_h_table(sl2_decomp), INDUCED_TRUNCATION
    )
    report = check_homomorphism(realization)
    assert report.passed, report.counterexample
    assert report.details["window"] == INDUCED_TRUNCATION - 1


def test_supercommutator_domains(sl2_decomp, sl2_character):
    table = phi_h_table(sl2_decomp)
    t_e = coinduced_operator(SL2_E, table[SL2_E], sl2_character)
    i_e = induced_operator(SL2_E, table[SL2_E], sl2_character)
    with pytest.raises(DomainError) as e:
        _ = supercommutator(t_e, i_e)
    assert "cannot commute a coinduced operator with a induced operator" in str(e)


def test_duality_sl2(sl2_decomp, sl2_character):
    report = check_duality(sl2_decomp, sl2_character, DUALITY_TRUNCATION)
    assert report.passed, report.counterexample


def test_duality_gl3(gl3_decomp):
    rep = make_character(gl3_decomp)
    report = check_duality(gl3_decomp, rep, DUALITY_TRUNCATION)
    assert report.passed, report.counterexample
