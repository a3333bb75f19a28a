"""Tests for exact scalar arithmetic."""

from fractions import Fraction

import pytest
from diffrealize.errors import DomainError
from diffrealize.scalars import (
    PLUS_HALF,
    as_scalar,
    bernoulli,
    binomial,
    c_coeff,
    exp_neg_coeffs,
    exp_quotient_coeffs,
    factorial,
    format_scalar,
    neg_exp_quotient_coeffs,
)

from .const import BERNOULLI


def test_bernoulli():
    for n, value in BERNOULLI.items():
        assert bernoulli(n) == value
    assert bernoulli(1, PLUS_HALF) == Fraction(1, 2)
    assert bernoulli(2, PLUS_HALF) == Fraction(1, 6)

    with pytest.raises(DomainError) as e:
        _ = bernoulli(-1)
    assert "must be non-negative" in str(e)
    with pytest.raises(DomainError) as e:
        _ = bernoulli(2, 0)
    assert "b1_sign must be -1 or +1" in str(e)


def test_factorial_binomial(caplog):
    assert factorial(0) == 1
    assert factorial(6) == 720
    assert binomial(5, 2) == 10
    assert binomial(3, 4) == 0
    assert binomial(3, -1) == 0

    caplog.clear()
    with pytest.raises(DomainError):
        _ = factorial(-2)
    assert "factorial of negative integer -2" in caplog.text


def test_path_weights():
    assert c_coeff(0, 0) == 1
    assert c_coeff(0, 1) == Fraction(1, 2)
    assert c_coeff(0, 2) == Fraction(1, 12)
    for n in range(1, 7):
        assert c_coeff(n, n) == Fraction(1, factorial(n))
    # b_1 enters only when n - i = 1
    assert c_coeff(0, 1, PLUS_HALF) == Fraction(3, 2)

    with pytest.raises(DomainError) as e:
        _ = c_coeff(2, 1)
    assert "only defined for k <= n" in str(e)
    with pytest.raises(DomainError) as e:
        _ = c_coeff(-1, 1)
    assert "non-negative arguments" in str(e)


def test_series_coefficients():
    assert neg_exp_quotient_coeffs(2) == (Fraction(-1), Fraction(-1, 2), Fraction(-1, 12))
    assert exp_quotient_coeffs(2) == (Fraction(-1), Fraction(1, 2), Fraction(-1, 6))
    assert exp_neg_coeffs(3) == (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 6))


def test_as_scalar():
    assert as_scalar(3) == Fraction(3)
    assert as_scalar(" 3/4 ") == Fraction(3, 4)
    assert as_scalar(Fraction(1, 5)) == Fraction(1, 5)

    with pytest.raises(DomainError) as e:
        _ = as_scalar(True)
    assert "cannot interpret boolean" in str(e)
    with pytest.raises(DomainError) as e:
        _ = as_scalar("x/2")
    assert "exact rational" in str(e)
    with pytest.raises(DomainError) as e:
        _ = as_scalar(0.5)
    assert "of type float" in str(e)


def test_format_scalar():
    assert format_scalar(Fraction(4)) == "4"
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
