"""Exact rational arithmetic: factorials, Bernoulli numbers and path weights.

All coefficients in the package are ``fractions.Fraction`` values. The
Bernoulli numbers are generated by the binomial recurrence

    sum_{j=0}^{n} C(n+1, j) B_j = 0    (n >= 1),  B_0 = 1

which produces the ``B_1 = -1/2`` convention. The other convention differs
only in the sign of ``B_1``; both are available through ``b1_sign``.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DomainError

_LOGGER: logging.Logger = logging.getLogger(__package__)

Scalar = Fraction

MINUS_HALF = -1
PLUS_HALF = 1


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """Return n! exactly."""
    if n < 0:
        msg = f"factorial of negative integer {n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    return 1 if n == 0 else n * factorial(n - 1)


def binomial(n: int, k: int) -> int:
    """Return the binomial coefficient C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def _bernoulli_minus(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    total = sum((comb(n + 1, j) * _bernoulli_minus(j) for j in range(n)), Fraction(0))
    return -total / (n + 1)


def bernoulli(n: int, b1_sign: int = MINUS_HALF) -> Fraction:
    """Return the n-th Bernoulli number.

    ``b1_sign`` selects ``B_1 = -1/2`` (``MINUS_HALF``) or ``B_1 = +1/2``
    (``PLUS_HALF``); every other value is the same in both conventions.
    """
    if n < 0:
        msg = f"Bernoulli number index must be non-negative, got {n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    if b1_sign not in (MINUS_HALF, PLUS_HALF):
        msg = f"b1_sign must be -1 or +1, got {b1_sign}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    value = _bernoulli_minus(n)
    if n == 1 and b1_sign == PLUS_HALF:
        return -value
    return value


@lru_cache(maxsize=None)
def c_coeff(k: int, n: int, b1_sign: int = MINUS_HALF) -> Fraction:
    """Return c(k, n) = sum_{k <= i <= n} b_{n-i} / (i! (n-i)!)."""
    if k < 0 or n < 0:
        msg = f"c(k, n) needs non-negative arguments, got k={k}, n={n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    if k > n:
        msg = f"c(k, n) is only defined for k <= n, got k={k}, n={n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    return sum(
        (
            bernoulli(n - i, b1_sign) / (factorial(i) * factorial(n - i))
            for i in range(k, n + 1)
        ),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def neg_exp_quotient_coeffs(order: int) -> tuple[Fraction, ...]:
    """Taylor coefficients of t / (e^{-t} - 1) up to t^order.

    t / (e^{-t} - 1) = -sum_n B_n^+ t^n / n!  with the ``B_1 = +1/2`` numbers.
    The value at t = 0 is the limit -1.
    """
    return tuple(-bernoulli(n, PLUS_HALF) / factorial(n) for n in range(order + 1))


@lru_cache(maxsize=None)
def exp_quotient_coeffs(order: int) -> tuple[Fraction, ...]:
    """Taylor coefficients of (e^{-t} - 1) / t up to t^order; the limit at 0 is -1."""
    return tuple(Fraction((-1) ** (m + 1), factorial(m + 1)) for m in range(order + 1))


@lru_cache(maxsize=None)
def exp_neg_coeffs(order: int) -> tuple[Fraction, ...]:
    """Taylor coefficients of e^{-t} up to t^order."""
    return tuple(Fraction((-1) ** n, factorial(n)) for n in range(order + 1))


def as_scalar(value: object) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        msg = f"cannot interpret boolean {value!r} as a scalar"
        raise DomainError(msg)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            msg = f"cannot interpret {value!r} as an exact rational: {e}"
            raise DomainError(msg) from e
    msg = f"cannot interpret {value!r} of type {type(value).__name__} as an exact rational"
    raise DomainError(msg)


def format_scalar(value: Fraction) -> str:
    """Render a scalar as ``"p"`` or ``"p/q"``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
