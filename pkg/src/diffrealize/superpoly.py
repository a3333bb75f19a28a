"""Supercommutative polynomials and truncated formal series.

A ``SuperPoly`` is a finite sum of terms ``c * X^m (x) w`` where ``X^m`` is a
monomial in graded indeterminates, ``c`` is a coefficient and ``w`` is a
basis element of a value space (``None`` for scalar-valued polynomials).
Monomials are stored as non-decreasing tuples of variable indices; an odd
variable never occurs twice. Coefficients only need ``+``, ``-``, ``*`` and
truthiness, so ``Fraction`` and sympy ring elements both work.
"""

import logging
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any

from .const import EVEN, ODD
from .errors import DomainError
from .scalars import factorial

_LOGGER: logging.Logger = logging.getLogger(__package__)

Monomial = tuple[int, ...]
Component = Hashable
Key = tuple[Monomial, Component]
Coeff = Any

ONE: Monomial = ()


@dataclass(frozen=True, slots=True)
class Indeterminate:
    """A graded indeterminate X^i; its parity equals that of the dual vector P_i."""

    index: int
    parity: int
    name: str = ""


class VariableSet:
    """Registry of indeterminates with their parities and display names."""

    __slots__ = ("_all_even", "names", "parities")

    def __init__(self, parities: Sequence[int], names: Sequence[str] | None = None) -> None:
        self.parities: tuple[int, ...] = tuple(int(p) for p in parities)
        if any(p not in (EVEN, ODD) for p in self.parities):
            msg = f"parities must be 0 or 1, got {self.parities}"
            raise DomainError(msg)
        if names is None:
            names = [f"X{i + 1}" for i in range(len(self.parities))]
        self.names: tuple[str, ...] = tuple(names)
        self._all_even = ODD not in self.parities

    def __len__(self) -> int:
        return len(self.parities)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VariableSet):
            return NotImplemented
        return self.parities == other.parities

    def __hash__(self) -> int:
        return hash(self.parities)

    def __repr__(self) -> str:
        return f"VariableSet({list(self.parities)})"

    @property
    def all_even(self) -> bool:
        return self._all_even

    def indeterminate(self, index: int) -> Indeterminate:
        return Indeterminate(index, self.parities[index], self.names[index])

    def parity(self, index: int) -> int:
        return self.parities[index]

    def monomial_parity(self, monomial: Monomial) -> int:
        if self._all_even:
            return EVEN
        return sum(self.parities[i] for i in monomial) % 2

    def normalize(self, factors: Iterable[int]) -> tuple[int, Monomial] | None:
        """Sort a factor sequence into canonical order.

        Returns ``(sign, monomial)``, or ``None`` when an odd factor repeats.
        """
        seq = list(factors)
        if self._all_even:
            return 1, tuple(sorted(seq))
        parities = self.parities
        odd = [i for i in seq if parities[i]]
        if len(set(odd)) != len(odd):
            return None
        inversions = 0
        for a in range(len(odd)):
            for b in range(a + 1, len(odd)):
                if odd[a] > odd[b]:
                    inversions += 1
        return (-1 if inversions % 2 else 1), tuple(sorted(seq))

    def multiply(self, left: Monomial, right: Monomial) -> tuple[int, Monomial] | None:
        """Product of two canonical monomials, left factor first."""
        if not left:
            return 1, right
        if not right:
            return 1, left
        if self._all_even:
            return 1, tuple(sorted(left + right))
        return self.normalize(left + right)

    def append(self, monomial: Monomial, index: int) -> tuple[int, Monomial] | None:
        """Right-multiply a canonical monomial by one indeterminate."""
        if self._all_even or not self.parities[index]:
            pos = len(monomial)
            while pos > 0 and monomial[pos - 1] > index:
                pos -= 1
            return 1, monomial[:pos] + (index,) + monomial[pos:]
        if index in monomial:
            return None
        parities = self.parities
        passed = sum(1 for i in monomial if i > index and parities[i])
        pos = len(monomial)
        while pos > 0 and monomial[pos - 1] > index:
            pos -= 1
        return (-1 if passed % 2 else 1), monomial[:pos] + (index,) + monomial[pos:]


def normalize(variables: VariableSet, factors: Iterable[int]) -> tuple[int, Monomial] | None:
    """Canonical form of a product of indeterminates (``None`` means zero)."""
    return variables.normalize(factors)


def _accumulate(terms: dict[Key, Coeff], key: Key, value: Coeff) -> None:
    existing = terms.get(key)
    if existing is None:
        if value:
            terms[key] = value
        return
    total = existing + value
    if total:
        terms[key] = total
    else:
        del terms[key]


class SuperPoly:
    """Finite sum of monomials with coefficients in a value space."""

    __slots__ = ("terms", "truncation", "variables")

    def __init__(
        self,
        variables: VariableSet,
        terms: Mapping[Key, Coeff] | None = None,
        truncation: int | None = None,
    ) -> None:
        self.variables = variables
        self.truncation = truncation
        self.terms: dict[Key, Coeff] = {}
        if terms:
            for key, value in terms.items():
                if not value:
                    continue
                if truncation is not None and len(key[0]) > truncation:
                    continue
                self.terms[key] = value

    @classmethod
    def constant(
        cls,
        variables: VariableSet,
        coeff: Coeff = Fraction(1),
        component: Component = None,
        truncation: int | None = None,
    ) -> "SuperPoly":
        return cls(variables, {(ONE, component): coeff}, truncation)

    @classmethod
    def monomial(
        cls,
        variables: VariableSet,
        factors: Iterable[int],
        coeff: Coeff = Fraction(1),
        component: Component = None,
        truncation: int | None = None,
    ) -> "SuperPoly":
        normal = variables.normalize(factors)
        if normal is None:
            return cls(variables, None, truncation)
        sign, mono = normal
        return cls(variables, {(mono, component): coeff * sign}, truncation)

    @classmethod
    def zero(cls, variables: VariableSet, truncation: int | None = None) -> "SuperPoly":
        return cls(variables, None, truncation)

    def copy(self) -> "SuperPoly":
        return SuperPoly(self.variables, dict(self.terms), self.truncation)

    def __repr__(self) -> str:
        return f"SuperPoly({self.terms!r}, truncation={self.truncation})"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("SuperPoly is unhashable")

    def items(self) -> Iterator[tuple[Key, Coeff]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest monomial degree, -1 for the zero polynomial."""
        return max((len(mono) for mono, _ in self.terms), default=-1)

    def components(self) -> set[Component]:
        return {component for _, component in self.terms}

    def component(self, component: Component) -> "SuperPoly":
        """Scalar-valued coefficient polynomial of one value-space basis element."""
        return SuperPoly(
            self.variables,
            {(mono, None): c for (mono, comp), c in self.terms.items() if comp == component},
            self.truncation,
        )

    def with_component(self, component: Component) -> "SuperPoly":
        """Tensor a scalar-valued polynomial with a basis element."""
        return SuperPoly(
            self.variables,
            {(mono, component): c for (mono, _), c in self.terms.items()},
            self.truncation,
        )

    def _combine_truncation(self, other: "SuperPoly") -> int | None:
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            _accumulate(terms, key, value)
        return SuperPoly(self.variables, terms, self._combine_truncation(other))

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + (-other)

    def __neg__(self) -> "SuperPoly":
        return SuperPoly(
            self.variables, {k: -v for k, v in self.terms.items()}, self.truncation
        )

    def scale(self, factor: Coeff) -> "SuperPoly":
        if not factor:
            return SuperPoly(self.variables, None, self.truncation)
        return SuperPoly(
            self.variables, {k: v * factor for k, v in self.terms.items()}, self.truncation
        )

    def __mul__(self, other: "SuperPoly") -> "SuperPoly":
        return mul(self, other)

    def truncate(self, degree: int) -> "SuperPoly":
        limit = degree if self.truncation is None else min(degree, self.truncation)
        return SuperPoly(self.variables, self.terms, limit)

    def upto(self, degree: int) -> "SuperPoly":
        """Terms of degree at most ``degree``; keeps the truncation metadata."""
        return SuperPoly(
            self.variables,
            {k: v for k, v in self.terms.items() if len(k[0]) <= degree},
            self.truncation,
        )

    def map_components(
        self, linear_map: Callable[[Component], Iterable[tuple[Component, Coeff]]]
    ) -> "SuperPoly":
        """Apply a linear map to the value-space part, coefficient-wise."""
        terms: dict[Key, Coeff] = {}
        cache: dict[Component, list[tuple[Component, Coeff]]] = {}
        for (mono, comp), value in self.terms.items():
            image = cache.get(comp)
            if image is None:
                image = list(linear_map(comp))
                cache[comp] = image
            for new_comp, factor in image:
                _accumulate(terms, (mono, new_comp), value * factor)
        return SuperPoly(self.variables, terms, self.truncation)


def mul(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    """Product of a scalar-valued ``a`` with ``b`` (any value space)."""
    variables = a.variables
    truncation = a._combine_truncation(b)  # pylint: disable=protected-access
    terms: dict[Key, Coeff] = {}
    for (m1, comp1), c1 in a.terms.items():
        if comp1 is not None:
            msg = "left factor of mul must be scalar-valued"
            raise DomainError(msg)
        for (m2, comp2), c2 in b.terms.items():
            if truncation is not None and len(m1) + len(m2) > truncation:
                continue
            product = variables.multiply(m1, m2)
            if product is None:
                continue
            sign, mono = product
            value = c1 * c2
            _accumulate(terms, (mono, comp2), value if sign > 0 else -value)
    return SuperPoly(variables, terms, truncation)


def strike(variables: VariableSet, mono: Monomial, index: int) -> tuple[int, Monomial] | None:
    """Left derivative of a single monomial: returns (factor, monomial) or None."""
    try:
        pos = mono.index(index)
    except ValueError:
        return None
    remaining = mono[:pos] + mono[pos + 1 :]
    if variables.parities[index] == EVEN:
        return mono.count(index), remaining
    odd_before = sum(variables.parities[i] for i in mono[:pos])
    return (-1 if odd_before % 2 else 1), remaining


def partial(p: SuperPoly, index: int) -> SuperPoly:
    """Graded left derivative d/dX^index."""
    terms: dict[Key, Coeff] = {}
    for (mono, comp), value in p.terms.items():
        struck = strike(p.variables, mono, index)
        if struck is None:
            continue
        factor, remaining = struck
        _accumulate(terms, (remaining, comp), value * factor)
    return SuperPoly(p.variables, terms, p.truncation)


def pairing_value(variables: VariableSet, monomial: Monomial) -> int:
    """<X^m, P^m> for a canonical monomial m; distinct monomials pair to zero."""
    odd = sum(1 for i in monomial if variables.parities[i])
    value = 1
    for index in set(monomial):
        if variables.parities[index] == EVEN:
            value *= factorial(monomial.count(index))
    return -value if (odd * (odd - 1) // 2) % 2 else value


def pair(f: SuperPoly, e: SuperPoly) -> Coeff:
    """Duality pairing between polynomials in X and symmetric-algebra elements in P."""
    total: Coeff = None
    for (mono, comp), value in f.terms.items():
        other = e.terms.get((mono, comp))
        if other:
            term = value * other * pairing_value(f.variables, mono)
            total = term if total is None else total + term
    return Fraction(0) if total is None else total


def negate_vars(p: SuperPoly) -> SuperPoly:
    """Substitute X -> -X: each term picks up (-1)^degree."""
    return SuperPoly(
        p.variables,
        {k: (-v if len(k[0]) % 2 else v) for k, v in p.terms.items()},
        p.truncation,
    )


def monomials_up_to(variables: VariableSet, degree: int) -> list[Monomial]:
    """All canonical monomials of degree at most ``degree``, by degree then index."""
    result: list[Monomial] = []
    indices = range(len(variables))
    for d in range(degree + 1):
        for combo in combinations_with_replacement(indices, d):
            if variables.all_even or all(
                combo.count(i) == 1 for i in set(combo) if variables.parities[i]
            ):
                result.append(combo)
    return result
