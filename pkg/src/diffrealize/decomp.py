"""Direct-sum decompositions g = g_- + h and their projections."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, overload

import sympy

from .const import DECOMP_TRIANGULAR, ODD
from .errors import DecompositionError, DomainError
from .liealg import (
    BasisElement,
    BracketTable,
    LieSuperAlgebra,
    Vector,
    add_into,
    basis_vector,
    span_vectors,
)
from .superpoly import SuperPoly, VariableSet

_LOGGER: logging.Logger = logging.getLogger(__package__)

NOT_DIRECT = "not-direct"
NOT_SPANNING = "not-spanning"
H_NOT_CLOSED = "h-not-closed"
INHOMOGENEOUS = "inhomogeneous"


def to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value: Any) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _closed(alg: LieSuperAlgebra, indices: Sequence[int]) -> bool:
    members = set(indices)
    for i in indices:
        for j in indices:
            if any(k not in members for k in alg.bracket_basis(i, j)):
                return False
    return True


@dataclass(slots=True)
class Decomposition:
    """A splitting of ``algebra`` into coordinate-aligned g_- and h.

    ``algebra`` is the working algebra. When g_- was given by vectors that are
    not basis elements it is the original algebra rewritten in an adapted
    basis, and ``change_of_basis`` holds the adapted basis in original
    coordinates.
    """

    algebra: LieSuperAlgebra
    minus_indices: tuple[int, ...]
    h_indices: tuple[int, ...]
    is_subalgebra: bool
    original: LieSuperAlgebra
    kind: str = DECOMP_TRIANGULAR
    change_of_basis: tuple[Vector, ...] | None = None
    h_is_subalgebra: bool = True
    minus_set: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        self.minus_set = frozenset(self.minus_indices)

    @property
    def minus_dimension(self) -> int:
        return len(self.minus_indices)

    @property
    def h_dimension(self) -> int:
        return len(self.h_indices)

    @property
    def adapted(self) -> bool:
        return self.change_of_basis is not None

    def is_minus(self, index: int) -> bool:
        return index in self.minus_set

    def is_h(self, index: int) -> bool:
        return index not in self.minus_set

    def minus_position(self) -> dict[int, int]:
        """Map from basis index of g_- to the index of its dual variable."""
        return {index: position for position, index in enumerate(self.minus_indices)}

    def dual_variables(self) -> VariableSet:
        """Indeterminates X^i dual to the g_- basis, with matching parities."""
        parities = [self.algebra.parity(i) for i in self.minus_indices]
        single = len(parities) == 1
        names = []
        for position, parity in enumerate(parities):
            stem = "\\theta" if parity == ODD else "X"
            names.append(stem if single else f"{stem}_{{{position + 1}}}")
        return VariableSet(parities, names)

    @overload
    def project_minus(self, value: Vector) -> Vector: ...

    @overload
    def project_minus(self, value: SuperPoly) -> SuperPoly: ...

    def project_minus(self, value: Vector | SuperPoly) -> Vector | SuperPoly:
        return self._project(value, self.minus_set, keep=True)

    @overload
    def project_h(self, value: Vector) -> Vector: ...

    @overload
    def project_h(self, value: SuperPoly) -> SuperPoly: ...

    def project_h(self, value: Vector | SuperPoly) -> Vector | SuperPoly:
        return self._project(value, self.minus_set, keep=False)

    @staticmethod
    def _project(value: Vector | SuperPoly, members: frozenset[int], keep: bool) -> Any:
        if isinstance(value, SuperPoly):
            return SuperPoly(
                value.variables,
                {k: c for k, c in value.terms.items() if (k[1] in members) == keep},
                value.truncation,
            )
        return {k: c for k, c in value.items() if (k in members) == keep}

    def to_original(self, vector: Mapping[int, Fraction]) -> Vector:
        """Express a working-basis vector in the original basis."""
        if self.change_of_basis is None:
            return dict(vector)
        result: Vector = {}
        for k, c in vector.items():
            add_into(result, self.change_of_basis[k], c)
        return result

    def describe(self) -> str:
        minus = ", ".join(self.algebra.basis[i].label for i in self.minus_indices)
        h = ", ".join(self.algebra.basis[i].label for i in self.h_indices)
        return f"{self.algebra.name}: g_- = <{minus}>, h = <{h}>"


def triangular(alg: LieSuperAlgebra) -> Decomposition:
    """g_- = negative degrees, h = non-negative degrees."""
    if not alg.is_graded:
        msg = f"{alg.name} carries no Z-grading, triangular decomposition is undefined"
        _LOGGER.error(msg)
        raise DomainError(msg)
    minus = tuple(i for i in range(alg.dim) if alg.degree(i) < 0)
    h = tuple(i for i in range(alg.dim) if alg.degree(i) >= 0)
    decomp = Decomposition(
        algebra=alg,
        minus_indices=minus,
        h_indices=h,
        is_subalgebra=_closed(alg, minus),
        original=alg,
        kind=DECOMP_TRIANGULAR,
    )
    _LOGGER.debug("Triangular decomposition %s", decomp.describe())
    return decomp


def _adapt(
    alg: LieSuperAlgebra, vectors: Sequence[Vector], n_minus: int
) -> tuple[LieSuperAlgebra, tuple[Vector, ...]]:
    """Rewrite ``alg`` in the basis ``vectors`` (g_- part first)."""
    columns = sympy.Matrix(
        [[to_sympy(v.get(k, Fraction(0))) for k in range(alg.dim)] for v in vectors]
    ).T
    inverse = columns.inv()

    def coordinates(vector: Vector) -> Vector:
        column = sympy.Matrix([to_sympy(vector.get(k, Fraction(0))) for k in range(alg.dim)])
        solved = inverse * column
        return {a: from_sympy(solved[a]) for a in range(alg.dim) if solved[a] != 0}

    basis: list[BasisElement] = []
    for position, vector in enumerate(vectors):
        parity = alg.vector_parity(vector)
        if len(vector) == 1 and next(iter(vector.values())) == 1:
            label = alg.basis[next(iter(vector))].label
        else:
            label = f"({alg.format(vector)})"
        degree = None
        if alg.is_graded:
            degrees = {alg.degree(k) for k in vector}
            degree = degrees.pop() if len(degrees) == 1 else None
        basis.append(BasisElement(position, label, parity, degree))
    if any(element.degree is None for element in basis):
        basis = [BasisElement(e.index, e.label, e.parity, None) for e in basis]

    table: BracketTable = {}
    for a, va in enumerate(vectors):
        for b, vb in enumerate(vectors):
            value = alg.bracket(va, vb)
            if value:
                table[(a, b)] = coordinates(value)
    _LOGGER.debug("Adapted %s to a basis with %d g_- vectors", alg.name, n_minus)
    adapted = LieSuperAlgebra(f"{alg.name} (adapted)", basis, table, alg.family, alg.rank)
    return adapted, tuple(dict(v) for v in vectors)


def custom(
    alg: LieSuperAlgebra,
    minus_spec: Iterable[Any],
    h_spec: Iterable[Any],
) -> Decomposition:
    """Decomposition from spanning sets of g_- and h (labels, label maps or vectors)."""

    def as_vectors(items: Iterable[Any]) -> list[Vector]:
        result: list[Vector] = []
        for item in items:
            if isinstance(item, int):
                result.append(basis_vector(item))
            elif isinstance(item, dict) and all(isinstance(k, int) for k in item):
                result.append({k: Fraction(c) for k, c in item.items() if c})
            else:
                result.extend(span_vectors(alg, [item]))
        return result

    minus_vectors = as_vectors(minus_spec)
    h_vectors = as_vectors(h_spec)
    vectors = minus_vectors + h_vectors
    for vector in vectors:
        try:
            alg.vector_parity(vector)
        except DomainError as e:
            msg = f"spanning vector {alg.format(vector)} is not parity-homogeneous"
            _LOGGER.error(msg)
            raise DecompositionError(msg, INHOMOGENEOUS) from e

    matrix = sympy.Matrix(
        [[to_sympy(v.get(k, Fraction(0))) for k in range(alg.dim)] for v in vectors]
        or [[0] * alg.dim]
    )
    rank = matrix.rank() if vectors else 0
    if rank < len(vectors):
        msg = (
            f"g_- and h do not form a direct sum in {alg.name}: "
            f"{len(vectors)} vectors span only rank {rank}"
        )
        _LOGGER.error(msg)
        raise DecompositionError(msg, NOT_DIRECT)
    if rank < alg.dim:
        msg = f"g_- and h span rank {rank}, but {alg.name} has dimension {alg.dim}"
        _LOGGER.error(msg)
        raise DecompositionError(msg, NOT_SPANNING)

    aligned = all(len(v) == 1 and next(iter(v.values())) == 1 for v in vectors)
    if aligned:
        working = alg
        minus = tuple(next(iter(v)) for v in minus_vectors)
        h = tuple(next(iter(v)) for v in h_vectors)
        change = None
    else:
        working, change = _adapt(alg, vectors, len(minus_vectors))
        minus = tuple(range(len(minus_vectors)))
        h = tuple(range(len(minus_vectors), len(vectors)))

    if not _closed(working, h):
        msg = f"h is not closed under the bracket in {alg.name}"
        _LOGGER.error(msg)
        raise DecompositionError(msg, H_NOT_CLOSED)

    decomp = Decomposition(
        algebra=working,
        minus_indices=minus,
        h_indices=h,
        is_subalgebra=_closed(working, minus),
        original=alg,
        kind="custom",
        change_of_basis=change,
    )
    _LOGGER.debug(
        "Custom decomposition %s (g_- subalgebra: %s)", decomp.describe(), decomp.is_subalgebra
    )
    return decomp


def from_spec(alg: LieSuperAlgebra, spec: str | Mapping[str, Any]) -> Decomposition:
    """Resolve ``"triangular"`` or a ``{"minus": [...], "h": [...]}`` mapping."""
    if isinstance(spec, str):
        if spec != DECOMP_TRIANGULAR:
            msg = f"unknown decomposition {spec!r}"
            _LOGGER.error(msg)
            raise DomainError(msg)
        return triangular(alg)
    from .config import DECOMP_SCHEMA  # pylint: disable=import-outside-toplevel

    data = DECOMP_SCHEMA(dict(spec))
    if data.get("kind") == DECOMP_TRIANGULAR:
        return triangular(alg)
    return custom(alg, data["minus"], data["h"])
