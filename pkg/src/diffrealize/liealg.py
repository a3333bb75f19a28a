"""Finite-dimensional Lie superalgebras given by sparse structure constants."""

import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any

from .const import EVEN, FAMILY_CUSTOM, FAMILY_GL, FAMILY_SL, ODD, PARITY_NAMES
from .errors import AlgebraValidationError, DomainError
from .scalars import as_scalar, format_scalar

_LOGGER: logging.Logger = logging.getLogger(__package__)

Vector = dict[int, Fraction]
BracketTable = dict[tuple[int, int], Vector]


@dataclass(frozen=True, slots=True)
class BasisElement:
    """One homogeneous basis vector of an algebra."""

    index: int
    label: str
    parity: int = EVEN
    degree: int | None = None


@dataclass(slots=True)
class Violation:
    """A single failed axiom, with both sides of the identity."""

    kind: str
    items: tuple[str, ...]
    lhs: str
    rhs: str

    def __str__(self) -> str:
        return f"{self.kind} fails for ({', '.join(self.items)}): {self.lhs} != {self.rhs}"


@dataclass(slots=True)
class ValidationReport:
    algebra: str
    violations: list[Violation] = field(default_factory=list)
    pairs_checked: int = 0
    triples_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


def add_into(target: Vector, source: Mapping[int, Fraction], factor: Fraction | int = 1) -> None:
    """target += factor * source, dropping zeros."""
    for k, c in source.items():
        value = target.get(k, Fraction(0)) + c * factor
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def scaled(source: Mapping[int, Fraction], factor: Fraction | int) -> Vector:
    if not factor:
        return {}
    return {k: c * factor for k, c in source.items() if c}


class LieSuperAlgebra:
    """Basis, parities, optional Z-grading and the bracket table of a Lie superalgebra."""

    def __init__(
        self,
        name: str,
        basis: Sequence[BasisElement],
        table: Mapping[tuple[int, int], Mapping[int, Fraction]],
        family: str = FAMILY_CUSTOM,
        rank: int | None = None,
    ) -> None:
        self.name = name
        self.family = family
        self.rank = rank
        self.basis: tuple[BasisElement, ...] = tuple(basis)
        for position, element in enumerate(self.basis):
            if element.index != position:
                msg = f"basis indices must be dense, found {element.index} at {position}"
                _LOGGER.error(msg)
                raise DomainError(msg)
        self._labels = {element.label: element.index for element in self.basis}
        if len(self._labels) != len(self.basis):
            msg = f"duplicate basis labels in {name}"
            _LOGGER.error(msg)
            raise DomainError(msg)
        self._table: BracketTable = {}
        for (i, j), value in table.items():
            clean = {k: Fraction(c) for k, c in value.items() if c}
            if clean:
                self._table[(i, j)] = clean

    @classmethod
    def from_brackets(
        cls,
        name: str,
        basis: Sequence[BasisElement],
        brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
        family: str = FAMILY_CUSTOM,
        rank: int | None = None,
    ) -> "LieSuperAlgebra":
        """Build from one ordering of each pair; the other order follows by antisymmetry."""
        table: BracketTable = {}
        for (i, j), value in brackets.items():
            table[(i, j)] = dict(value)
            if (j, i) not in brackets and i != j:
                sign = -1 if basis[i].parity * basis[j].parity else 1
                table[(j, i)] = scaled(value, -sign)
        return cls(name, basis, table, family, rank)

    def __repr__(self) -> str:
        return f"LieSuperAlgebra({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> list[str]:
        return [element.label for element in self.basis]

    @property
    def parities(self) -> list[int]:
        return [element.parity for element in self.basis]

    @property
    def is_graded(self) -> bool:
        return all(element.degree is not None for element in self.basis)

    @property
    def is_super(self) -> bool:
        return any(element.parity == ODD for element in self.basis)

    def label_index(self, label: str) -> int:
        try:
            return self._labels[label]
        except KeyError as e:
            msg = f"unknown basis element {label!r} in {self.name}"
            _LOGGER.error(msg)
            raise DomainError(msg) from e

    def parity(self, index: int) -> int:
        return self.basis[index].parity

    def degree(self, index: int) -> int:
        degree = self.basis[index].degree
        if degree is None:
            msg = f"{self.name} carries no grading"
            _LOGGER.error(msg)
            raise DomainError(msg)
        return degree

    def depth(self) -> int:
        """Depth l of the grading: the largest magnitude of a negative degree."""
        return max([0] + [-self.degree(i) for i in range(self.dim)])

    def max_degree(self) -> int:
        return max((self.degree(i) for i in range(self.dim)), default=0)

    def homogeneous(self, degree: int) -> list[int]:
        """Indices of the basis elements spanning the degree-d component."""
        return [i for i in range(self.dim) if self.degree(i) == degree]

    def vector_parity(self, vector: Mapping[int, Fraction]) -> int:
        parities = {self.basis[k].parity for k, c in vector.items() if c}
        if len(parities) > 1:
            msg = f"vector {self.format(vector)} is not homogeneous"
            _LOGGER.error(msg)
            raise DomainError(msg)
        return parities.pop() if parities else EVEN

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._table.get((i, j), {})

    def bracket(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Vector:
        """Bilinear extension of the structure constants."""
        result: Vector = {}
        for i, ca in a.items():
            if not ca:
                continue
            for j, cb in b.items():
                if not cb:
                    continue
                value = self._table.get((i, j))
                if value:
                    add_into(result, value, ca * cb)
        return result

    def ad_matrix(self, index: int) -> dict[int, Vector]:
        """Columns of ad(e_index): column s is [e_index, e_s]."""
        return {s: dict(v) for (i, s), v in self._table.items() if i == index}

    def structure_table(self) -> Iterator[tuple[int, int, int, Fraction]]:
        """Nonzero structure constants (i, j, k, c) with [e_i, e_j] = ... + c e_k, sorted."""
        for i, j in sorted(self._table):
            for k, c in sorted(self._table[(i, j)].items()):
                yield i, j, k, c

    def with_bracket(self, i: int, j: int, value: Mapping[int, Fraction]) -> "LieSuperAlgebra":
        """Copy with [e_i, e_j] replaced; [e_j, e_i] is updated by antisymmetry."""
        table = {key: dict(v) for key, v in self._table.items()}
        table[(i, j)] = dict(value)
        if i != j:
            sign = -1 if self.parity(i) * self.parity(j) else 1
            table[(j, i)] = scaled(value, -sign)
        return LieSuperAlgebra(self.name, self.basis, table, self.family, self.rank)

    def format(self, vector: Mapping[int, Fraction]) -> str:
        parts = []
        for k in sorted(vector):
            c = vector[k]
            if not c:
                continue
            label = self.basis[k].label
            if c == 1:
                parts.append(f"+ {label}")
            elif c == -1:
                parts.append(f"- {label}")
            elif c < 0:
                parts.append(f"- {format_scalar(-c)}*{label}")
            else:
                parts.append(f"+ {format_scalar(c)}*{label}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_spec(self) -> dict[str, Any]:
        """Structured description accepted by ``load_custom``."""
        parity_names = {v: k for k, v in PARITY_NAMES.items()}
        basis: list[dict[str, Any]] = []
        for element in self.basis:
            entry: dict[str, Any] = {
                "label": element.label,
                "parity": parity_names[element.parity],
            }
            if element.degree is not None:
                entry["degree"] = element.degree
            basis.append(entry)
        brackets = [
            {
                "left": self.basis[i].label,
                "right": self.basis[j].label,
                "result": {
                    self.basis[k].label: format_scalar(c) for k, c in sorted(value.items())
                },
            }
            for (i, j), value in sorted(self._table.items())
            if i <= j
        ]
        spec: dict[str, Any] = {"name": self.name, "family": self.family, "basis": basis}
        if self.rank is not None:
            spec["rank"] = self.rank
        spec["brackets"] = brackets
        return spec


def _sign(flag: int) -> int:
    return -1 if flag % 2 else 1


def validate(alg: LieSuperAlgebra) -> ValidationReport:
    """Check super-antisymmetry, super-Jacobi, parity and grading compatibility."""
    report = ValidationReport(alg.name)
    parity = alg.parities
    unit = Fraction(1)

    for i in range(alg.dim):
        for j in range(i, alg.dim):
            report.pairs_checked += 1
            lhs = alg.bracket_basis(i, j)
            rhs = scaled(alg.bracket_basis(j, i), -_sign(parity[i] * parity[j]))
            if lhs != rhs:
                report.violations.append(
                    Violation(
                        "antisymmetry",
                        (alg.basis[i].label, alg.basis[j].label),
                        alg.format(lhs),
                        alg.format(rhs),
                    )
                )
            for k in lhs:
                if parity[k] != (parity[i] + parity[j]) % 2:
                    report.violations.append(
                        Violation(
                            "parity",
                            (alg.basis[i].label, alg.basis[j].label),
                            alg.format(lhs),
                            f"terms of parity {(parity[i] + parity[j]) % 2}",
                        )
                    )
                    break
            if alg.is_graded:
                expected = alg.degree(i) + alg.degree(j)
                if any(alg.degree(k) != expected for k in lhs):
                    report.violations.append(
                        Violation(
                            "grading",
                            (alg.basis[i].label, alg.basis[j].label),
                            alg.format(lhs),
                            f"terms of degree {expected}",
                        )
                    )

    for x, y, z in combinations_with_replacement(range(alg.dim), 3):
        report.triples_checked += 1
        total: Vector = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = alg.bracket_basis(b, c)
            if inner:
                add_into(total, alg.bracket({a: unit}, inner), _sign(parity[a] * parity[c]))
        if total:
            report.violations.append(
                Violation(
                    "super-Jacobi",
                    (alg.basis[x].label, alg.basis[y].label, alg.basis[z].label),
                    alg.format(total),
                    "0",
                )
            )

    _LOGGER.debug(
        "Validated %s: %d pairs, %d triples, %d violations",
        alg.name,
        report.pairs_checked,
        report.triples_checked,
        len(report.violations),
    )
    return report


def ensure_valid(alg: LieSuperAlgebra) -> LieSuperAlgebra:
    report = validate(alg)
    if not report.passed:
        msg = f"{alg.name} is not a Lie superalgebra: {report.first()}"
        _LOGGER.error(msg)
        raise AlgebraValidationError(msg, report)
    return alg


def build_gl(n: int) -> LieSuperAlgebra:
    """gl(n) on matrix units E_ab, graded by b - a."""
    if n < 1:
        msg = f"gl(n) needs n >= 1, got {n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    sep = "," if n >= 10 else ""
    units = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    index = {unit: i for i, unit in enumerate(units)}
    basis = [
        BasisElement(i, f"E_{{{a}{sep}{b}}}", EVEN, b - a) for i, (a, b) in enumerate(units)
    ]
    table: BracketTable = {}
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            value: Vector = {}
            if b == c:
                add_into(value, {index[(a, d)]: Fraction(1)})
            if d == a:
                add_into(value, {index[(c, b)]: Fraction(-1)})
            if value:
                table[(i, j)] = value
    _LOGGER.debug("Built gl(%d) with %d structure constants", n, len(table))
    return LieSuperAlgebra(f"gl({n})", basis, table, FAMILY_GL, n)


def build_sl(n: int) -> LieSuperAlgebra:
    """sl(n) on off-diagonal units E_ab and H_a = E_aa - E_{a+1,a+1}."""
    if n < 2:
        msg = f"sl(n) needs n >= 2, got {n}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    sep = "," if n >= 10 else ""
    off = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    basis = [BasisElement(i, f"E_{{{a}{sep}{b}}}", EVEN, b - a) for i, (a, b) in enumerate(off)]
    offset = len(off)
    basis += [BasisElement(offset + a - 1, f"H_{{{a}}}", EVEN, 0) for a in range(1, n)]
    unit_index = {unit: i for i, unit in enumerate(off)}

    def matrix(i: int) -> dict[tuple[int, int], int]:
        if i < offset:
            return {off[i]: 1}
        a = i - offset + 1
        return {(a, a): 1, (a + 1, a + 1): -1}

    def coordinates(m: Mapping[tuple[int, int], int]) -> Vector:
        vector: Vector = {}
        running = 0
        for (r, c), value in m.items():
            if r != c and value:
                vector[unit_index[(r, c)]] = Fraction(value)
        for a in range(1, n):
            running += m.get((a, a), 0)
            if running:
                vector[offset + a - 1] = Fraction(running)
        return vector

    matrices = [matrix(i) for i in range(len(basis))]
    table: BracketTable = {}
    for i, mi in enumerate(matrices):
        for j, mj in enumerate(matrices):
            product: dict[tuple[int, int], int] = {}
            for (r, s), u in mi.items():
                for (t, w), v in mj.items():
                    if s == t:
                        product[(r, w)] = product.get((r, w), 0) + u * v
                    if w == r:
                        product[(t, s)] = product.get((t, s), 0) - u * v
            value = coordinates(product)
            if value:
                table[(i, j)] = value
    return LieSuperAlgebra(f"sl({n})", basis, table, FAMILY_SL, n)


def load_custom(spec: Mapping[str, Any]) -> LieSuperAlgebra:
    """Build and validate an algebra from a structured description."""
    from .config import ALGEBRA_SCHEMA  # pylint: disable=import-outside-toplevel

    data = ALGEBRA_SCHEMA(dict(spec))
    basis = [
        BasisElement(i, entry["label"], PARITY_NAMES[entry["parity"]], entry.get("degree"))
        for i, entry in enumerate(data["basis"])
    ]
    labels = {element.label: element.index for element in basis}

    def lookup(label: str) -> int:
        if label not in labels:
            msg = f"bracket refers to unknown basis element {label!r}"
            _LOGGER.error(msg)
            raise AlgebraValidationError(msg)
        return labels[label]

    brackets: dict[tuple[int, int], Vector] = {}
    for entry in data["brackets"]:
        key = (lookup(entry["left"]), lookup(entry["right"]))
        value: Vector = {}
        for label, coeff in entry["result"].items():
            add_into(value, {lookup(label): as_scalar(coeff)})
        if key in brackets:
            msg = f"bracket [{entry['left']}, {entry['right']}] given twice"
            _LOGGER.error(msg)
            raise AlgebraValidationError(msg)
        brackets[key] = value
    alg = LieSuperAlgebra.from_brackets(
        data["name"], basis, brackets, data.get("family", FAMILY_CUSTOM), data.get("rank")
    )
    return ensure_valid(alg)


def basis_vector(index: int) -> Vector:
    return {index: Fraction(1)}


def span_vectors(alg: LieSuperAlgebra, items: Iterable[Mapping[str, Any] | str]) -> list[Vector]:
    """Parse labels or label->coefficient maps into vectors."""
    vectors: list[Vector] = []
    for item in items:
        if isinstance(item, str):
            vectors.append(basis_vector(alg.label_index(item)))
        else:
            vector: Vector = {}
            for label, coeff in item.items():
                add_into(vector, {alg.label_index(label): as_scalar(coeff)})
            vectors.append(vector)
    return vectors
