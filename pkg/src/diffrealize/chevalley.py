"""Chevalley bases of the simply-laced simple Lie algebras A_n, D_n and E_n.

Structure constants come from a bimultiplicative sign function on the root
lattice: with E_alpha the root vectors,

    [E_a, E_-a] = -h_a,   [E_a, E_b] = eps(a, b) E_{a+b}   (a + b a root)

and the Chevalley basis is x_a = E_a for positive a, x_a = -E_a for negative
a, so that [x_a, x_-a] = h_a. Every N_{a,b} is then +-1.
"""

import logging
from fractions import Fraction

import sympy

from .const import EVEN, FAMILY_A, FAMILY_D, FAMILY_E, SIMPLY_LACED_FAMILIES
from .errors import DomainError
from .liealg import BasisElement, BracketTable, LieSuperAlgebra, Vector, add_into

_LOGGER: logging.Logger = logging.getLogger(__package__)

Root = tuple[int, ...]


def _check_rank(family: str, rank: int) -> None:
    if family not in SIMPLY_LACED_FAMILIES:
        msg = f"unknown simply-laced family {family!r}, expected one of {SIMPLY_LACED_FAMILIES}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    valid = {
        FAMILY_A: rank >= 1,
        FAMILY_D: rank >= 3,
        FAMILY_E: rank in (6, 7, 8),
    }[family]
    if not valid:
        msg = f"invalid rank {rank} for family {family}"
        _LOGGER.error(msg)
        raise DomainError(msg)


def cartan_matrix(family: str, rank: int) -> sympy.Matrix:
    """Cartan matrix in Bourbaki numbering."""
    _check_rank(family, rank)
    edges: list[tuple[int, int]]
    if family == FAMILY_A:
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif family == FAMILY_D:
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    else:
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, rank - 1)]
    matrix = sympy.eye(rank) * 2
    for i, j in edges:
        matrix[i, j] = -1
        matrix[j, i] = -1
    return matrix


CartanRows = list[list[int]]


def cartan_rows(cartan: sympy.Matrix) -> CartanRows:
    """Plain integer copy of a Cartan matrix for the inner loops."""
    return [[int(cartan[i, j]) for j in range(cartan.shape[1])] for i in range(cartan.shape[0])]


def inner(rows: CartanRows, a: Root, b: Root) -> int:
    """Invariant form (a|b) on simple-root coordinates."""
    total = 0
    for i, row in enumerate(rows):
        if a[i]:
            total += a[i] * sum(row[j] * b[j] for j in range(len(row)) if b[j])
    return total


def dynkin_labels(cartan: sympy.Matrix, root: Root) -> tuple[int, ...]:
    """Pairings <root, a_i^v> of a root in simple-root coordinates."""
    return tuple(int(c) for c in sympy.Matrix([root]) * cartan)


def positive_roots(cartan: sympy.Matrix) -> list[Root]:
    """Positive roots ordered by height, then lexicographically.

    In the simply-laced case a + a_i is a root exactly when <a, a_i^v> = -1.
    """
    rank = cartan.rows
    simple: list[Root] = [tuple(int(c) for c in sympy.eye(rank).row(i)) for i in range(rank)]
    found: set[Root] = set(simple)
    layer = list(simple)
    while layer:
        following: set[Root] = set()
        for root in layer:
            labels = dynkin_labels(cartan, root)
            for i in range(rank):
                if labels[i] == -1:
                    raised = tuple(c + (1 if k == i else 0) for k, c in enumerate(root))
                    if raised not in found:
                        following.add(raised)
        found.update(following)
        layer = sorted(following)
    return sorted(found, key=lambda r: (sum(r), r))


def epsilon(rows: CartanRows, a: Root, b: Root) -> int:
    """Bimultiplicative sign with eps(a_i, a_i) = -1 and eps(a_i, a_j) = -1 for linked i < j."""
    rank = len(rows)
    flips = 0
    for i in range(rank):
        if not a[i]:
            continue
        for j in range(rank):
            if b[j] and (i == j or (i < j and rows[i][j] == -1)):
                flips += a[i] * b[j]
    return -1 if flips % 2 else 1


def build_simply_laced(family: str, rank: int) -> LieSuperAlgebra:
    """Chevalley basis {e_a, h_i, f_a} graded by root height."""
    cartan = cartan_matrix(family, rank)
    positive = positive_roots(cartan)
    rows = cartan_rows(cartan)
    roots: list[Root] = positive + [tuple(-c for c in r) for r in positive]
    n_pos = len(positive)

    def label(root: Root) -> str:
        name = "e" if sum(root) > 0 else "f"
        if rank == 1:
            return name
        return f"{name}_{{{''.join(str(abs(c)) for c in root)}}}"

    basis: list[BasisElement] = []
    root_index: dict[Root, int] = {}
    for root in positive:
        root_index[root] = len(basis)
        basis.append(BasisElement(len(basis), label(root), EVEN, sum(root)))
    cartan_offset = len(basis)
    for i in range(rank):
        basis.append(
            BasisElement(len(basis), "h" if rank == 1 else f"h_{{{i + 1}}}", EVEN, 0)
        )
    for root in roots[n_pos:]:
        root_index[root] = len(basis)
        basis.append(BasisElement(len(basis), label(root), EVEN, sum(root)))

    def scale(root: Root) -> int:
        return 1 if sum(root) > 0 else -1

    def coroot(root: Root) -> Vector:
        return {cartan_offset + i: Fraction(c) for i, c in enumerate(root) if c}

    table: BracketTable = {}
    for a in roots:
        ia = root_index[a]
        for i in range(rank):
            weight = inner(rows, tuple(1 if k == i else 0 for k in range(rank)), a)
            if weight:
                table[(cartan_offset + i, ia)] = {ia: Fraction(weight)}
                table[(ia, cartan_offset + i)] = {ia: Fraction(-weight)}
        for b in roots:
            total = tuple(x + y for x, y in zip(a, b, strict=True))
            if not any(total):
                table[(ia, root_index[b])] = coroot(a)
            elif total in root_index:
                sign = scale(a) * scale(b) * scale(total) * epsilon(rows, a, b)
                value: Vector = {}
                add_into(value, {root_index[total]: Fraction(sign)})
                table[(ia, root_index[b])] = value

    name = f"{family}_{rank}"
    _LOGGER.debug("Built %s: %d roots, dimension %d", name, len(roots), len(basis))
    return LieSuperAlgebra(name, basis, table, family, rank)
