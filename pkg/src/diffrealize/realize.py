"""Differential operators realizing coinduced and induced modules.

Given phi(X, g) and h(X, g) for every basis element g, the coinduced module
S(g_-)* (x) V is acted on by first-order operators

    T(g) = sum_i phi^i(-X, g) d/dX^i + rho^(h(-X, g))

and the induced module S(g_-) (x) V by operators of finite order (after
truncation)

    I(g) = sum_i (-1)^{(1+|g|)|P_i|} P_i phi^i(D~, g) + rho^(h(D~, g))

where D~ substitutes (-1)^{|X^i|} d/dP_i for X^i. All derivatives are left
derivatives.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import ring as poly_ring

from .const import (
    EVEN,
    MODULE_COINDUCED,
    MODULE_INDUCED,
    REP_ADJOINT,
    REP_CHARACTER,
    REP_CUSTOM,
    WEIGHT_SYMBOL,
)
from .decomp import Decomposition
from .errors import DomainError, RepresentationError, TruncationError
from .scalars import as_scalar
from .series import PhiH
from .superpoly import Monomial, SuperPoly, VariableSet, monomials_up_to, pair, strike

_LOGGER: logging.Logger = logging.getLogger(__package__)

MatrixKey = tuple[int, int]
OpKey = tuple[Monomial, MatrixKey, Monomial]
Matrix = dict[MatrixKey, Any]


class WeightRing:
    """Polynomial ring Q[lambda_1, ..., lambda_r] holding symbolic weights."""

    def __init__(self, count: int = 1, symbol: str = WEIGHT_SYMBOL) -> None:
        self.count = max(count, 1)
        self.names: tuple[str, ...] = tuple(f"{symbol}_{k + 1}" for k in range(self.count))
        created = poly_ring(",".join(self.names), QQ)
        self.ring = created[0]
        self.gens: tuple[Any, ...] = tuple(created[1:])

    def __repr__(self) -> str:
        return f"WeightRing({', '.join(self.names)})"

    @property
    def zero(self) -> Any:
        return self.ring.zero

    @property
    def one(self) -> Any:
        return self.ring.one

    def scalar(self, value: Fraction | int) -> Any:
        value = Fraction(value)
        return self.ring.ground_new(QQ(value.numerator, value.denominator))

    def gen(self, k: int) -> Any:
        return self.gens[k]

    def parse(self, text: str) -> Any:
        """Parse an entry such as ``"lambda_1 + 1/2"``."""
        local = {name: sympy.Symbol(name) for name in self.names}
        try:
            expr = sympy.sympify(text, locals=local)
            return self.ring.from_expr(expr)
        except (sympy.SympifyError, ValueError, TypeError) as e:
            msg = f"cannot read {text!r} as a polynomial in {', '.join(self.names)}"
            _LOGGER.error(msg)
            raise RepresentationError(msg) from e

    def coefficients(self, value: Any) -> list[tuple[tuple[int, ...], Fraction]]:
        """Exponent vectors and rational coefficients, in sorted order."""
        result = []
        for monom, coeff in value.terms():
            rational = QQ.to_sympy(coeff)
            result.append((tuple(monom), Fraction(int(rational.p), int(rational.q))))
        return sorted(result)

    def from_coefficients(self, items: Iterable[tuple[Sequence[int], Fraction]]) -> Any:
        value = self.ring.zero
        for exponents, coeff in items:
            term = self.scalar(coeff)
            for k, power in enumerate(exponents):
                if power:
                    term = term * self.gens[k] ** power
            value = value + term
        return value

    def constant_value(self, value: Any) -> Fraction | None:
        """The rational value of a constant polynomial, otherwise None."""
        items = self.coefficients(value)
        if not items:
            return Fraction(0)
        if len(items) == 1 and not any(items[0][0]):
            return items[0][1]
        return None


def _matmul(left: Matrix, right: Matrix, zero: Any) -> Matrix:
    result: Matrix = {}
    for (r, s), a in left.items():
        for (t, u), b in right.items():
            if s == t:
                value = result.get((r, u), zero) + a * b
                if value:
                    result[(r, u)] = value
                else:
                    result.pop((r, u), None)
    return result


def _matadd(target: Matrix, source: Matrix, factor: Any) -> None:
    for key, value in source.items():
        total = target[key] + value * factor if key in target else value * factor
        if total:
            target[key] = total
        else:
            target.pop(key, None)


@dataclass(slots=True)
class HRepresentation:
    """A representation rho of h on a finite-dimensional super vector space V."""

    kind: str
    decomp: Decomposition
    weights: WeightRing
    parities: tuple[int, ...]
    labels: tuple[str, ...]
    matrices: dict[int, Matrix]

    @property
    def dim(self) -> int:
        return len(self.parities)

    def matrix(self, index: int) -> Matrix:
        return self.matrices.get(index, {})

    def matrix_parity(self, key: MatrixKey) -> int:
        return (self.parities[key[0]] + self.parities[key[1]]) % 2

    def identity(self) -> Matrix:
        return {(j, j): self.weights.one for j in range(self.dim)}

    def rho(self, vector: Mapping[int, Fraction]) -> Matrix:
        """rho extended linearly to h-vectors."""
        result: Matrix = {}
        for k, c in vector.items():
            _matadd(result, self.matrix(k), self.weights.scalar(c))
        return result

    def failures(self) -> list[str]:
        """Violations of the representation and parity axioms on basis pairs."""
        alg = self.decomp.algebra
        zero = self.weights.zero
        problems: list[str] = []
        for b in self.decomp.h_indices:
            for (r, s) in self.matrix(b):
                if self.matrix_parity((r, s)) != alg.parity(b):
                    problems.append(
                        f"rho({alg.basis[b].label}) has entry ({r}, {s}) of the wrong parity"
                    )
        h = self.decomp.h_indices
        for x, a in enumerate(h):
            for b in h[x:]:
                bracket = alg.bracket_basis(a, b)
                lhs = self.rho(bracket)
                rhs = _matmul(self.matrix(a), self.matrix(b), zero)
                sign = -1 if alg.parity(a) * alg.parity(b) else 1
                swapped = _matmul(self.matrix(b), self.matrix(a), zero)
                _matadd(rhs, swapped, self.weights.scalar(-sign))
                if lhs != rhs:
                    problems.append(
                        f"rho([{alg.basis[a].label}, {alg.basis[b].label}]) != "
                        f"[rho({alg.basis[a].label}), rho({alg.basis[b].label})]"
                    )
        return problems

    def validated(self) -> "HRepresentation":
        problems = self.failures()
        if problems:
            msg = f"not a representation of h: {problems[0]}"
            _LOGGER.error(msg)
            raise RepresentationError(msg)
        return self

    def dual(self) -> "HRepresentation":
        """Contragredient representation on V*."""
        alg = self.decomp.algebra
        matrices: dict[int, Matrix] = {}
        for b, matrix in self.matrices.items():
            dual_matrix: Matrix = {}
            for (r, s), value in matrix.items():
                odd = alg.parity(b) * self.parities[r]
                dual_matrix[(s, r)] = value if odd else -value
            matrices[b] = dual_matrix
        return HRepresentation(
            f"{self.kind}*",
            self.decomp,
            self.weights,
            self.parities,
            tuple(f"{label}^*" for label in self.labels),
            matrices,
        )


def character_support(decomp: Decomposition) -> list[int]:
    """Even h basis elements not occurring in [h, h]: where a character may be nonzero."""
    alg = decomp.algebra
    derived: set[int] = set()
    for a in decomp.h_indices:
        for b in decomp.h_indices:
            derived.update(alg.bracket_basis(a, b))
    return [b for b in decomp.h_indices if alg.parity(b) == EVEN and b not in derived]


def make_character(
    decomp: Decomposition,
    weight_values: Sequence[Any] | None = None,
    values: Mapping[str, Any] | None = None,
) -> HRepresentation:
    """One-dimensional representation of h.

    ``weight_values`` gives the weight on each element of ``character_support``
    in order; ``None`` (for the list or an entry) means a symbolic lambda_k.
    ``values`` assigns explicit values by basis label.
    """
    alg = decomp.algebra
    support = character_support(decomp)
    if weight_values is not None and len(weight_values) != len(support):
        msg = (
            f"{len(support)} weight values expected for "
            f"{', '.join(alg.basis[b].label for b in support)}, got {len(weight_values)}"
        )
        _LOGGER.error(msg)
        raise RepresentationError(msg)
    entries = list(weight_values) if weight_values is not None else [None] * len(support)
    weights = WeightRing(sum(1 for entry in entries if entry is None))
    matrices: dict[int, Matrix] = {}
    symbol = 0
    for b, entry in zip(support, entries, strict=True):
        if entry is None:
            value = weights.gen(symbol)
            symbol += 1
        elif isinstance(entry, str) and not _is_rational_text(entry):
            value = weights.parse(entry)
        else:
            value = weights.scalar(as_scalar(entry))
        if value:
            matrices[b] = {(0, 0): value}
    for label, entry in (values or {}).items():
        b = alg.label_index(label)
        if b not in decomp.h_indices:
            msg = f"{label} is not in h"
            _LOGGER.error(msg)
            raise RepresentationError(msg)
        value = weights.parse(entry) if isinstance(entry, str) else weights.scalar(entry)
        if value:
            matrices[b] = {(0, 0): value}
        else:
            matrices.pop(b, None)
    rep = HRepresentation(REP_CHARACTER, decomp, weights, (EVEN,), ("v",), matrices)
    return rep.validated()


def _is_rational_text(text: str) -> bool:
    try:
        Fraction(text.strip())
    except ValueError:
        return False
    return True


def make_adjoint(decomp: Decomposition, target: str = "g") -> HRepresentation:
    """h acting on g (``target="g"``) or on itself (``target="h"``) by the bracket."""
    alg = decomp.algebra
    if target == "g":
        space = list(range(alg.dim))
    elif target == "h":
        space = list(decomp.h_indices)
    else:
        msg = f"adjoint target must be 'g' or 'h', got {target!r}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    position = {index: k for k, index in enumerate(space)}
    weights = WeightRing()
    matrices: dict[int, Matrix] = {}
    for b in decomp.h_indices:
        matrix: Matrix = {}
        for s in space:
            for t, c in alg.bracket_basis(b, s).items():
                matrix[(position[t], position[s])] = weights.scalar(c)
        if matrix:
            matrices[b] = matrix
    rep = HRepresentation(
        REP_ADJOINT,
        decomp,
        weights,
        tuple(alg.parity(i) for i in space),
        tuple(alg.basis[i].label for i in space),
        matrices,
    )
    return rep.validated()


def make_custom(decomp: Decomposition, spec: Mapping[str, Any]) -> HRepresentation:
    """Matrix representation from a structured description."""
    from .config import REPRESENTATION_SCHEMA  # pylint: disable=import-outside-toplevel

    data = REPRESENTATION_SCHEMA(dict(spec))
    alg = decomp.algebra
    dimension = data["dimension"]
    parities = tuple(data.get("parities") or [EVEN] * dimension)
    labels = tuple(data.get("labels") or [f"v_{{{k + 1}}}" for k in range(dimension)])
    if len(parities) != dimension or len(labels) != dimension:
        msg = f"parities and labels must have length {dimension}"
        _LOGGER.error(msg)
        raise RepresentationError(msg)
    weights = WeightRing(data["symbols"])
    matrices: dict[int, Matrix] = {}
    for label, rows in data["matrices"].items():
        b = alg.label_index(label)
        if b not in decomp.h_indices:
            msg = f"{label} is not in h"
            _LOGGER.error(msg)
            raise RepresentationError(msg)
        if len(rows) != dimension or any(len(row) != dimension for row in rows):
            msg = f"matrix of {label} must be {dimension}x{dimension}"
            _LOGGER.error(msg)
            raise RepresentationError(msg)
        matrix: Matrix = {}
        for r, row in enumerate(rows):
            for s, entry in enumerate(row):
                value = weights.parse(str(entry))
                if value:
                    matrix[(r, s)] = value
        matrices[b] = matrix
    rep = HRepresentation(REP_CUSTOM, decomp, weights, parities, labels, matrices)
    return rep.validated()


class DiffOperator:
    """Sum of terms f(x) (1 (x) A) d^alpha in normal order.

    A term key ``(mono, (r, s), alpha)`` stands for the monomial ``mono``
    times the matrix unit E_rs on V times the ordered derivative ``alpha``.
    """

    __slots__ = ("domain", "parity", "rep", "terms", "truncation", "variables")

    def __init__(
        self,
        variables: VariableSet,
        rep: HRepresentation,
        terms: Mapping[OpKey, Any] | None = None,
        parity: int = EVEN,
        domain: str = MODULE_COINDUCED,
        truncation: int | None = None,
    ) -> None:
        self.variables = variables
        self.rep = rep
        self.parity = parity
        self.domain = domain
        self.truncation = truncation
        self.terms: dict[OpKey, Any] = {k: v for k, v in (terms or {}).items() if v}

    def __repr__(self) -> str:
        return f"DiffOperator({self.domain}, {len(self.terms)} terms)"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def _like(self, terms: Mapping[OpKey, Any], parity: int | None = None) -> "DiffOperator":
        return DiffOperator(
            self.variables,
            self.rep,
            terms,
            self.parity if parity is None else parity,
            self.domain,
            self.truncation,
        )

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        terms = dict(self.terms)
        for key, value in other.terms.items():
            total = terms[key] + value if key in terms else value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return self._like(terms)

    def __neg__(self) -> "DiffOperator":
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, factor: Any) -> "DiffOperator":
        return self._like({k: v * factor for k, v in self.terms.items()})

    def order(self) -> int:
        return max((len(alpha) for _, _, alpha in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[OpKey, Any]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][2], item[0][0], item[0][1]))


def compose(left: DiffOperator, right: DiffOperator) -> DiffOperator:
    """Operator product left o right, brought back to normal order."""
    variables = left.variables
    rep = left.rep
    parities = variables.parities
    terms: dict[OpKey, Any] = {}

    for (f_mono, m_key, alpha), f_coeff in left.terms.items():
        current: dict[OpKey, Any] = dict(right.terms)
        for a in reversed(alpha):
            moved: dict[OpKey, Any] = {}
            for (g_mono, n_key, beta), coeff in current.items():
                struck = strike(variables, g_mono, a)
                if struck is not None:
                    factor, rest = struck
                    _add_term(moved, (rest, n_key, beta), coeff * factor)
                normal = variables.normalize((a, *beta))
                if normal is None:
                    continue
                sign, new_beta = normal
                flips = parities[a] * (
                    variables.monomial_parity(g_mono) + rep.matrix_parity(n_key)
                )
                _add_term(moved, (g_mono, n_key, new_beta), coeff * (-sign if flips % 2 else sign))
            current = moved
        m_parity = rep.matrix_parity(m_key)
        for (g_mono, n_key, beta), coeff in current.items():
            if m_key[1] != n_key[0]:
                continue
            product = variables.multiply(f_mono, g_mono)
            if product is None:
                continue
            sign, mono = product
            if m_parity * variables.monomial_parity(g_mono):
                sign = -sign
            value = f_coeff * coeff
            _add_term(terms, (mono, (m_key[0], n_key[1]), beta), value if sign > 0 else -value)
    return left._like(terms, (left.parity + right.parity) % 2)  # pylint: disable=protected-access


def _add_term(terms: dict[OpKey, Any], key: OpKey, value: Any) -> None:
    if not value:
        return
    total = terms[key] + value if key in terms else value
    if total:
        terms[key] = total
    else:
        terms.pop(key, None)


def supercommutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """[A, B] = A B - (-1)^{|A||B|} B A."""
    if a.domain != b.domain:
        msg = f"cannot commute a {a.domain} operator with a {b.domain} operator"
        _LOGGER.error(msg)
        raise DomainError(msg)
    if a.parity * b.parity:
        return compose(a, b) + compose(b, a)
    return compose(a, b) - compose(b, a)


def apply(op: DiffOperator, element: SuperPoly) -> SuperPoly:
    """Action of ``op`` on a V-valued polynomial (components are V indices)."""
    variables = op.variables
    rep = op.rep
    result: dict[tuple[Monomial, Any], Any] = {}
    for (mono, (r, s), alpha), op_coeff in op.terms.items():
        for (n, j), coeff in element.terms.items():
            if j != s:
                continue
            factor = 1
            current: Monomial | None = n
            for a in reversed(alpha):
                assert current is not None
                struck = strike(variables, current, a)
                if struck is None:
                    current = None
                    break
                step, current = struck
                factor *= step
            if current is None or not factor:
                continue
            if rep.matrix_parity((r, s)) * variables.monomial_parity(current):
                factor = -factor
            product = variables.multiply(mono, current)
            if product is None:
                continue
            sign, new_mono = product
            if element.truncation is not None and len(new_mono) > element.truncation:
                msg = (
                    f"operator output of degree {len(new_mono)} exceeds "
                    f"truncation {element.truncation}"
                )
                _LOGGER.error(msg)
                raise TruncationError(msg)
            value = op_coeff * coeff * (factor * sign)
            key = (new_mono, r)
            total = result[key] + value if key in result else value
            if total:
                result[key] = total
            else:
                result.pop(key, None)
    return SuperPoly(variables, result, element.truncation)


def coinduced_operator(generator: int, phi_h: PhiH, rep: HRepresentation) -> DiffOperator:
    """T(g) = sum_i phi^i(-X, g) d_i + rho^(h(-X, g))."""
    decomp = rep.decomp
    weights = rep.weights
    variables = phi_h.phi.variables
    position = decomp.minus_position()
    terms: dict[OpKey, Any] = {}
    identity = rep.identity()
    for (mono, component), c in phi_h.phi.terms.items():
        value = weights.scalar(-c if len(mono) % 2 else c)
        for key in identity:
            _add_term(terms, (mono, key, (position[component],)), value)
    for (mono, component), c in phi_h.h_part.terms.items():
        value = weights.scalar(-c if len(mono) % 2 else c)
        for key, entry in rep.matrix(component).items():
            _add_term(terms, (mono, key, ()), value * entry)
    return DiffOperator(
        variables,
        rep,
        terms,
        decomp.algebra.parity(generator),
        MODULE_COINDUCED,
    )


def induced_variables(decomp: Decomposition) -> VariableSet:
    """Indeterminates P_i of S(g_-), named after the g_- basis."""
    alg = decomp.algebra
    return VariableSet(
        [alg.parity(i) for i in decomp.minus_indices],
        [alg.basis[i].label for i in decomp.minus_indices],
    )


def induced_operator(
    generator: int, phi_h: PhiH, rep: HRepresentation, truncation: int | None = None
) -> DiffOperator:
    """I(g) with X^i replaced by (-1)^{|X^i|} d/dP_i."""
    decomp = rep.decomp
    weights = rep.weights
    variables = induced_variables(decomp)
    position = decomp.minus_position()
    g_parity = decomp.algebra.parity(generator)
    identity = rep.identity()
    terms: dict[OpKey, Any] = {}
    for (mono, component), c in phi_h.phi.terms.items():
        i = position[component]
        odd = sum(variables.parities[k] for k in mono)
        flips = odd + (1 + g_parity) * variables.parities[i]
        value = weights.scalar(-c if flips % 2 else c)
        for key in identity:
            _add_term(terms, ((i,), key, mono), value)
    for (mono, component), c in phi_h.h_part.terms.items():
        odd = sum(variables.parities[k] for k in mono)
        flips = odd + decomp.algebra.parity(component) * (odd % 2)
        value = weights.scalar(-c if flips % 2 else c)
        for key, entry in rep.matrix(component).items():
            _add_term(terms, ((), key, mono), value * entry)
    return DiffOperator(
        variables,
        rep,
        terms,
        g_parity,
        MODULE_INDUCED,
        phi_h.truncation if truncation is None else truncation,
    )


@dataclass(slots=True)
class Realization:
    """Operators for every basis element of g on one module."""

    module: str
    decomp: Decomposition
    rep: HRepresentation
    operators: dict[int, DiffOperator] = field(default_factory=dict)
    truncation: int | None = None
    truncated: bool = False

    @property
    def variables(self) -> VariableSet:
        return next(iter(self.operators.values())).variables

    def operator_for_vector(self, vector: Mapping[int, Fraction]) -> DiffOperator:
        """Linear combination sum_k c_k R(e_k)."""
        result: DiffOperator | None = None
        for k, c in sorted(vector.items()):
            term = self.operators[k].scale(self.rep.weights.scalar(c))
            result = term if result is None else result + term
        if result is None:
            any_op = next(iter(self.operators.values()))
            return any_op._like({}, EVEN)  # pylint: disable=protected-access
        return result


def build_realization(
    module: str,
    rep: HRepresentation,
    phi_hs: Mapping[int, PhiH],
    truncation: int | None = None,
) -> Realization:
    realization = Realization(module, rep.decomp, rep, truncation=truncation)
    for generator in sorted(phi_hs):
        phi_h = phi_hs[generator]
        realization.truncated = realization.truncated or phi_h.truncated
        if module == MODULE_COINDUCED:
            realization.operators[generator] = coinduced_operator(generator, phi_h, rep)
        else:
            realization.operators[generator] = induced_operator(generator, phi_h, rep, truncation)
    _LOGGER.debug(
        "Assembled %d %s operators over %s", len(realization.operators), module, rep.kind
    )
    return realization


def _basis_elements(
    variables: VariableSet, rep: HRepresentation, degree: int, weights: WeightRing
) -> list[tuple[Monomial, int, SuperPoly]]:
    elements = []
    for mono in monomials_up_to(variables, degree):
        for j in range(rep.dim):
            elements.append((mono, j, SuperPoly(variables, {(mono, j): weights.one})))
    return elements


def pair_duality_check(
    coinduced: Realization, induced: Realization, truncation: int
) -> tuple[bool, str | None]:
    """Check <T(g) f, m> = -(-1)^{|g||f|} <f, I(g) m> on monomials up to ``truncation``.

    ``coinduced`` must be built over the dual of the representation used for
    ``induced``. The pairing is <f (x) xi, m (x) v> = (-1)^{|xi||m|} <f(-X), m> xi(v).
    """
    x_vars = coinduced.variables
    p_vars = induced.variables
    rep = induced.rep
    weights = rep.weights
    x_elements = _basis_elements(x_vars, rep, truncation, weights)
    p_elements = _basis_elements(p_vars, rep, truncation, weights)

    def pairing(f: SuperPoly, m: SuperPoly) -> Any:
        total = weights.zero
        for j in range(rep.dim):
            f_j = f.component(j)
            m_j = m.component(j)
            if not f_j or not m_j:
                continue
            for (mono, _), value in m_j.terms.items():
                flipped = rep.parities[j] * p_vars.monomial_parity(mono)
                single = SuperPoly(p_vars, {(mono, None): value})
                contribution = pair(_negated(f_j, p_vars), single)
                if contribution:
                    total = total + (-contribution if flipped else contribution)
        return total

    for g in sorted(induced.operators):
        g_parity = induced.decomp.algebra.parity(g)
        t_op = coinduced.operators[g]
        i_op = induced.operators[g]
        images = {(mono, j): apply(i_op, m) for mono, j, m in p_elements}
        for f_mono, f_j, f in x_elements:
            tf = apply(t_op, f)
            f_parity = (x_vars.monomial_parity(f_mono) + rep.parities[f_j]) % 2
            for m_mono, m_j, m in p_elements:
                lhs = pairing(tf, m)
                rhs = pairing(f, images[(m_mono, m_j)])
                if (g_parity * f_parity) % 2 == 0:
                    rhs = -rhs
                if lhs != rhs:
                    label = induced.decomp.algebra.basis[g].label
                    f_text = _monomial_text(x_vars, f_mono)
                    detail = (
                        f"g={label}, f={f_text} (x) {coinduced.rep.labels[f_j]}, "
                        f"m={_monomial_text(p_vars, m_mono)} (x) {rep.labels[m_j]}"
                    )
                    return False, detail
    return True, None


def _negated(f: SuperPoly, variables: VariableSet) -> SuperPoly:
    """f(-X) re-expressed over ``variables`` so it pairs with P-side elements."""
    return SuperPoly(
        variables,
        {(mono, None): (-c if len(mono) % 2 else c) for (mono, _), c in f.terms.items()},
        f.truncation,
    )


def _monomial_text(variables: VariableSet, mono: Monomial) -> str:
    return " ".join(variables.names[i] for i in mono) or "1"
