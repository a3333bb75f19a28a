"""Closed-form operator series for phi(X, g) and h(X, g).

Everything is expressed through the single operator D = ad XP acting on
g-valued polynomials, where XP = sum_i X^i (x) P_i pairs the g_- basis with
its dual indeterminates. The two generating functions used are

    G(t) = t / (e^{-t} - 1)        and     E(t) = (e^{-t} - 1) / t = 1 / G(t)

When g_- is a subalgebra

    h   = Pi_h e^{-D} g
    phi = -G(D) Pi_- e^{-D} g

In general phi solves Pi_- E(D) phi = -Pi_- e^{-D} g and h solves
Pi_h G(D) h = Pi_h G(D) e^{-D} g; both are inverted order by order in the
X-degree.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .decomp import Decomposition
from .errors import EngineMisuseError, TruncationError
from .liealg import Vector
from .scalars import exp_neg_coeffs, exp_quotient_coeffs, neg_exp_quotient_coeffs
from .superpoly import Key, SuperPoly, VariableSet

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(slots=True)
class PhiH:
    """The pair (phi, h) for one generator, with truncation metadata."""

    generator: int
    phi: SuperPoly
    h_part: SuperPoly
    truncation: int
    truncated: bool = False

    def degree(self) -> int:
        return max(self.phi.degree(), self.h_part.degree())


class AdXP:
    """The operator ad XP on SuperPoly<g> with a hard degree cap."""

    __slots__ = ("_action", "decomp", "overflowed", "truncation", "variables")

    def __init__(self, decomp: Decomposition, truncation: int) -> None:
        if truncation < 0:
            msg = f"truncation must be non-negative, got {truncation}"
            _LOGGER.error(msg)
            raise TruncationError(msg)
        self.decomp = decomp
        self.truncation = truncation
        self.variables: VariableSet = decomp.dual_variables()
        self.overflowed = False
        alg = decomp.algebra
        self._action: list[list[tuple[int, int, Fraction]]] = []
        for s in range(alg.dim):
            column = []
            for position, p_index in enumerate(decomp.minus_indices):
                for t, c in sorted(alg.bracket_basis(p_index, s).items()):
                    column.append((position, t, c))
            self._action.append(column)

    def constant(self, vector: Vector) -> SuperPoly:
        return SuperPoly(
            self.variables, {((), k): c for k, c in vector.items()}, self.truncation
        )

    def __call__(self, value: SuperPoly) -> SuperPoly:
        """D(X^m (x) e_s) = sum_i X^m X^i (x) [P_i, e_s]."""
        terms: dict[Key, Fraction] = {}
        variables = self.variables
        for (mono, s), coeff in value.terms.items():
            column = self._action[s]
            if not column:
                continue
            if len(mono) + 1 > self.truncation:
                self.overflowed = True
                continue
            for position, t, c in column:
                product = variables.append(mono, position)
                if product is None:
                    continue
                sign, new_mono = product
                key = (new_mono, t)
                total = terms.get(key, Fraction(0)) + (c * coeff if sign > 0 else -c * coeff)
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        return SuperPoly(variables, terms, self.truncation)

    def apply_series(self, coeffs: Sequence[Fraction], value: SuperPoly) -> SuperPoly:
        """sum_n coeffs[n] D^n value, stopping when D^n vanishes.

        When the coefficients run out before D^n vanishes, one more power is
        taken so that a dropped tail raises the overflow flag.
        """
        result = value.scale(coeffs[0])
        power = value
        for n in range(1, len(coeffs)):
            power = self(power)
            if not power:
                break
            result = result + power.scale(coeffs[n])
        else:
            if power and self._tail_nonzero(power):
                self.overflowed = True
        return result

    def _tail_nonzero(self, power: SuperPoly) -> bool:
        """Whether D applied to power has a nonzero term, ignoring the cap."""
        tail: dict[Key, Fraction] = {}
        for (mono, s), coeff in power.terms.items():
            for position, t, c in self._action[s]:
                product = self.variables.append(mono, position)
                if product is None:
                    continue
                sign, new_mono = product
                key = (new_mono, t)
                tail[key] = tail.get(key, Fraction(0)) + (c * coeff if sign > 0 else -c * coeff)
        return any(tail.values())


class SeriesEngine:
    """Evaluates phi and h by the closed-form series."""

    def __init__(self, decomp: Decomposition, truncation: int) -> None:
        self.decomp = decomp
        self.truncation = truncation
        self.ad = AdXP(decomp, truncation)

    @property
    def variables(self) -> VariableSet:
        return self.ad.variables

    def ad_xp(self, value: SuperPoly) -> SuperPoly:
        return self.ad(value)

    def exp_neg_ad(self, g: Vector) -> SuperPoly:
        """e^{-D} g = sum_n (-1)^n D^n g / n!."""
        return self.ad.apply_series(exp_neg_coeffs(self.truncation), self.ad.constant(g))

    def phi_h_subalgebra(self, g: Vector, generator: int = -1) -> PhiH:
        if not self.decomp.is_subalgebra:
            msg = (
                f"g_- is not a subalgebra in {self.decomp.algebra.name}; "
                "use the general-case engine"
            )
            _LOGGER.error(msg)
            raise EngineMisuseError(msg)
        self.ad.overflowed = False
        expanded = self.exp_neg_ad(g)
        h_part = self.decomp.project_h(expanded)
        minus = self.decomp.project_minus(expanded)
        phi = -self.ad.apply_series(neg_exp_quotient_coeffs(self.truncation), minus)
        return PhiH(generator, phi, h_part, self.truncation, self.ad.overflowed)

    def phi_h_general(self, g: Vector, generator: int = -1) -> PhiH:
        self.ad.overflowed = False
        order = self.truncation
        expanded = self.exp_neg_ad(g)

        correction = list(exp_quotient_coeffs(order))
        correction[0] = Fraction(0)
        phi_start = self.decomp.project_minus(expanded)
        phi = phi_start
        for _ in range(order + 1):
            updated = phi_start + self.decomp.project_minus(self.ad.apply_series(correction, phi))
            if updated == phi:
                break
            phi = updated

        quotient = neg_exp_quotient_coeffs(order)
        shift = list(quotient)
        shift[0] = Fraction(0)
        h_start = -self.decomp.project_h(self.ad.apply_series(quotient, expanded))
        h_part = h_start
        for _ in range(order + 1):
            updated = h_start + self.decomp.project_h(self.ad.apply_series(shift, h_part))
            if updated == h_part:
                break
            h_part = updated
        return PhiH(generator, phi, h_part, self.truncation, self.ad.overflowed)

    def phi_h(self, g: Vector, generator: int = -1) -> PhiH:
        if self.decomp.is_subalgebra:
            return self.phi_h_subalgebra(g, generator)
        return self.phi_h_general(g, generator)

    def verify_defining_identity(self, g: Vector, phi: SuperPoly, h_part: SuperPoly) -> bool:
        """Check phi P - G(D) h = -G(D) e^{-D} g through the truncation degree."""
        quotient = neg_exp_quotient_coeffs(self.truncation)
        lhs = phi.truncate(self.truncation) - self.ad.apply_series(
            quotient, h_part.truncate(self.truncation)
        )
        rhs = -self.ad.apply_series(quotient, self.exp_neg_ad(g))
        difference = (lhs - rhs).upto(self.truncation)
        if difference:
            _LOGGER.debug("Defining identity fails with residual %s", difference)
        return not difference


def default_truncation(decomp: Decomposition, generators: Sequence[int] | None = None) -> int:
    """l + max degree of the requested generators, for graded algebras."""
    alg = decomp.algebra
    if not alg.is_graded:
        msg = f"{alg.name} is not graded; an explicit truncation is required"
        _LOGGER.error(msg)
        raise TruncationError(msg)
    indices = range(alg.dim) if generators is None else generators
    return alg.depth() + max((alg.degree(i) for i in indices), default=0)


def degree_bound(decomp: Decomposition, generator: int) -> int:
    """Upper bound l + d on the X-degree of phi and h for g in degree d."""
    alg = decomp.algebra
    return alg.depth() + alg.degree(generator)
