"""PBW arithmetic in U(g) and a brute-force model of the induced module.

Words are tuples of basis indices. A word is in PBW normal form when its
letters are non-decreasing in the order "g_- basis, then h basis" and no odd
letter repeats. The induced module U(g) (x)_{U(h)} V is modelled by pairs
(normal-ordered g_- word, V basis index).
"""

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction
from itertools import permutations
from typing import Any

from .decomp import Decomposition
from .realize import HRepresentation, induced_variables
from .scalars import factorial
from .superpoly import SuperPoly

_LOGGER: logging.Logger = logging.getLogger(__package__)

Word = tuple[int, ...]
UElement = dict[Word, Fraction]
ModuleElement = dict[tuple[Word, int], Any]


def _accumulate(target: dict[Any, Any], key: Any, value: Any) -> None:
    if not value:
        return
    total = target[key] + value if key in target else value
    if total:
        target[key] = total
    else:
        del target[key]


class EnvelopingAlgebra:
    """Universal enveloping algebra of the working algebra of a decomposition."""

    def __init__(self, decomp: Decomposition) -> None:
        self.decomp = decomp
        self.algebra = decomp.algebra
        order = list(decomp.minus_indices) + list(decomp.h_indices)
        self.rank: dict[int, int] = {index: position for position, index in enumerate(order)}

    def _disorder(self, word: Word) -> int | None:
        """First position where the word fails to be PBW ordered."""
        rank = self.rank
        for pos in range(len(word) - 1):
            a, b = word[pos], word[pos + 1]
            if rank[a] > rank[b] or (a == b and self.algebra.parity(a)):
                return pos
        return None

    def koszul_sign(self, word: Sequence[int]) -> int:
        """Sign of sorting ``word`` into PBW order (odd letters anticommute)."""
        odd = [self.rank[i] for i in word if self.algebra.parity(i)]
        inversions = sum(
            1 for x in range(len(odd)) for y in range(x + 1, len(odd)) if odd[x] > odd[y]
        )
        return -1 if inversions % 2 else 1

    def normal_form(self, element: Mapping[Word, Fraction]) -> UElement:
        """Rewrite with ab = (-1)^{|a||b|} ba + [a, b] until every word is ordered."""
        alg = self.algebra
        pending: UElement = {}
        for word, coeff in element.items():
            _accumulate(pending, tuple(word), Fraction(coeff))
        result: UElement = {}
        while pending:
            word, coeff = pending.popitem()
            pos = self._disorder(word)
            if pos is None:
                _accumulate(result, word, coeff)
                continue
            a, b = word[pos], word[pos + 1]
            head, tail = word[:pos], word[pos + 2 :]
            if a == b:
                # odd square: a a = [a, a] / 2
                for k, c in alg.bracket_basis(a, a).items():
                    _accumulate(pending, (*head, k, *tail), coeff * c / 2)
                continue
            sign = -1 if alg.parity(a) * alg.parity(b) else 1
            _accumulate(pending, (*head, b, a, *tail), coeff * sign)
            for k, c in alg.bracket_basis(a, b).items():
                _accumulate(pending, (*head, k, *tail), coeff * c)
        return result

    def multiply(self, left: Mapping[Word, Fraction], right: Mapping[Word, Fraction]) -> UElement:
        product: UElement = {}
        for w1, c1 in left.items():
            for w2, c2 in right.items():
                _accumulate(product, w1 + w2, c1 * c2)
        return self.normal_form(product)

    def symmetrize(self, factors: Sequence[int]) -> UElement:
        """Supersymmetric product (1/k!) sum_s sign(s) x_s(1) ... x_s(k), in normal form."""
        k = len(factors)
        odd = [i for i in factors if self.algebra.parity(i)]
        if len(set(odd)) != len(odd):
            return {}
        words: UElement = {}
        weight = Fraction(1, factorial(k))
        base = self.koszul_sign(factors)
        for order in permutations(range(k)):
            word = tuple(factors[i] for i in order)
            sign = base * self.koszul_sign(word)
            _accumulate(words, word, weight * sign)
        return self.normal_form(words)

    def pbw_to_symmetric(self, element: Mapping[Word, Fraction]) -> UElement:
        """Preimage under ``symmetrize``: keys are PBW-ordered factor lists."""
        remaining = self.normal_form(element)
        result: UElement = {}
        while remaining:
            word = max(remaining, key=lambda w: (len(w), [self.rank[i] for i in w]))
            coeff = remaining[word]
            _accumulate(result, word, coeff)
            for w, c in self.symmetrize(word).items():
                _accumulate(remaining, w, -coeff * c)
        return result


class InducedModuleOracle:
    """U(g) (x)_{U(h)} V with g acting by left multiplication and PBW reduction."""

    def __init__(self, rep: HRepresentation) -> None:
        self.rep = rep
        self.decomp = rep.decomp
        self.envelope = EnvelopingAlgebra(rep.decomp)
        self.variables = induced_variables(rep.decomp)

    def _reduce(self, target: ModuleElement, word: Word, j: int, coeff: Any) -> None:
        """Add coeff * word (x) v_j, letting the h tail of ``word`` act on V."""
        decomp = self.decomp
        split = len(word)
        while split > 0 and decomp.is_h(word[split - 1]):
            split -= 1
        prefix, tail = word[:split], word[split:]
        vector: dict[int, Any] = {j: coeff}
        for b in reversed(tail):
            image: dict[int, Any] = {}
            for (r, s), entry in self.rep.matrix(b).items():
                if s in vector:
                    _accumulate(image, r, entry * vector[s])
            vector = image
            if not vector:
                return
        for r, value in vector.items():
            _accumulate(target, (prefix, r), value)

    def from_symmetric(self, poly: SuperPoly) -> ModuleElement:
        """Image of a V-valued polynomial in P under symmetrization."""
        scalar = self.rep.weights.scalar
        minus = self.decomp.minus_indices
        result: ModuleElement = {}
        for (mono, j), coeff in poly.terms.items():
            for word, c in self.envelope.symmetrize([minus[k] for k in mono]).items():
                self._reduce(result, word, j, coeff * scalar(c))
        return result

    def act(self, generator: int, element: Mapping[tuple[Word, int], Any]) -> ModuleElement:
        scalar = self.rep.weights.scalar
        result: ModuleElement = {}
        for (word, j), coeff in element.items():
            for reduced, c in self.envelope.normal_form({(generator, *word): Fraction(1)}).items():
                self._reduce(result, reduced, j, coeff * scalar(c))
        _LOGGER.debug("PBW action of %s produced %d terms", generator, len(result))
        return result
