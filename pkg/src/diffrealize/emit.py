"""TeX and structured (JSON) output of realizations.

TeX schema: one display equation per generator, ``$$T(g) = ...$$`` for the
coinduced module and ``$$I(g) = ...$$`` for the induced one. Terms are
ordered by decreasing derivative order, then by derivative, monomial and
matrix unit. A term reads ``coefficient monomial matrix derivative`` where
the monomial is ``X^{2}`` style, the matrix unit on V is ``\\mathrm{E}_{r,s}``
(1-based, omitted when V is one-dimensional) and derivatives are
``\\partial_{X}``. Weight symbols print as ``\\lambda`` (one symbol) or
``\\lambda_{k}``.
"""

import json
import logging
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from .const import MODULE_COINDUCED, PARITY_NAMES, STRUCTURED_FORMAT_VERSION
from .errors import ConfigError
from .realize import DiffOperator, HRepresentation, OpKey, Realization, WeightRing
from .scalars import as_scalar, format_scalar
from .superpoly import Monomial, VariableSet

_LOGGER: logging.Logger = logging.getLogger(__package__)

_PARITY_BY_VALUE = {value: name for name, value in PARITY_NAMES.items()}


def _power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{{{exponent}}}"


def _grouped(mono: Monomial) -> list[tuple[int, int]]:
    return [(i, mono.count(i)) for i in sorted(set(mono))]


def monomial_tex(variables: VariableSet, mono: Monomial) -> str:
    return "".join(_power(variables.names[i], n) for i, n in _grouped(mono))


def derivative_tex(variables: VariableSet, mono: Monomial) -> str:
    return "".join(
        _power(f"\\partial_{{{variables.names[i]}}}", n) for i, n in _grouped(mono)
    )


def symbol_tex(weights: WeightRing, k: int) -> str:
    return "\\lambda" if weights.count == 1 else f"\\lambda_{{{k + 1}}}"


def rational_tex(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"


def _symbolic_tex(weights: WeightRing, exponents: tuple[int, ...]) -> str:
    return " ".join(
        _power(symbol_tex(weights, k), n) for k, n in enumerate(exponents) if n
    )


def _signed_pieces(weights: WeightRing, value: Any, body: str) -> list[tuple[int, str]]:
    """(sign, text) for a coefficient times ``body``."""
    items = sorted(weights.coefficients(value), reverse=True)
    if len(items) == 1:
        exponents, c = items[0]
        sign = -1 if c < 0 else 1
        magnitude = abs(c)
        symbolic = _symbolic_tex(weights, exponents)
        if symbolic:
            factor = symbolic if magnitude == 1 else f"{rational_tex(magnitude)} {symbolic}"
            return [(sign, f"{factor} {body}" if body else factor)]
        if magnitude == 1 and body:
            return [(sign, body)]
        return [(sign, f"{rational_tex(magnitude)}{body}")]
    parts = []
    for position, (exponents, c) in enumerate(items):
        symbolic = _symbolic_tex(weights, exponents)
        magnitude = abs(c)
        if symbolic:
            text = symbolic if magnitude == 1 else f"{rational_tex(magnitude)} {symbolic}"
        else:
            text = rational_tex(magnitude)
        if position == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append(("- " if c < 0 else "+ ") + text)
    inner = "(" + " ".join(parts) + ")"
    return [(1, f"{inner} {body}" if body else inner)]


def _term_order(key: OpKey) -> tuple[Any, ...]:
    mono, matrix, alpha = key
    return (-len(alpha), alpha, len(mono), mono, matrix)


def operator_tex(op: DiffOperator) -> str:
    """Right-hand side of the display equation for one operator."""
    weights = op.rep.weights
    variables = op.variables
    show_matrix = op.rep.dim > 1
    pieces: list[tuple[int, str]] = []
    for key in sorted(op.terms, key=_term_order):
        mono, (r, s), alpha = key
        body = monomial_tex(variables, mono)
        if show_matrix:
            body += f"\\mathrm{{E}}_{{{r + 1},{s + 1}}}"
        body += derivative_tex(variables, alpha)
        pieces.extend(_signed_pieces(weights, op.terms[key], body))
    if not pieces:
        return "0"
    first_sign, first_text = pieces[0]
    text = ("-" if first_sign < 0 else "") + first_text
    for sign, piece in pieces[1:]:
        text += (" - " if sign < 0 else " + ") + piece
    return text


def emit_tex(realization: Realization) -> str:
    alg = realization.decomp.algebra
    letter = "T" if realization.module == MODULE_COINDUCED else "I"
    lines = [
        f"% {realization.module} module of {alg.name}, {realization.rep.kind} representation",
        f"% {realization.decomp.describe()}",
    ]
    if realization.truncation is not None:
        lines.append(f"% truncated at degree {realization.truncation}")
    for g in sorted(realization.operators):
        label = alg.basis[g].label
        lines.append(f"$${letter}({label}) = {operator_tex(realization.operators[g])}$$")
    return "\n".join(lines) + "\n"


def _exponents(mono: Monomial, size: int) -> list[int]:
    vector = [0] * size
    for i in mono:
        vector[i] += 1
    return vector


def _monomial(vector: list[int]) -> Monomial:
    return tuple(i for i, n in enumerate(vector) for _ in range(n))


def operator_to_data(op: DiffOperator) -> list[dict[str, Any]]:
    size = len(op.variables)
    terms = []
    for key in sorted(op.terms, key=_term_order):
        mono, (r, s), alpha = key
        terms.append(
            {
                "monomial": _exponents(mono, size),
                "matrix": [r, s],
                "derivative": _exponents(alpha, size),
                "coefficient": [
                    {"exponents": list(exponents), "value": format_scalar(c)}
                    for exponents, c in op.rep.weights.coefficients(op.terms[key])
                ],
            }
        )
    return terms


def emit_structured(realization: Realization) -> str:
    alg = realization.decomp.algebra
    rep = realization.rep
    variables = realization.variables
    document: dict[str, Any] = {
        "format_version": STRUCTURED_FORMAT_VERSION,
        "module": realization.module,
        "algebra": alg.name,
        "representation": rep.kind,
        "truncation": realization.truncation,
        "symbols": list(rep.weights.names),
        "variables": [
            {"name": name, "parity": _PARITY_BY_VALUE[parity]}
            for name, parity in zip(variables.names, variables.parities, strict=True)
        ],
        "operators": [
            {
                "generator": alg.basis[g].label,
                "index": g,
                "parity": _PARITY_BY_VALUE[realization.operators[g].parity],
                "terms": operator_to_data(realization.operators[g]),
            }
            for g in sorted(realization.operators)
        ],
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def parse_structured(text: str, rep: HRepresentation) -> dict[int, DiffOperator]:
    """Operators from ``emit_structured`` output, over the representation ``rep``."""
    try:
        document: Mapping[str, Any] = json.loads(text)
        if document["format_version"] != STRUCTURED_FORMAT_VERSION:
            msg = f"unsupported structured format version {document['format_version']}"
            _LOGGER.error(msg)
            raise ConfigError(msg)
        variables = VariableSet(
            [PARITY_NAMES[v["parity"]] for v in document["variables"]],
            [v["name"] for v in document["variables"]],
        )
        weights = rep.weights
        operators: dict[int, DiffOperator] = {}
        for entry in document["operators"]:
            terms: dict[OpKey, Any] = {}
            for term in entry["terms"]:
                key = (
                    _monomial(term["monomial"]),
                    (term["matrix"][0], term["matrix"][1]),
                    _monomial(term["derivative"]),
                )
                terms[key] = weights.from_coefficients(
                    (c["exponents"], as_scalar(c["value"])) for c in term["coefficient"]
                )
            operators[entry["index"]] = DiffOperator(
                variables,
                rep,
                terms,
                PARITY_NAMES[entry["parity"]],
                document["module"],
                document.get("truncation"),
            )
    except (KeyError, TypeError, ValueError) as e:
        msg = f"malformed structured operator document: {e}"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e
    return operators
