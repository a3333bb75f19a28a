"""Ledger of the sign and indexing conventions compiled into the engines."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import product

from .decomp import Decomposition
from .graph import COMPILED_CONVENTIONS, K_MODES, PathConventions
from .scalars import MINUS_HALF, PLUS_HALF
from .verify import check_engine_equivalence

_LOGGER: logging.Logger = logging.getLogger(__package__)

UNCALIBRATED_BANNER = "**UNCALIBRATED**: no convention has been pinned by an oracle test yet."


@dataclass(frozen=True, slots=True)
class ConventionEntry:
    name: str
    value: str
    pinned_by: str
    disambiguates: str


def _b1_text(sign: int) -> str:
    return "B_1 = -1/2" if sign == MINUS_HALF else "B_1 = +1/2"


def build_ledger(
    conventions: PathConventions = COMPILED_CONVENTIONS,
) -> tuple[ConventionEntry, ...]:
    return (
        ConventionEntry(
            "Bernoulli sign",
            _b1_text(conventions.b1_sign),
            "tests/test_graph.py::test_engine_equivalence_a2",
            "sign of b_1 inside the path weight c(k, n)",
        ),
        ConventionEntry(
            "Path weight sign",
            f"K(p) = {'+' if conventions.k_sign > 0 else '-'}c(k, N)",
            "tests/test_graph.py::test_abelian_path_integral",
            "global sign of K(p); A(M) = M on an abelian algebra",
        ),
        ConventionEntry(
            "Path index k",
            {
                "entry": "position of the first g_- vertex (N if none)",
                "prefix": "length of the longest prefix ending in h",
            }[conventions.k_mode],
            "tests/test_conventions.py::test_calibration_selects_compiled_conventions",
            "which subpath defines k(p)",
        ),
        ConventionEntry(
            "Edge measure",
            "mu(p) = prod(-c X^i), factors appended on the right",
            "tests/test_graph.py::test_engine_equivalence_gl11",
            "sign bookkeeping for odd edge labels",
        ),
        ConventionEntry(
            "Coinduced operator",
            "T(g) = sum phi^i(-X, g) d_i + rho(h(-X, g)), no extra (-1)^{|X^i|}",
            "tests/test_realize.py::test_coinduced_homomorphism_gl11",
            "sign in front of the derivative part of T(g)",
        ),
        ConventionEntry(
            "Duality pairing",
            "<f (x) xi, m (x) v> = (-1)^{|xi||m|} <f(-X), m> xi(v)",
            "tests/test_realize.py::test_duality_gl3",
            "how the coinduced and induced operators are matched",
        ),
        ConventionEntry(
            "Chevalley cocycle",
            "eps(a_i, a_i) = -1, eps(a_i, a_j) = -1 for linked i < j, +1 otherwise",
            "tests/test_chevalley.py::test_validate_simply_laced",
            "signs N_{a,b} of the structure constants",
        ),
        ConventionEntry(
            "Statistics monomials",
            "counted per (monomial, target) reached by a path, before like terms cancel",
            "tests/test_verify.py::test_statistics_count_before_cancellation",
            "monomial count and degree reported for E6 and gl(15)",
        ),
    )


LEDGER = build_ledger()


def render_ledger(entries: Sequence[ConventionEntry] | None = None) -> str:
    """Markdown table of the ledger, with a banner when it is empty."""
    rows = LEDGER if entries is None else tuple(entries)
    lines = ["# Conventions", ""]
    if not rows:
        lines.append(UNCALIBRATED_BANNER)
        return "\n".join(lines) + "\n"
    lines.append("Generated by `maintenance/generate_ledger.py`; do not edit by hand.")
    lines.append("")
    lines.append("| Convention | Value | Pinned by | Disambiguates |")
    lines.append("| --- | --- | --- | --- |")
    for entry in rows:
        lines.append(
            f"| {entry.name} | `{entry.value}` | `{entry.pinned_by}` | {entry.disambiguates} |"
        )
    return "\n".join(lines) + "\n"


def candidate_conventions() -> list[PathConventions]:
    return [
        PathConventions(k_sign, k_mode, b1_sign)
        for k_sign, k_mode, b1_sign in product((1, -1), K_MODES, (MINUS_HALF, PLUS_HALF))
    ]


def calibrate(
    decompositions: Iterable[Decomposition],
    candidates: Sequence[PathConventions] | None = None,
) -> list[PathConventions]:
    """Every convention combination under which the path integral matches the series."""
    targets = list(decompositions)
    pool = list(candidates or candidate_conventions())
    matching = []
    for conventions in pool:
        if all(check_engine_equivalence(d, conventions=conventions).passed for d in targets):
            matching.append(conventions)
    _LOGGER.info("Calibration kept %d of %d convention sets", len(matching), len(pool))
    return matching
