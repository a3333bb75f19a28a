"""Exact consistency checks shared by the test suite and the command line."""

import json
import logging
import time
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .const import (
    DEFAULT_TRUNCATION_MARGIN,
    ENGINE_GRAPH,
    ENGINE_SERIES,
    EXPECTED_STATISTICS,
    MODULE_COINDUCED,
    MODULE_INDUCED,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_TRUNCATED,
    STATUS_WARN,
)
from .decomp import Decomposition
from .enveloping import InducedModuleOracle
from .errors import DomainError
from .graph import (
    COMPILED_CONVENTIONS,
    PathConventions,
    PathMeasureResult,
    build_action_graph,
    count_paths,
    path_integral,
)
from .liealg import basis_vector
from .realize import (
    HRepresentation,
    Realization,
    apply,
    build_realization,
    induced_variables,
    pair_duality_check,
    supercommutator,
)
from .scalars import format_scalar
from .series import PhiH, SeriesEngine, default_truncation
from .superpoly import SuperPoly, VariableSet, monomials_up_to

_LOGGER: logging.Logger = logging.getLogger(__package__)


@dataclass(slots=True)
class VerificationReport:
    name: str
    subject: str
    status: str = STATUS_PASS
    counterexample: str | None = None
    elapsed: float = 0.0  # seconds
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in (STATUS_PASS, STATUS_WARN)

    def fail(self, counterexample: str) -> "VerificationReport":
        self.status = STATUS_FAIL
        self.counterexample = counterexample
        _LOGGER.debug("%s failed on %s: %s", self.name, self.subject, counterexample)
        return self


def _timed(
    name: str, subject: str, body: Callable[[VerificationReport], None]
) -> VerificationReport:
    report = VerificationReport(name, subject)
    start = time.perf_counter()
    body(report)
    report.elapsed = time.perf_counter() - start
    _LOGGER.info("%s on %s: %s (%.2fs)", name, subject, report.status, report.elapsed)
    return report


def compute_phi_h(
    decomp: Decomposition,
    generator: int,
    truncation: int,
    engine: str = ENGINE_SERIES,
    conventions: PathConventions = COMPILED_CONVENTIONS,
) -> PhiH:
    """phi and h for one basis element by the requested engine."""
    if engine == ENGINE_SERIES:
        return SeriesEngine(decomp, truncation).phi_h(basis_vector(generator), generator)
    if engine == ENGINE_GRAPH:
        graph = build_action_graph(decomp.algebra, decomp)
        result = path_integral(graph, generator, decomp, truncation, conventions)
        return PhiH(generator, result.a_part, result.b_part, truncation, result.stats.truncated)
    msg = f"unknown engine {engine!r}"
    _LOGGER.error(msg)
    raise DomainError(msg)


def phi_h_table(
    decomp: Decomposition,
    truncation: int | None = None,
    engine: str = ENGINE_SERIES,
    generators: Iterable[int] | None = None,
) -> dict[int, PhiH]:
    indices = list(range(decomp.algebra.dim) if generators is None else generators)
    if truncation is None:
        truncation = default_truncation(decomp, indices)
    if engine == ENGINE_SERIES:
        series = SeriesEngine(decomp, truncation)
        return {g: series.phi_h(basis_vector(g), g) for g in indices}
    return {g: compute_phi_h(decomp, g, truncation, engine) for g in indices}


def _describe_term(
    variables: VariableSet, decomp: Decomposition, key: tuple[Any, Any]
) -> str:
    mono, component = key
    names = " ".join(variables.names[i] for i in mono) or "1"
    return f"{names} (x) {decomp.algebra.basis[component].label}"


def first_difference(
    left: SuperPoly, right: SuperPoly, decomp: Decomposition
) -> str | None:
    """The smallest term where two g-valued polynomials disagree."""
    keys = sorted(
        set(left.terms) | set(right.terms),
        key=lambda k: (len(k[0]), k[0], k[1]),
    )
    for key in keys:
        a = left.terms.get(key, Fraction(0))
        b = right.terms.get(key, Fraction(0))
        if a != b:
            return (
                f"coefficient of {_describe_term(left.variables, decomp, key)}: "
                f"{format_scalar(Fraction(a))} vs {format_scalar(Fraction(b))}"
            )
    return None


def check_engine_equivalence(
    decomp: Decomposition,
    truncation: int | None = None,
    conventions: PathConventions = COMPILED_CONVENTIONS,
    generators: Sequence[int] | None = None,
) -> VerificationReport:
    """Path integral against the closed-form series, basis element by basis element."""
    alg = decomp.algebra
    indices = list(range(alg.dim) if generators is None else generators)
    order = default_truncation(decomp, indices) if truncation is None else truncation

    def body(report: VerificationReport) -> None:
        series = SeriesEngine(decomp, order)
        graph = build_action_graph(alg, decomp)
        truncated = False
        for g in indices:
            expected = series.phi_h(basis_vector(g), g)
            result = path_integral(graph, g, decomp, order, conventions)
            truncated = truncated or expected.truncated or result.stats.truncated
            for part, ours, theirs in (
                ("phi", result.a_part, expected.phi),
                ("h", result.b_part, expected.h_part),
            ):
                difference = first_difference(ours, theirs, decomp)
                if difference is not None:
                    report.fail(f"{part}({alg.basis[g].label}): {difference} (graph vs series)")
                    return
        if truncated:
            report.status = STATUS_TRUNCATED
        report.details["truncation"] = order
        report.details["generators"] = len(indices)

    return _timed("engine-equivalence", decomp.describe(), body)


def compare_phi_h_tables(
    decomp: Decomposition,
    graph_table: Mapping[int, PhiH],
    series_table: Mapping[int, PhiH],
) -> VerificationReport:
    """Engine-equivalence report for two tables that were already computed."""
    alg = decomp.algebra

    def body(report: VerificationReport) -> None:
        for g in sorted(series_table):
            ours = graph_table[g]
            theirs = series_table[g]
            for part, left, right in (
                ("phi", ours.phi, theirs.phi),
                ("h", ours.h_part, theirs.h_part),
            ):
                difference = first_difference(left, right, decomp)
                if difference is not None:
                    report.fail(f"{part}({alg.basis[g].label}): {difference} (graph vs series)")
                    return
        if any(t.truncated for t in (*graph_table.values(), *series_table.values())):
            report.status = STATUS_TRUNCATED
        report.details["generators"] = len(series_table)

    return _timed("engine-equivalence", decomp.describe(), body)


def check_series_consistency(
    decomp: Decomposition, truncation: int
) -> VerificationReport:
    """General-case series against the subalgebra series, and the defining identity."""
    alg = decomp.algebra

    def body(report: VerificationReport) -> None:
        engine = SeriesEngine(decomp, truncation)
        for g in range(alg.dim):
            vector = basis_vector(g)
            general = engine.phi_h_general(vector, g)
            if decomp.is_subalgebra:
                special = engine.phi_h_subalgebra(vector, g)
                for part, ours, theirs in (
                    ("phi", general.phi, special.phi),
                    ("h", general.h_part, special.h_part),
                ):
                    difference = first_difference(ours, theirs, decomp)
                    if difference is not None:
                        report.fail(f"{part}({alg.basis[g].label}): {difference}")
                        return
            if not engine.verify_defining_identity(vector, general.phi, general.h_part):
                report.fail(f"defining identity fails for {alg.basis[g].label}")
                return
        report.details["truncation"] = truncation

    return _timed("series-consistency", decomp.describe(), body)


def _operator_difference(lhs: Any, rhs: Any) -> str:
    difference = lhs - rhs
    (mono, (r, s), alpha), value = difference.sorted_terms()[0]
    names = difference.variables.names
    poly = " ".join(names[i] for i in mono) or "1"
    derivative = " ".join(f"d/d{names[i]}" for i in alpha) or "1"
    return f"term {poly} E_({r},{s}) {derivative} differs by {value.as_expr()}"


def check_homomorphism(
    realization: Realization, truncation: int | None = None
) -> VerificationReport:
    """[R(a), R(b)] = R([a, b]) on every basis pair.

    Coinduced operators are compared as operators. Induced operators are
    compared through their action on monomials of degree <= truncation - l.
    """
    decomp = realization.decomp
    alg = decomp.algebra
    subject = f"{decomp.describe()}, {realization.module} over {realization.rep.kind}"
    operators = realization.operators

    def coinduced(report: VerificationReport) -> None:
        for a in sorted(operators):
            for b in sorted(operators):
                if b < a:
                    continue
                lhs = supercommutator(operators[a], operators[b])
                rhs = realization.operator_for_vector(alg.bracket_basis(a, b))
                if lhs != rhs:
                    report.fail(
                        f"[R({alg.basis[a].label}), R({alg.basis[b].label})]: "
                        + _operator_difference(lhs, rhs)
                    )
                    return

    def induced(report: VerificationReport) -> None:
        limit = truncation if truncation is not None else realization.truncation
        if limit is None:
            msg = "induced homomorphism checks need a truncation"
            _LOGGER.error(msg)
            raise DomainError(msg)
        margin = alg.depth() if alg.is_graded else 1
        window = max(limit - margin, 0)
        variables = realization.variables
        rep = realization.rep
        one = rep.weights.one
        elements = [
            (mono, j, SuperPoly(variables, {(mono, j): one}))
            for mono in monomials_up_to(variables, window)
            for j in range(rep.dim)
        ]
        for a in sorted(operators):
            for b in sorted(operators):
                if b < a:
                    continue
                sign = -1 if alg.parity(a) * alg.parity(b) else 1
                target = realization.operator_for_vector(alg.bracket_basis(a, b))
                for mono, j, m in elements:
                    first = apply(operators[a], apply(operators[b], m))
                    second = apply(operators[b], apply(operators[a], m))
                    lhs = first - second.scale(rep.weights.scalar(sign))
                    rhs = apply(target, m)
                    if lhs != rhs:
                        names = " ".join(variables.names[i] for i in mono) or "1"
                        report.fail(
                            f"[R({alg.basis[a].label}), R({alg.basis[b].label})] "
                            f"on {names} (x) {rep.labels[j]}"
                        )
                        return
        report.details["window"] = window

    def body(report: VerificationReport) -> None:
        if realization.module == MODULE_INDUCED:
            induced(report)
        else:
            coinduced(report)
        if report.status == STATUS_PASS and realization.truncated:
            report.status = STATUS_TRUNCATED

    return _timed("homomorphism", subject, body)


def check_degree_bound(
    decomp: Decomposition,
    engine: str = ENGINE_GRAPH,
    generators: Sequence[int] | None = None,
) -> VerificationReport:
    """Every phi, h coefficient for g in degree d has X-degree <= l + d."""
    alg = decomp.algebra
    indices = list(range(alg.dim) if generators is None else generators)

    def body(report: VerificationReport) -> None:
        order = default_truncation(decomp, indices) + DEFAULT_TRUNCATION_MARGIN
        depth = alg.depth()
        attained: dict[int, int] = {}
        table = phi_h_table(decomp, order, engine, indices)
        for g in indices:
            d = alg.degree(g)
            degree = table[g].degree()
            attained[d] = max(attained.get(d, -1), degree)
            if degree > depth + d:
                report.fail(
                    f"{alg.basis[g].label} in degree {d} reaches X-degree {degree} > {depth + d}"
                )
                return
        report.details["depth"] = depth
        report.details["attained"] = {str(d): v for d, v in sorted(attained.items())}

    return _timed("degree-bound", decomp.describe(), body)


@dataclass(slots=True)
class GeneratorStatistics:
    """Per-generator statistics.

    ``monomial_count`` and ``max_degree`` describe the operator after like
    terms cancel; ``collected_count`` and ``path_degree`` count every
    monomial some path produces.
    """

    generator: int
    path_count: int
    monomial_count: int
    max_degree: int
    collected_count: int
    path_degree: int


def statistics_from_result(
    generator: int, path_count: int, result: PathMeasureResult
) -> GeneratorStatistics:
    stats = result.stats
    return GeneratorStatistics(
        generator,
        path_count,
        stats.monomial_count,
        stats.max_degree,
        stats.collected_count,
        stats.path_degree,
    )


def generator_statistics(
    decomp: Decomposition, generator: int, truncation: int
) -> GeneratorStatistics:
    graph = build_action_graph(decomp.algebra, decomp)
    result = path_integral(graph, generator, decomp, truncation)
    return statistics_from_result(generator, count_paths(graph, generator, truncation), result)


def distinguished_generators(decomp: Decomposition) -> list[int]:
    """The degree-1 part g_1, or all of h for ungraded algebras."""
    alg = decomp.algebra
    if not alg.is_graded:
        return list(decomp.h_indices)
    return alg.homogeneous(1) or list(decomp.h_indices)


def summarize_statistics(
    per_generator: Sequence[GeneratorStatistics],
) -> tuple[int, int, int]:
    """Longest path count, largest collected monomial count, largest path degree."""
    return (
        max((s.path_count for s in per_generator), default=0),
        max((s.collected_count for s in per_generator), default=0),
        max((s.path_degree for s in per_generator), default=-1),
    )


def summarize_reduced(per_generator: Sequence[GeneratorStatistics]) -> tuple[int, int]:
    """Largest monomial count and degree once like terms have cancelled."""
    return (
        max((s.monomial_count for s in per_generator), default=0),
        max((s.max_degree for s in per_generator), default=-1),
    )


def check_statistics(
    decomp: Decomposition,
    expected: tuple[int, int, int] | None = None,
    per_generator: Sequence[GeneratorStatistics] | None = None,
) -> VerificationReport:
    """Longest path count, largest monomial count and largest degree over g_1.

    Monomials are counted as the paths produce them, before coefficients of
    like terms are summed; the top-degree terms can cancel, so the degree of
    the operator itself is reported separately as ``reduced_degree``. The
    degree is a hard expectation; the two counts only downgrade to a
    warning because they can move with the Chevalley sign convention.
    """
    alg = decomp.algebra
    if expected is None and alg.rank is not None:
        expected = EXPECTED_STATISTICS.get((alg.family, alg.rank))

    def body(report: VerificationReport) -> None:
        stats = per_generator
        if stats is None:
            generators = distinguished_generators(decomp)
            order = default_truncation(decomp, generators)
            stats = [generator_statistics(decomp, g, order) for g in generators]
        paths, monomials, degree = summarize_statistics(stats)
        reduced_monomials, reduced_degree = summarize_reduced(stats)
        report.details.update(
            {
                "path_count": paths,
                "monomial_count": monomials,
                "max_degree": degree,
                "reduced_monomial_count": reduced_monomials,
                "reduced_degree": reduced_degree,
            }
        )
        if expected is None:
            return
        want_paths, want_monomials, want_degree = expected
        if degree != want_degree:
            report.fail(f"max degree {degree}, expected {want_degree}")
            return
        if (paths, monomials) != (want_paths, want_monomials):
            report.status = STATUS_WARN
            report.counterexample = (
                f"counts ({paths}, {monomials}) differ from ({want_paths}, {want_monomials}); "
                "counts depend on which structure constants vanish"
            )
            _LOGGER.warning("Statistics for %s: %s", alg.name, report.counterexample)

    return _timed("statistics", decomp.describe(), body)


def check_duality(
    decomp: Decomposition,
    rep: HRepresentation,
    truncation: int,
    engine: str = ENGINE_SERIES,
) -> VerificationReport:
    """<T(g) f, m> = -(-1)^{|g||f|} <f, I(g) m> with T over V* and I over V."""

    def body(report: VerificationReport) -> None:
        table = phi_h_table(decomp, None if decomp.algebra.is_graded else truncation, engine)
        coinduced = build_realization(MODULE_COINDUCED, rep.dual(), table)
        induced = build_realization(MODULE_INDUCED, rep, table, truncation)
        passed, detail = pair_duality_check(coinduced, induced, truncation)
        if not passed:
            report.fail(detail or "pairing mismatch")
        report.details["truncation"] = truncation

    return _timed("duality", f"{decomp.describe()}, {rep.kind}", body)


def check_induced_oracle(
    decomp: Decomposition,
    rep: HRepresentation,
    truncation: int,
    engine: str = ENGINE_SERIES,
) -> VerificationReport:
    """I(g) against left multiplication and PBW reduction in U(g) (x)_{U(h)} V."""

    def body(report: VerificationReport) -> None:
        table = phi_h_table(decomp, None if decomp.algebra.is_graded else truncation, engine)
        induced = build_realization(MODULE_INDUCED, rep, table, truncation)
        oracle = InducedModuleOracle(rep)
        variables = induced_variables(decomp)
        one = rep.weights.one
        for g in sorted(induced.operators):
            for mono in monomials_up_to(variables, truncation):
                for j in range(rep.dim):
                    m = SuperPoly(variables, {(mono, j): one})
                    expected = oracle.act(g, oracle.from_symmetric(m))
                    ours = oracle.from_symmetric(apply(induced.operators[g], m))
                    if ours != expected:
                        names = " ".join(variables.names[i] for i in mono) or "1"
                        report.fail(
                            f"{decomp.algebra.basis[g].label} on {names} (x) {rep.labels[j]}"
                        )
                        return
        report.details["truncation"] = truncation

    return _timed("induced-oracle", f"{decomp.describe()}, {rep.kind}", body)


def permuted_decomposition(decomp: Decomposition, permutation: Sequence[int]) -> Decomposition:
    """Same splitting with the g_- basis listed in another order."""
    if sorted(permutation) != list(range(decomp.minus_dimension)):
        msg = f"{list(permutation)} is not a permutation of the g_- basis"
        _LOGGER.error(msg)
        raise DomainError(msg)
    return Decomposition(
        algebra=decomp.algebra,
        minus_indices=tuple(decomp.minus_indices[k] for k in permutation),
        h_indices=decomp.h_indices,
        is_subalgebra=decomp.is_subalgebra,
        original=decomp.original,
        kind=decomp.kind,
        change_of_basis=decomp.change_of_basis,
        h_is_subalgebra=decomp.h_is_subalgebra,
    )


def relabel(poly: SuperPoly, permutation: Sequence[int], variables: VariableSet) -> SuperPoly:
    """Rename variable k of ``poly`` to ``permutation[k]`` over ``variables``."""
    terms: dict[Any, Any] = {}
    for (mono, component), coeff in poly.terms.items():
        normal = variables.normalize(permutation[k] for k in mono)
        if normal is None:
            continue
        sign, renamed = normal
        key = (renamed, component)
        value = terms.get(key, Fraction(0)) + (coeff if sign > 0 else -coeff)
        if value:
            terms[key] = value
        else:
            terms.pop(key, None)
    return SuperPoly(variables, terms, poly.truncation)


def check_basis_independence(
    decomp: Decomposition,
    truncation: int | None = None,
    permutation: Sequence[int] | None = None,
) -> VerificationReport:
    """Recompute with a reordered g_- basis and compare after renaming variables."""
    order = list(permutation or reversed(range(decomp.minus_dimension)))
    permuted = permuted_decomposition(decomp, order)
    limit = default_truncation(decomp) if truncation is None else truncation
    alg = decomp.algebra

    def body(report: VerificationReport) -> None:
        original = SeriesEngine(decomp, limit)
        shuffled = SeriesEngine(permuted, limit)
        variables = original.variables
        for g in range(alg.dim):
            vector = basis_vector(g)
            ours = original.phi_h(vector, g)
            theirs = shuffled.phi_h(vector, g)
            for part, left, right in (
                ("phi", ours.phi, relabel(theirs.phi, order, variables)),
                ("h", ours.h_part, relabel(theirs.h_part, order, variables)),
            ):
                difference = first_difference(left, right, decomp)
                if difference is not None:
                    report.fail(f"{part}({alg.basis[g].label}): {difference}")
                    return
        report.details["permutation"] = order

    return _timed("basis-independence", decomp.describe(), body)


def render_text(reports: Iterable[VerificationReport]) -> str:
    lines = []
    for report in reports:
        lines.append(
            f"{report.status.upper():9} {report.name} [{report.subject}] ({report.elapsed:.2f}s)"
        )
        if report.counterexample:
            lines.append(f"          {report.counterexample}")
        for key, value in sorted(report.details.items()):
            lines.append(f"          {key}: {value}")
    return "\n".join(lines) + "\n"


def render_structured(reports: Iterable[VerificationReport]) -> str:
    data: dict[str, Any] = {"report": []}
    for report in reports:
        entry: dict[str, Any] = {
            "name": report.name,
            "subject": report.subject,
            "status": report.status,
            "elapsed": round(report.elapsed, 3),
        }
        if report.counterexample is not None:
            entry["counterexample"] = report.counterexample
        if report.details:
            entry["details"] = _plain(report.details)
        data["report"].append(entry)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _plain(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return format_scalar(value)
    return value
