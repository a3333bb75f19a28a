"""Action graph of ad(g_-) on g and the path-integral evaluation of phi and h.

Vertices are the basis of g. For every g_- basis vector P_i and vertex e_s
there is an edge e_s -> e_t labelled i with weight c = coefficient of e_t in
[P_i, e_s]. A path p = (v_0 -> ... -> v_N) carries the measure

    mu(p) = prod_j (-c_j X^{i_j})          (factors appended on the right)

and the path integral is sum_p K(p) mu(p) (x) v_N, split into the part
ending in g_- (phi, called A) and the part ending in h (called B).
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .decomp import Decomposition
from .errors import DomainError, GraphCycleError
from .liealg import LieSuperAlgebra
from .scalars import (
    MINUS_HALF,
    PLUS_HALF,
    bernoulli,
    c_coeff,
    exp_neg_coeffs,
    exp_quotient_coeffs,
    factorial,
    neg_exp_quotient_coeffs,
)
from .superpoly import Key, Monomial, SuperPoly

_LOGGER: logging.Logger = logging.getLogger(__package__)

K_ENTRY = "entry"
K_PREFIX = "prefix"
K_MODES = (K_ENTRY, K_PREFIX)


@dataclass(frozen=True, slots=True)
class PathConventions:
    """Sign and indexing switches of the path weight K(p)."""

    k_sign: int = 1
    k_mode: str = K_ENTRY
    b1_sign: int = MINUS_HALF

    def __post_init__(self) -> None:
        if self.k_sign not in (1, -1):
            msg = f"k_sign must be +1 or -1, got {self.k_sign}"
            raise DomainError(msg)
        if self.k_mode not in K_MODES:
            msg = f"k_mode must be one of {K_MODES}, got {self.k_mode!r}"
            raise DomainError(msg)
        if self.b1_sign not in (MINUS_HALF, PLUS_HALF):
            msg = f"b1_sign must be -1 or +1, got {self.b1_sign}"
            raise DomainError(msg)


COMPILED_CONVENTIONS = PathConventions()


@dataclass(frozen=True, slots=True)
class Edge:
    index: int
    source: int
    target: int
    label: int
    weight: Fraction


@dataclass(slots=True)
class ActionGraph:
    """Directed multigraph of the adjoint action of g_- on g."""

    vertex_labels: tuple[str, ...]
    label_names: tuple[str, ...]
    edges: tuple[Edge, ...]
    out_edges: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    def successors(self, vertex: int) -> list[int]:
        return [self.edges[e].target for e in self.out_edges[vertex]]


@dataclass(frozen=True, slots=True)
class Path:
    source: int
    edges: tuple[int, ...] = ()
    vertices: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def target(self) -> int:
        return self.vertices[-1] if self.vertices else self.source


@dataclass(slots=True)
class PathStatistics:
    """Path counts, and monomial counts before and after like terms cancel.

    ``collected`` holds every (monomial, target) reached by a path, whether
    or not its summed coefficient survives; ``path_degree`` is the longest
    such monomial.
    """

    path_count: int = 0
    monomial_count: int = 0
    max_degree: int = -1
    truncated: bool = False
    path_degree: int = -1
    collected: set[Key] = field(default_factory=set, repr=False)

    @property
    def collected_count(self) -> int:
        return len(self.collected)


@dataclass(slots=True)
class PathMeasureResult:
    """A(M) in S* (x) g_- and B(M) in S* (x) h for one source vertex."""

    source: int
    a_part: SuperPoly
    b_part: SuperPoly
    stats: PathStatistics = field(default_factory=PathStatistics)


def build_action_graph(alg: LieSuperAlgebra, decomp: Decomposition) -> ActionGraph:
    if alg is not decomp.algebra and alg is not decomp.original:
        msg = f"decomposition belongs to {decomp.algebra.name}, not {alg.name}"
        _LOGGER.error(msg)
        raise DomainError(msg)
    working = decomp.algebra
    edges: list[Edge] = []
    out_edges: list[tuple[int, ...]] = []
    for s in range(working.dim):
        outgoing = []
        for position, p_index in enumerate(decomp.minus_indices):
            for t, c in sorted(working.bracket_basis(p_index, s).items()):
                outgoing.append(len(edges))
                edges.append(Edge(len(edges), s, t, position, c))
        out_edges.append(tuple(outgoing))
    variables = decomp.dual_variables()
    graph = ActionGraph(
        tuple(working.labels), tuple(variables.names), tuple(edges), tuple(out_edges)
    )
    _LOGGER.debug(
        "Built action graph for %s: %d vertices, %d edges",
        working.name,
        graph.vertex_count,
        len(edges),
    )
    return graph


def find_cycle(graph: ActionGraph) -> list[int] | None:
    """Vertices of some directed cycle, or None for a DAG."""
    white, grey, black = 0, 1, 2
    colour = [white] * graph.vertex_count
    for root in range(graph.vertex_count):
        if colour[root] != white:
            continue
        colour[root] = grey
        trail = [root]
        stack = [iter(graph.successors(root))]
        while stack:
            try:
                child = next(stack[-1])
            except StopIteration:
                stack.pop()
                colour[trail.pop()] = black
                continue
            if colour[child] == grey:
                return trail[trail.index(child) :]
            if colour[child] == white:
                colour[child] = grey
                trail.append(child)
                stack.append(iter(graph.successors(child)))
    return None


def _require_bound(graph: ActionGraph, max_length: int | None) -> None:
    if max_length is None:
        cycle = find_cycle(graph)
        if cycle is not None:
            names = " -> ".join(graph.vertex_labels[v] for v in cycle + cycle[:1])
            msg = f"action graph has a cycle ({names}); a maximal path length is required"
            _LOGGER.error(msg)
            raise GraphCycleError(msg, cycle)


def enumerate_paths(
    graph: ActionGraph, source: int, max_length: int | None = None
) -> Iterator[Path]:
    """All directed paths from ``source`` in depth-first, edge-index order."""
    _require_bound(graph, max_length)
    yield Path(source, (), (source,))
    edge_trail: list[int] = []
    vertex_trail: list[int] = [source]
    if max_length == 0:
        return
    stack = [iter(graph.out_edges[source])]
    while stack:
        try:
            e = next(stack[-1])
        except StopIteration:
            stack.pop()
            if edge_trail:
                edge_trail.pop()
                vertex_trail.pop()
            continue
        target = graph.edges[e].target
        edge_trail.append(e)
        vertex_trail.append(target)
        yield Path(source, tuple(edge_trail), tuple(vertex_trail))
        if max_length is None or len(edge_trail) < max_length:
            stack.append(iter(graph.out_edges[target]))
        else:
            edge_trail.pop()
            vertex_trail.pop()


def count_paths(graph: ActionGraph, source: int, max_length: int | None = None) -> int:
    """Number of paths from ``source`` (trivial path included), by dynamic programming."""
    _require_bound(graph, max_length)
    if max_length is not None:
        counts = [1] * graph.vertex_count
        for _ in range(max_length):
            counts = [
                1 + sum(counts[graph.edges[e].target] for e in graph.out_edges[v])
                for v in range(graph.vertex_count)
            ]
        return counts[source]
    memo: dict[int, int] = {}
    stack = [source]
    while stack:
        vertex = stack[-1]
        pending = [
            graph.edges[e].target
            for e in graph.out_edges[vertex]
            if graph.edges[e].target not in memo
        ]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        memo[vertex] = 1 + sum(memo[graph.edges[e].target] for e in graph.out_edges[vertex])
    return memo[source]


def k_of_path(
    path: Path, decomp: Decomposition, conventions: PathConventions = COMPILED_CONVENTIONS
) -> int:
    """Index k used in the weight c(k, N) of a path.

    ``entry``: position of the first g_- vertex, or N when the path stays in h.
    ``prefix``: length of the longest prefix ending in h, 0 when there is none.
    """
    vertices = path.vertices or (path.source,)
    if conventions.k_mode == K_ENTRY:
        for position, vertex in enumerate(vertices):
            if decomp.is_minus(vertex):
                return position
        return path.length
    last = 0
    for position, vertex in enumerate(vertices):
        if decomp.is_h(vertex):
            last = position
    return last


class _GeneralWeights:
    """Coefficient tables of the split-point recursion for non-subalgebra g_-."""

    def __init__(self, order: int) -> None:
        self.start_minus = exp_neg_coeffs(order)
        self.step_minus = exp_quotient_coeffs(order)
        self.start_h = tuple(
            bernoulli(j, MINUS_HALF) / factorial(j) for j in range(order + 1)
        )
        self.step_h = neg_exp_quotient_coeffs(order)


def path_integral(
    graph: ActionGraph,
    source: int,
    decomp: Decomposition,
    truncation: int,
    conventions: PathConventions = COMPILED_CONVENTIONS,
    general: bool | None = None,
    first_edges: Sequence[int] | None = None,
    include_trivial: bool = True,
) -> PathMeasureResult:
    """Evaluate sum_p K(p) mu(p) (x) target(p) over paths of length <= truncation.

    ``first_edges`` restricts the sum to paths starting with one of the given
    edges; together with ``include_trivial`` this partitions the work.
    """
    if general is None:
        general = not decomp.is_subalgebra
    variables = decomp.dual_variables()
    is_minus = [decomp.is_minus(v) for v in range(graph.vertex_count)]
    sign = conventions.k_sign
    b1_sign = conventions.b1_sign
    prefix_mode = conventions.k_mode == K_PREFIX
    tables = _GeneralWeights(truncation) if general else None

    size = truncation + 1
    vertex_at = [source] * size
    mono_at: list[Monomial] = [()] * size
    coeff_at = [Fraction(1)] * size
    entry_at = [-1] * size
    w_at: list[Fraction | None] = [None] * size
    terms_a: dict[Key, Fraction] = {}
    terms_b: dict[Key, Fraction] = {}
    stats = PathStatistics()

    def weight(depth: int) -> Fraction:
        vertex = vertex_at[depth]
        if tables is not None:
            start = tables.start_minus if is_minus[vertex] else tables.start_h
            step = tables.step_minus if is_minus[vertex] else tables.step_h
            value = start[depth]
            for i in range(depth):
                if is_minus[vertex_at[i]] == is_minus[vertex]:
                    previous = w_at[i]
                    if previous:
                        value += previous * step[depth - i]
            w_at[depth] = value
            return sign * (value if depth % 2 == 0 else -value)
        if not is_minus[vertex]:
            return sign * c_coeff(depth, depth, b1_sign)
        entry = entry_at[depth]
        k = (entry - 1 if entry > 0 else 0) if prefix_mode else entry
        return sign * c_coeff(k, depth, b1_sign)

    def visit(depth: int) -> None:
        stats.path_count += 1
        value = weight(depth) * coeff_at[depth]
        key = (mono_at[depth], vertex_at[depth])
        if coeff_at[depth]:
            stats.collected.add(key)
            stats.path_degree = max(stats.path_degree, len(key[0]))
        if not value:
            return
        terms = terms_a if is_minus[vertex_at[depth]] else terms_b
        total = terms.get(key, Fraction(0)) + value
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)

    entry_at[0] = 0 if is_minus[source] else -1
    if include_trivial:
        visit(0)
    elif general:
        weight(0)

    root_edges = graph.out_edges[source] if first_edges is None else tuple(first_edges)
    stack: list[Iterator[int]] = []
    if root_edges:
        if truncation > 0:
            stack.append(iter(root_edges))
        else:
            stats.truncated = True
    while stack:
        depth = len(stack)
        try:
            e = next(stack[-1])
        except StopIteration:
            stack.pop()
            continue
        edge = graph.edges[e]
        product = variables.append(mono_at[depth - 1], edge.label)
        if product is None:
            continue
        parity_sign, mono = product
        factor = -edge.weight if parity_sign > 0 else edge.weight
        vertex = edge.target
        vertex_at[depth] = vertex
        mono_at[depth] = mono
        coeff_at[depth] = coeff_at[depth - 1] * factor
        previous_entry = entry_at[depth - 1]
        entry_at[depth] = previous_entry if previous_entry >= 0 else (
            depth if is_minus[vertex] else -1
        )
        visit(depth)
        if graph.out_edges[vertex]:
            if depth < truncation:
                stack.append(iter(graph.out_edges[vertex]))
            else:
                stats.truncated = True

    a_part = SuperPoly(variables, dict(sorted(terms_a.items())), truncation)
    b_part = SuperPoly(variables, dict(sorted(terms_b.items())), truncation)
    stats.monomial_count = len(a_part) + len(b_part)
    stats.max_degree = max(a_part.degree(), b_part.degree())
    return PathMeasureResult(source, a_part, b_part, stats)


def partition_by_first_edge(graph: ActionGraph, source: int) -> list[tuple[int, ...]]:
    """Work units for parallel evaluation: one per edge leaving ``source``."""
    return [(e,) for e in graph.out_edges[source]]


def merge_partials(source: int, partials: Sequence[PathMeasureResult]) -> PathMeasureResult:
    """Exact sum of partial results, in the order given."""
    if not partials:
        msg = "nothing to merge"
        raise DomainError(msg)
    a_part = partials[0].a_part
    b_part = partials[0].b_part
    stats = PathStatistics(
        path_count=partials[0].stats.path_count,
        truncated=partials[0].stats.truncated,
        path_degree=partials[0].stats.path_degree,
        collected=set(partials[0].stats.collected),
    )
    for partial in partials[1:]:
        a_part = a_part + partial.a_part
        b_part = b_part + partial.b_part
        stats.path_count += partial.stats.path_count
        stats.truncated = stats.truncated or partial.stats.truncated
        stats.path_degree = max(stats.path_degree, partial.stats.path_degree)
        stats.collected |= partial.stats.collected
    a_part = SuperPoly(a_part.variables, dict(sorted(a_part.terms.items())), a_part.truncation)
    b_part = SuperPoly(b_part.variables, dict(sorted(b_part.terms.items())), b_part.truncation)
    stats.monomial_count = len(a_part) + len(b_part)
    stats.max_degree = max(a_part.degree(), b_part.degree())
    return PathMeasureResult(source, a_part, b_part, stats)
