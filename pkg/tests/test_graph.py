"""Tests for the action graph and the path integral."""

from fractions import Fraction

import pytest
from diffrealize.const import ENGINE_GRAPH, STATUS_FAIL, STATUS_PASS, STATUS_TRUNCATED
from diffrealize.decomp import custom, triangular
from diffrealize.errors import DomainError, GraphCycleError
from diffrealize.graph import (
    K_ENTRY,
    K_PREFIX,
    PathConventions,
    build_action_graph,
    count_paths,
    enumerate_paths,
    find_cycle,
    k_of_path,
    merge_partials,
    partition_by_first_edge,
    path_integral,
)
from diffrealize.liealg import build_gl, load_custom
from diffrealize.scalars import PLUS_HALF
from diffrealize.verify import check_engine_equivalence, phi_h_table

from .const import ABELIAN_SPEC, SL2_E, SL2_F, SL2_H, SL3_GENERAL_TRUNCATION


def test_action_graph_sl2(sl2, sl2_decomp):
    graph = build_action_graph(sl2, sl2_decomp)
    assert graph.vertex_labels == ("e", "h", "f")
    assert graph.label_names == ("X",)
    assert [(e.source, e.target, e.weight) for e in graph.edges] == [
        (SL2_E, SL2_H, -1),
        (SL2_H, SL2_F, 2),
    ]
    assert graph.successors(SL2_E) == [SL2_H]
    assert graph.successors(SL2_F) == []
    assert find_cycle(graph) is None


def test_action_graph_wrong_algebra(sl2_decomp):
    with pytest.raises(DomainError) as e:
        _ = build_action_graph(build_gl(2), sl2_decomp)
    assert "decomposition belongs to A_1, not gl(2)" in str(e)


def test_paths_sl2(sl2, sl2_decomp):
    graph = build_action_graph(sl2, sl2_decomp)
    paths = list(enumerate_paths(graph, SL2_E))
    assert [p.vertices for p in paths] == [(SL2_E,), (SL2_E, SL2_H), (SL2_E, SL2_H, SL2_F)]
    assert [p.length for p in paths] == [0, 1, 2]
    assert paths[-1].target == SL2_F
    assert [p.length for p in enumerate_paths(graph, SL2_E, 1)] == [0, 1]
    assert len(list(enumerate_paths(graph, SL2_E, 0))) == 1

    assert count_paths(graph, SL2_E) == 3
    assert count_paths(graph, SL2_H) == 2
    assert count_paths(graph, SL2_F) == 1
    assert count_paths(graph, SL2_E, 1) == 2

    assert [k_of_path(p, sl2_decomp) for p in paths] == [0, 1, 2]
    prefix = PathConventions(k_mode=K_PREFIX)
    assert [k_of_path(p, sl2_decomp, prefix) for p in paths] == [0, 1, 1]


def test_cycles():
    gl2 = build_gl(2)
    assert find_cycle(build_action_graph(gl2, triangular(gl2))) is None

    # both off-diagonal units in g_- make the graph cyclic
    cyclic = custom(gl2, ["E_{12}", "E_{21}"], ["E_{11}", "E_{22}"])
    graph = build_action_graph(gl2, cyclic)
    cycle = find_cycle(graph)
    assert cycle is not None
    assert len(cycle) >= 2

    with pytest.raises(GraphCycleError) as e:
        _ = list(enumerate_paths(graph, gl2.label_index("E_{11}")))
    assert "a maximal path length is required" in str(e)
    assert e.value.cycle
    with pytest.raises(GraphCycleError):
        _ = count_paths(graph, gl2.label_index("E_{11}"))
    assert count_paths(graph, gl2.label_index("E_{11}"), 2) > 1


def test_path_conventions():
    assert PathConventions() == PathConventions(1, K_ENTRY)
    with pytest.raises(DomainError) as e:
        _ = PathConventions(k_sign=2)
    assert "k_sign must be +1 or -1" in str(e)
    with pytest.raises(DomainError) as e:
        _ = PathConventions(k_mode="suffix")
    assert "k_mode must be one of" in str(e)
    with pytest.raises(DomainError) as e:
        _ = PathConventions(b1_sign=0)
    assert "b1_sign must be -1 or +1" in str(e)


def test_path_integral_sl2(sl2, sl2_decomp):
    graph = build_action_graph(sl2, sl2_decomp)
    result = path_integral(graph, SL2_E, sl2_decomp, 2)
    assert result.a_part.terms == {((0, 0), SL2_F): -1}
    assert result.b_part.terms == {((), SL2_E): 1, ((0,), SL2_H): 1}
    assert result.stats.path_count == 3
    assert result.stats.monomial_count == 3
    assert result.stats.max_degree == 2
    assert result.stats.collected_count == 3
    assert result.stats.path_degree == 2
    assert not result.stats.truncated

    short = path_integral(graph, SL2_E, sl2_decomp, 1)
    assert short.stats.truncated
    assert short.a_part.is_zero()


def test_partition_and_merge(sl2, sl2_decomp):
    graph = build_action_graph(sl2, sl2_decomp)
    whole = path_integral(graph, SL2_E, sl2_decomp, 2)
    units = partition_by_first_edge(graph, SL2_E)
    assert units == [(0,)]
    partials = [path_integral(graph, SL2_E, sl2_decomp, 2, include_trivial=False)]
    partials += [
        path_integral(graph, SL2_E, sl2_decomp, 2, first_edges=(), include_trivial=True)
    ]
    merged = merge_partials(SL2_E, partials)
    assert merged.a_part == whole.a_part
    assert merged.b_part == whole.b_part
    assert merged.stats.path_count == whole.stats.path_count
    assert merged.stats.collected == whole.stats.collected
    assert merged.stats.path_degree == whole.stats.path_degree

    with pytest.raises(DomainError) as e:
        _ = merge_partials(SL2_E, [])
    assert "nothing to merge" in str(e)


def test_engine_equivalence_sl2(sl2_decomp):
    report = check_engine_equivalence(sl2_decomp)
    assert report.status == STATUS_PASS, report.counterexample
    assert report.details == {"truncation": 2, "generators": 3}


def test_engine_equivalence_a2(a2_decomp):
    assert check_engine_equivalence(a2_decomp).passed
    wrong = PathConventions(b1_sign=PLUS_HALF)
    report = check_engine_equivalence(a2_decomp, conventions=wrong)
    assert report.status == STATUS_FAIL
    assert "(graph vs series)" in report.counterexample


def test_engine_equivalence_d4(d4_decomp):
    assert check_engine_equivalence(d4_decomp).passed


def test_engine_equivalence_gl3(gl3_decomp):
    assert check_engine_equivalence(gl3_decomp).passed


def test_engine_equivalence_gl11(gl11, gl11_decomp):
    report = check_engine_equivalence(gl11_decomp)
    assert report.passed, report.counterexample

    psi_minus = gl11.label_index("psi-")
    e11 = gl11.label_index("E11")
    graph = build_action_graph(gl11, gl11_decomp)
    result = path_integral(graph, e11, gl11_decomp, 2)
    assert result.a_part.terms == {((0,), psi_minus): -1}
    assert result.b_part.terms == {((), e11): 1}


def test_engine_equivalence_general(sl3_general_decomp):
    report = check_engine_equivalence(sl3_general_decomp, SL3_GENERAL_TRUNCATION)
    assert report.status in (STATUS_PASS, STATUS_TRUNCATED), report.counterexample
    assert report.counterexample is None

    # every term up to the truncation degree is exact, so the tables agree
    # term by term and do not move when the truncation grows
    order = SL3_GENERAL_TRUNCATION
    series = phi_h_table(sl3_general_decomp, order)
    graph = phi_h_table(sl3_general_decomp, order, engine=ENGINE_GRAPH)
    longer = phi_h_table(sl3_general_decomp, order + 1)
    for g, expected in series.items():
        assert graph[g].phi == expected.phi
        assert graph[g].h_part == expected.h_part
        assert longer[g].phi.upto(order) == expected.phi
        assert longer[g].h_part.upto(order) == expected.h_part


def test_abelian_path_integral():
    abelian = load_custom(ABELIAN_SPEC)
    decomp = triangular(abelian)
    graph = build_action_graph(abelian, decomp)
    assert not graph.edges
    p = abelian.label_index("p")
    q = abelian.label_index("q")

    result = path_integral(graph, p, decomp, 1)
    assert result.a_part.terms == {((), p): Fraction(1)}
    assert result.b_part.is_zero()
    result = path_integral(graph, q, decomp, 1)
    assert result.b_part.terms == {((), q): Fraction(1)}

    flipped = path_integral(graph, p, decomp, 1, PathConventions(k_sign=-1))
    assert flipped.a_part.terms == {((), p): Fraction(-1)}
