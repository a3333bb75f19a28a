"""Tests for the verification checks and their reports."""

import json

import pytest
from diffrealize.chevalley import build_simply_laced
from diffrealize.const import ENGINE_GRAPH, ENGINE_SERIES, STATUS_FAIL, STATUS_PASS, STATUS_WARN
from diffrealize.decomp import triangular
from diffrealize.errors import DomainError
from diffrealize.liealg import build_gl
from diffrealize.verify import (
    GeneratorStatistics,
    VerificationReport,
    check_basis_independence,
    check_degree_bound,
    check_engine_equivalence,
    check_series_consistency,
    check_statistics,
    compare_phi_h_tables,
    compute_phi_h,
    distinguished_generators,
    generator_statistics,
    permuted_decomposition,
    phi_h_table,
    render_structured,
    render_text,
    summarize_reduced,
    summarize_statistics,
)

from .const import SL2_E, SL2_F, SL2_H, SL2_STATISTICS, SL3_GENERAL_TRUNCATION


def test_phi_h_table(sl2_decomp):
    series = phi_h_table(sl2_decomp)
    graph = phi_h_table(sl2_decomp, engine=ENGINE_GRAPH)
    assert sorted(series) == [SL2_E, SL2_H, SL2_F]
    for g in series:
        assert series[g].phi == graph[g].phi
        assert series[g].h_part == graph[g].h_part
    assert phi_h_table(sl2_decomp, generators=[SL2_F])[SL2_F].truncation == 0

    result = compute_phi_h(sl2_decomp, SL2_E, 2, ENGINE_SERIES)
    assert result.phi.terms == {((0, 0), SL2_F): -1}
    with pytest.raises(DomainError) as e:
        _ = compute_phi_h(sl2_decomp, SL2_E, 2, "magic")
    assert "unknown engine 'magic'" in str(e)


def test_compare_tables(sl2_decomp):
    series = phi_h_table(sl2_decomp)
    graph = phi_h_table(sl2_decomp, engine=ENGINE_GRAPH)
    assert compare_phi_h_tables(sl2_decomp, graph, series).passed

    graph[SL2_E] = graph[SL2_H]
    report = compare_phi_h_tables(sl2_decomp, graph, series)
    assert report.status == STATUS_FAIL
    assert report.counterexample.startswith("phi(e): coefficient of")
    assert report.counterexample.endswith("(graph vs series)")


def test_engine_equivalence_generators(a2_decomp):
    report = check_engine_equivalence(a2_decomp, generators=[0, 1])
    assert report.passed
    assert report.details["generators"] == 2
    assert report.elapsed >= 0


def test_series_consistency(gl3_decomp, gl11_decomp, sl3_general_decomp):
    assert check_series_consistency(gl3_decomp, 4).passed
    assert check_series_consistency(gl11_decomp, 2).passed
    assert check_series_consistency(sl3_general_decomp, SL3_GENERAL_TRUNCATION).passed


def test_degree_bound(sl2_decomp, a2_decomp):
    report = check_degree_bound(a2_decomp)
    assert report.passed
    assert report.details["depth"] == 2
    report = check_degree_bound(sl2_decomp, ENGINE_SERIES)
    assert report.details["attained"] == {"-1": 0, "0": 1, "1": 2}


def test_basis_independence(gl3_decomp, gl11_decomp):
    assert check_basis_independence(gl3_decomp).passed
    assert check_basis_independence(gl3_decomp, permutation=[1, 2, 0]).passed
    assert check_basis_independence(gl11_decomp).passed

    with pytest.raises(DomainError) as e:
        _ = permuted_decomposition(gl3_decomp, [0, 0, 1])
    assert "is not a permutation of the g_- basis" in str(e)


def test_statistics_sl2(sl2_decomp, caplog):
    assert distinguished_generators(sl2_decomp) == [SL2_E]
    stats = generator_statistics(sl2_decomp, SL2_E, 2)
    assert (stats.path_count, stats.monomial_count, stats.max_degree) == SL2_STATISTICS
    assert (stats.path_count, stats.collected_count, stats.path_degree) == SL2_STATISTICS
    assert summarize_statistics([stats]) == SL2_STATISTICS
    assert summarize_statistics([]) == (0, 0, -1)
    assert summarize_reduced([stats]) == (3, 2)

    report = check_statistics(sl2_decomp, SL2_STATISTICS)
    assert report.status == STATUS_PASS
    assert report.details == {
        "path_count": 3,
        "monomial_count": 3,
        "max_degree": 2,
        "reduced_monomial_count": 3,
        "reduced_degree": 2,
    }

    report = check_statistics(sl2_decomp, (3, 3, 1))
    assert report.status == STATUS_FAIL
    assert report.counterexample == "max degree 2, expected 1"

    caplog.clear()
    report = check_statistics(sl2_decomp, (4, 3, 2))
    assert report.status == STATUS_WARN
    assert report.passed
    assert "Statistics for A_1: counts (3, 3) differ from (4, 3)" in caplog.text


def test_statistics_count_before_cancellation(gl4_decomp):
    # l + d = 4 is even, so the degree-4 terms of phi cancel
    report = check_statistics(gl4_decomp, (0, 0, 4))
    assert report.status == STATUS_WARN
    assert report.details["max_degree"] == 4
    assert report.details["reduced_degree"] == 3
    assert report.details["monomial_count"] > report.details["reduced_monomial_count"]

    report = check_statistics(gl4_decomp, (0, 0, 3))
    assert report.counterexample == "max degree 4, expected 3"


def test_statistics_precomputed(sl2_decomp):
    stats = [GeneratorStatistics(SL2_E, 10, 4, 1, 5, 2)]
    report = check_statistics(sl2_decomp, (10, 5, 2), per_generator=stats)
    assert report.status == STATUS_PASS
    assert report.details["reduced_degree"] == 1


def test_render(sl2_decomp):
    passed = check_engine_equivalence(sl2_decomp)
    failed = VerificationReport("homomorphism", "A_1").fail("[R(e), R(f)]: term 1 differs")
    text = render_text([passed, failed])
    assert text.startswith("PASS      engine-equivalence [A_1: g_- = <f>, h = <e, h>]")
    assert "FAIL      homomorphism [A_1]" in text
    assert "          [R(e), R(f)]: term 1 differs" in text
    assert "          truncation: 2" in text

    data = json.loads(render_structured([passed, failed]))
    assert [entry["status"] for entry in data["report"]] == ["pass", "fail"]
    assert data["report"][0]["details"] == {"generators": 3, "truncation": 2}
    assert data["report"][1]["counterexample"] == "[R(e), R(f)]: term 1 differs"
    assert "details" not in data["report"][1]


@pytest.mark.slow
def test_statistics_e6():
    decomp = triangular(build_simply_laced("E", 6))
    report = check_statistics(decomp)
    assert report.passed, report.counterexample
    assert report.details["max_degree"] == 12
    assert report.details["reduced_degree"] == 11


@pytest.mark.slow
def test_engine_equivalence_e6():
    decomp = triangular(build_simply_laced("E", 6))
    assert check_engine_equivalence(decomp, generators=decomp.algebra.homogeneous(1)).passed


@pytest.mark.slow
def test_degree_bound_d4_e6(d4_decomp):
    assert check_degree_bound(d4_decomp).passed
    decomp = triangular(build_simply_laced("E", 6))
    report = check_degree_bound(decomp, generators=decomp.algebra.homogeneous(1))
    assert report.passed, report.counterexample


@pytest.mark.slow
def test_statistics_gl15():
    report = check_statistics(triangular(build_gl(15)))
    assert report.passed, report.counterexample
    assert report.details["max_degree"] == 15
