"""Command-line front end: resolve a job, run the engines and write the artifacts."""

import argparse
import asyncio
import json
import logging
import sys
import traceback
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import voluptuous as vol
from async_timeout import timeout

from .cache import StructureCache, build_algebra
from .config import JobConfig, load_job_config, read_toml
from .const import (
    CONF_ALGEBRA,
    CONF_ALGEBRA_FILE,
    CONF_CACHE_DIR,
    CONF_DECOMP,
    CONF_ENGINE,
    CONF_FORMAT,
    CONF_LOG_LEVEL,
    CONF_MODULE,
    CONF_OUT,
    CONF_REP_FILE,
    CONF_REPRESENTATION,
    CONF_TIME_BUDGET,
    CONF_TRUNCATION,
    CONF_WEIGHTS,
    CONF_WORKERS,
    DECOMP_TRIANGULAR,
    DEFAULT_INDUCED_TRUNCATION,
    DEFAULT_LOG_LEVEL,
    ENGINE_BOTH,
    ENGINE_GRAPH,
    ENGINE_SERIES,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_TIMEOUT,
    EXIT_VERIFY_FAILED,
    FAMILY_CUSTOM,
    FORMAT_STATS,
    FORMAT_STRUCTURED,
    FORMAT_TEX,
    MODULE_COINDUCED,
    MODULE_INDUCED,
    PROGRAM_NAME,
    REP_ADJOINT,
    REP_CHARACTER,
    REP_CUSTOM,
)
from .decomp import Decomposition, from_spec
from .emit import emit_structured, emit_tex
from .errors import ConfigError, DiffRealizeError
from .graph import ActionGraph, build_action_graph, count_paths, merge_partials, path_integral
from .liealg import LieSuperAlgebra, basis_vector, load_custom
from .realize import HRepresentation, build_realization, make_adjoint, make_character, make_custom
from .series import PhiH, SeriesEngine, default_truncation
from .verify import (
    GeneratorStatistics,
    VerificationReport,
    check_degree_bound,
    check_homomorphism,
    check_induced_oracle,
    check_statistics,
    compare_phi_h_tables,
    distinguished_generators,
    render_text,
    statistics_from_result,
    summarize_reduced,
    summarize_statistics,
)

_LOGGER: logging.Logger = logging.getLogger(__package__)

SOURCE_BUILTIN = "builtin"
SOURCE_CUSTOM = "custom"

# (kind, payload): ("builtin", "E:6") or ("custom", <algebra spec as JSON>)
AlgebraSource = tuple[str, str]

# Per-process algebra, decomposition and action graph, keyed by plain data so
# that worker processes rebuild them once instead of receiving pickled objects
_CONTEXTS: dict[tuple[AlgebraSource, str], tuple[Decomposition, ActionGraph]] = {}
_SERIES: dict[tuple[AlgebraSource, str, int], SeriesEngine] = {}


@dataclass(slots=True)
class Job:
    """A configuration resolved to validated objects, ready to run."""

    config: JobConfig
    algebra: LieSuperAlgebra
    decomp: Decomposition
    source: AlgebraSource
    decomp_key: str
    rep: HRepresentation | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROGRAM_NAME,
        description="Differential-operator realizations of induced and coinduced modules",
    )
    parser.add_argument("--config", help="TOML job file; flags override its keys")
    parser.add_argument(
        "--algebra", dest=CONF_ALGEBRA, help="A:n, D:n, E:n, gl:n, sl:n or custom"
    )
    parser.add_argument("--algebra-file", dest=CONF_ALGEBRA_FILE, help="custom algebra (TOML)")
    parser.add_argument(
        "--decomp", dest=CONF_DECOMP, help="'triangular' or a TOML file with minus/h lists"
    )
    parser.add_argument("--module", dest=CONF_MODULE, choices=[MODULE_COINDUCED, MODULE_INDUCED])
    parser.add_argument(
        "--representation",
        dest=CONF_REPRESENTATION,
        choices=[REP_CHARACTER, REP_ADJOINT, REP_CUSTOM],
    )
    parser.add_argument(
        "--weights",
        dest=CONF_WEIGHTS,
        help="comma-separated character weights; 'symbolic' keeps a lambda symbol",
    )
    parser.add_argument(
        "--representation-file", dest=CONF_REP_FILE, help="custom representation (TOML)"
    )
    parser.add_argument(
        "--engine", dest=CONF_ENGINE, choices=[ENGINE_GRAPH, ENGINE_SERIES, ENGINE_BOTH]
    )
    parser.add_argument("--truncation", dest=CONF_TRUNCATION, type=int)
    parser.add_argument(
        "--format", dest=CONF_FORMAT, choices=[FORMAT_TEX, FORMAT_STRUCTURED, FORMAT_STATS]
    )
    parser.add_argument("--out", dest=CONF_OUT, help="output file (default: standard output)")
    parser.add_argument("--cache-dir", dest=CONF_CACHE_DIR)
    parser.add_argument("--verify", action="store_true", default=None)
    parser.add_argument("--stats", action="store_true", default=None)
    parser.add_argument("--workers", dest=CONF_WORKERS, type=int)
    parser.add_argument("--time-budget", dest=CONF_TIME_BUDGET, type=int, help="seconds")
    parser.add_argument("--log-level", dest=CONF_LOG_LEVEL)
    parser.add_argument("--debug", action="store_true", default=None)
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    if CONF_WEIGHTS in overrides:
        overrides[CONF_WEIGHTS] = [w.strip() for w in overrides[CONF_WEIGHTS].split(",")]
    decomposition = overrides.get(CONF_DECOMP)
    if decomposition is not None and decomposition != DECOMP_TRIANGULAR:
        overrides[CONF_DECOMP] = read_toml(decomposition, "decomposition file")
    return overrides


def _context(source: AlgebraSource, decomp_key: str) -> tuple[Decomposition, ActionGraph]:
    key = (source, decomp_key)
    if key not in _CONTEXTS:
        kind, payload = source
        if kind == SOURCE_CUSTOM:
            alg = load_custom(json.loads(payload))
        else:
            family, _, rank = payload.partition(":")
            alg = build_algebra(family, int(rank))
        decomp = from_spec(alg, json.loads(decomp_key))
        _CONTEXTS[key] = (decomp, build_action_graph(decomp.algebra, decomp))
    return _CONTEXTS[key]


def _series_unit(
    source: AlgebraSource, decomp_key: str, generator: int, truncation: int
) -> PhiH:
    key = (source, decomp_key, truncation)
    if key not in _SERIES:
        decomp, _ = _context(source, decomp_key)
        _SERIES[key] = SeriesEngine(decomp, truncation)
    return _SERIES[key].phi_h(basis_vector(generator), generator)


def _graph_unit(
    source: AlgebraSource,
    decomp_key: str,
    generator: int,
    truncation: int,
    first_edges: tuple[int, ...] | None,
    include_trivial: bool,
) -> Any:
    decomp, graph = _context(source, decomp_key)
    return path_integral(
        graph,
        generator,
        decomp,
        truncation,
        first_edges=first_edges,
        include_trivial=include_trivial,
    )


def _statistics_unit(
    source: AlgebraSource, decomp_key: str, generator: int, truncation: int
) -> GeneratorStatistics:
    decomp, graph = _context(source, decomp_key)
    result = path_integral(graph, generator, decomp, truncation)
    return statistics_from_result(generator, count_paths(graph, generator, truncation), result)


async def _run_units(
    executor: ProcessPoolExecutor | None,
    func: Callable[..., Any],
    units: Sequence[tuple[Any, ...]],
) -> list[Any]:
    """Results in unit order, from worker processes or inline."""
    if executor is None:
        results = []
        for unit in units:
            results.append(func(*unit))
            # let the time budget fire between units
            await asyncio.sleep(0)
        return results
    loop = asyncio.get_running_loop()
    return list(await asyncio.gather(*(loop.run_in_executor(executor, func, *u) for u in units)))


def resolve_algebra(config: JobConfig) -> tuple[LieSuperAlgebra, AlgebraSource]:
    if config.family == FAMILY_CUSTOM:
        if config.algebra_file is None:
            msg = "a custom algebra needs algebra_file"
            _LOGGER.error(msg)
            raise ConfigError(msg)
        alg = load_custom(read_toml(config.algebra_file, "algebra file"))
        return alg, (SOURCE_CUSTOM, json.dumps(alg.to_spec(), sort_keys=True))
    rank = config.rank
    if rank is None:
        msg = f"algebra {config.algebra} has no rank"
        _LOGGER.error(msg)
        raise ConfigError(msg)
    alg = StructureCache(config.cache_dir).get(config.family, rank)
    return alg, (SOURCE_BUILTIN, f"{config.family}:{rank}")


def resolve_representation(config: JobConfig, decomp: Decomposition) -> HRepresentation:
    if config.representation == REP_ADJOINT:
        return make_adjoint(decomp, config.adjoint_target)
    if config.representation == REP_CUSTOM:
        if config.representation_file is None:
            msg = "a custom representation needs representation_file"
            _LOGGER.error(msg)
            raise ConfigError(msg)
        return make_custom(decomp, read_toml(config.representation_file, "representation file"))
    return make_character(decomp, config.weight_values())


def resolve_job(config: JobConfig) -> Job:
    """Validated (algebra, decomposition, representation) before any computation."""
    try:
        alg, source = resolve_algebra(config)
        decomp = from_spec(alg, config.decomposition)
        decomp_key = json.dumps(config.decomposition, sort_keys=True)
        job = Job(config, alg, decomp, source, decomp_key)
        if config.format != FORMAT_STATS:
            job.rep = resolve_representation(config, decomp)
    except vol.Invalid as e:
        msg = f"invalid input file: {e}"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e
    _CONTEXTS.setdefault(
        (source, decomp_key), (decomp, build_action_graph(decomp.algebra, decomp))
    )
    _LOGGER.info("Resolved job %s", decomp.describe())
    return job


def phi_h_truncation(job: Job) -> int:
    """Series order for phi and h: l + max degree when graded, else the configured one."""
    decomp = job.decomp
    if decomp.algebra.is_graded or job.config.truncation is None:
        return default_truncation(decomp)
    return job.config.truncation


def operator_truncation(job: Job) -> int | None:
    if job.config.module == MODULE_INDUCED:
        if job.config.truncation is None:
            return DEFAULT_INDUCED_TRUNCATION
        return job.config.truncation
    return None if job.decomp.algebra.is_graded else job.config.truncation


async def compute_table(
    job: Job, engine: str, executor: ProcessPoolExecutor | None
) -> dict[int, PhiH]:
    truncation = phi_h_truncation(job)
    generators = range(job.decomp.algebra.dim)
    if engine == ENGINE_SERIES:
        units = [(job.source, job.decomp_key, g, truncation) for g in generators]
        results = await _run_units(executor, _series_unit, units)
        return dict(zip(generators, results, strict=True))
    _, graph = _context(job.source, job.decomp_key)
    table: dict[int, PhiH] = {}
    if executor is None:
        units = [(job.source, job.decomp_key, g, truncation, None, True) for g in generators]
        for g, result in zip(generators, await _run_units(None, _graph_unit, units), strict=True):
            table[g] = PhiH(g, result.a_part, result.b_part, truncation, result.stats.truncated)
        return table
    # one unit for the trivial path, then one per first edge, merged in edge order
    units = []
    owners = []
    for g in generators:
        units.append((job.source, job.decomp_key, g, truncation, (), True))
        owners.append(g)
        for e in graph.out_edges[g]:
            units.append((job.source, job.decomp_key, g, truncation, (e,), False))
            owners.append(g)
    results = await _run_units(executor, _graph_unit, units)
    for g in generators:
        merged = merge_partials(g, [r for owner, r in zip(owners, results) if owner == g])
        table[g] = PhiH(g, merged.a_part, merged.b_part, truncation, merged.stats.truncated)
    return table


async def compute_statistics(
    job: Job, executor: ProcessPoolExecutor | None
) -> list[GeneratorStatistics]:
    generators = distinguished_generators(job.decomp)
    truncation = default_truncation(job.decomp, generators)
    units = [(job.source, job.decomp_key, g, truncation) for g in generators]
    return await _run_units(executor, _statistics_unit, units)


def render_statistics(job: Job, stats: Sequence[GeneratorStatistics]) -> str:
    alg = job.decomp.algebra
    paths, monomials, degree = summarize_statistics(stats)
    reduced_monomials, reduced_degree = summarize_reduced(stats)
    lines = [
        f"% statistics for {alg.name}",
        f"% {job.decomp.describe()}",
        f"longest path count: {paths}",
        f"max monomial count: {monomials}",
        f"max degree: {degree}",
        f"max monomial count after cancellation: {reduced_monomials}",
        f"max degree after cancellation: {reduced_degree}",
    ]
    for s in stats:
        lines.append(
            f"  {alg.basis[s.generator].label}: {s.path_count} paths, "
            f"{s.collected_count} monomials, degree {s.path_degree} "
            f"({s.monomial_count} monomials, degree {s.max_degree} after cancellation)"
        )
    return "\n".join(lines) + "\n"


def write_output(text: str, out: str | None, suffix: str = "") -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out + suffix)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        msg = f"cannot write {path}: {e}"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e
    _LOGGER.info("Wrote %s", path)


async def _execute(job: Job, executor: ProcessPoolExecutor | None) -> list[VerificationReport]:
    config = job.config
    reports: list[VerificationReport] = []
    if config.format == FORMAT_STATS or config.stats:
        stats = await compute_statistics(job, executor)
        if config.format == FORMAT_STATS:
            write_output(render_statistics(job, stats), config.out)
        reports.append(check_statistics(job.decomp, per_generator=stats))
        if config.format == FORMAT_STATS:
            return reports

    engine = ENGINE_SERIES if config.engine == ENGINE_BOTH else config.engine
    table = await compute_table(job, engine, executor)
    if config.engine == ENGINE_BOTH:
        graph_table = await compute_table(job, ENGINE_GRAPH, executor)
        reports.append(compare_phi_h_tables(job.decomp, graph_table, table))

    assert job.rep is not None
    realization = build_realization(config.module, job.rep, table, operator_truncation(job))
    if config.format == FORMAT_STRUCTURED:
        write_output(emit_structured(realization), config.out)
    else:
        write_output(emit_tex(realization), config.out)

    if config.verify:
        reports.append(check_homomorphism(realization))
        if job.decomp.algebra.is_graded and job.decomp.kind == DECOMP_TRIANGULAR:
            reports.append(check_degree_bound(job.decomp))
        if config.module == MODULE_INDUCED and realization.truncation is not None:
            reports.append(check_induced_oracle(job.decomp, job.rep, realization.truncation))
    return reports


async def run_job(config: JobConfig) -> int:
    """Run one job within its time budget; returns the exit code."""
    job = resolve_job(config)
    executor = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        async with timeout(config.time_budget):
            reports = await _execute(job, executor)
    finally:
        if executor is not None:
            executor.shutdown(wait=False, cancel_futures=True)
    if reports:
        write_output(render_text(reports), config.out, ".report" if config.out else "")
    failed = [r for r in reports if not r.passed]
    if failed:
        _LOGGER.error("%d of %d checks failed", len(failed), len(reports))
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def configure_logging(level: str, debug: bool = False) -> None:
    logging.basicConfig(
        level=level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    logging.getLogger().setLevel(level.upper())
    if debug:
        _LOGGER.debug("Enabling debug logging")
        logging.getLogger(__package__).setLevel(logging.DEBUG)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or DEFAULT_LOG_LEVEL, bool(args.debug))
    try:
        config = load_job_config(args.config, _overrides(args))
        configure_logging(config.log_level, config.debug)
        return asyncio.run(run_job(config))
    except DiffRealizeError as e:
        print(f"{PROGRAM_NAME}: {e}", file=sys.stderr)
        return e.exit_code
    except (TimeoutError, asyncio.TimeoutError):
        msg = f"time budget exceeded for {args.algebra or args.config}"
        _LOGGER.error(msg)
        print(f"{PROGRAM_NAME}: {msg}", file=sys.stderr)
        return EXIT_TIMEOUT
    except Exception as e:  # pylint: disable=broad-except
        tb_str = "".join(traceback.format_tb(e.__traceback__))
        msg = f"Unhandled error: '{e}' from {tb_str}"
        _LOGGER.error(msg)
        print(f"{PROGRAM_NAME}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
