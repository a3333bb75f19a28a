"""Job configuration and the schemas of user-supplied input files."""

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import toml
import voluptuous as vol

from .const import (
    CONF_ALGEBRA,
    CONF_ALGEBRA_FILE,
    CONF_CACHE_DIR,
    CONF_DEBUG,
    CONF_DECOMP,
    CONF_ENGINE,
    CONF_FORMAT,
    CONF_H,
    CONF_LOG_LEVEL,
    CONF_MINUS,
    CONF_MODULE,
    CONF_OUT,
    CONF_REP_FILE,
    CONF_REPRESENTATION,
    CONF_STATS,
    CONF_TIME_BUDGET,
    CONF_TRUNCATION,
    CONF_VERIFY,
    CONF_WEIGHTS,
    CONF_WORKERS,
    DECOMP_TRIANGULAR,
    DEFAULT_LOG_LEVEL,
    DEFAULT_TIME_BUDGET,
    DEFAULT_WORKERS,
    ENGINE_BOTH,
    ENGINE_GRAPH,
    ENGINE_SERIES,
    EVEN,
    FAMILY_CUSTOM,
    FAMILY_GL,
    FAMILY_SL,
    FORMAT_STATS,
    FORMAT_STRUCTURED,
    FORMAT_TEX,
    MODULE_COINDUCED,
    MODULE_INDUCED,
    ODD,
    PARITY_NAMES,
    REP_ADJOINT,
    REP_CHARACTER,
    REP_CUSTOM,
    SIMPLY_LACED_FAMILIES,
)
from .errors import ConfigError

_LOGGER: logging.Logger = logging.getLogger(__package__)

CONF_ADJOINT_TARGET = "adjoint_target"
SYMBOLIC_WEIGHT = "symbolic"

Scalar = vol.Any(str, int)

ALGEBRA_SCHEMA = vol.Schema(
    {
        vol.Required("name"): str,
        vol.Optional("family", default=FAMILY_CUSTOM): str,
        vol.Optional("rank"): vol.All(int, vol.Range(min=1)),
        vol.Required("basis"): [
            {
                vol.Required("label"): str,
                vol.Optional("parity", default="even"): vol.In(PARITY_NAMES),
                vol.Optional("degree"): int,
            }
        ],
        vol.Optional("brackets", default=list): [
            {
                vol.Required("left"): str,
                vol.Required("right"): str,
                vol.Required("result"): {str: Scalar},
            }
        ],
    }
)

DECOMP_SCHEMA = vol.Schema(
    {
        vol.Optional("kind", default="custom"): vol.In([DECOMP_TRIANGULAR, "custom"]),
        vol.Optional(CONF_MINUS, default=list): [vol.Any(str, int, {str: Scalar})],
        vol.Optional(CONF_H, default=list): [vol.Any(str, int, {str: Scalar})],
    }
)

REPRESENTATION_SCHEMA = vol.Schema(
    {
        vol.Required("dimension"): vol.All(int, vol.Range(min=1)),
        vol.Optional("parities"): [
            vol.Any(vol.All(vol.In(PARITY_NAMES), PARITY_NAMES.get), vol.In([EVEN, ODD]))
        ],
        vol.Optional("labels"): [str],
        vol.Optional("symbols", default=1): vol.All(int, vol.Range(min=1)),
        vol.Required("matrices"): {str: [[Scalar]]},
    }
)


def parse_algebra(text: str) -> tuple[str, int | None]:
    """``"E:6"``, ``"gl:15"``, ``"sl:3"`` or ``"custom"`` to (family, rank)."""
    if text == FAMILY_CUSTOM:
        return FAMILY_CUSTOM, None
    family, _, rank = text.partition(":")
    if family not in (*SIMPLY_LACED_FAMILIES, FAMILY_GL, FAMILY_SL) or not rank.isdigit():
        msg = f"cannot read algebra {text!r}; expected e.g. A:1, D:4, E:6, gl:3 or custom"
        raise vol.Invalid(msg)
    return family, int(rank)


def _algebra(value: Any) -> str:
    text = str(value)
    parse_algebra(text)
    return text


def _decomposition(value: Any) -> Any:
    if value == DECOMP_TRIANGULAR:
        return value
    if isinstance(value, Mapping):
        return DECOMP_SCHEMA(dict(value))
    msg = f"decomposition must be {DECOMP_TRIANGULAR!r} or a table, got {value!r}"
    raise vol.Invalid(msg)


JOB_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_ALGEBRA): _algebra,
        vol.Optional(CONF_ALGEBRA_FILE): str,
        vol.Optional(CONF_DECOMP, default=DECOMP_TRIANGULAR): _decomposition,
        vol.Optional(CONF_MODULE, default=MODULE_COINDUCED): vol.In(
            [MODULE_COINDUCED, MODULE_INDUCED]
        ),
        vol.Optional(CONF_REPRESENTATION, default=REP_CHARACTER): vol.In(
            [REP_CHARACTER, REP_ADJOINT, REP_CUSTOM]
        ),
        vol.Optional(CONF_WEIGHTS): [vol.Coerce(str)],
        vol.Optional(CONF_ADJOINT_TARGET, default="g"): vol.In(["g", "h"]),
        vol.Optional(CONF_REP_FILE): str,
        vol.Optional(CONF_ENGINE, default=ENGINE_SERIES): vol.In(
            [ENGINE_GRAPH, ENGINE_SERIES, ENGINE_BOTH]
        ),
        vol.Optional(CONF_TRUNCATION): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Optional(CONF_FORMAT, default=FORMAT_TEX): vol.In(
            [FORMAT_TEX, FORMAT_STRUCTURED, FORMAT_STATS]
        ),
        vol.Optional(CONF_OUT): str,
        vol.Optional(CONF_CACHE_DIR): str,
        vol.Optional(CONF_VERIFY, default=False): bool,
        vol.Optional(CONF_STATS, default=False): bool,
        vol.Optional(CONF_WORKERS, default=DEFAULT_WORKERS): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_TIME_BUDGET, default=DEFAULT_TIME_BUDGET): vol.All(
            vol.Coerce(int), vol.Range(min=1)
        ),
        vol.Optional(CONF_LOG_LEVEL, default=DEFAULT_LOG_LEVEL): vol.All(
            vol.Upper, vol.In(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
        ),
        vol.Optional(CONF_DEBUG, default=False): bool,
    }
)


@dataclass(slots=True)
class JobConfig:
    """A validated job: what to build, how, and where to write it."""

    algebra: str
    decomposition: str | dict[str, Any] = DECOMP_TRIANGULAR
    module: str = MODULE_COINDUCED
    representation: str = REP_CHARACTER
    weights: list[str] | None = None
    adjoint_target: str = "g"
    representation_file: str | None = None
    algebra_file: str | None = None
    engine: str = ENGINE_SERIES
    truncation: int | None = None
    format: str = FORMAT_TEX
    out: str | None = None
    cache_dir: str | None = None
    verify: bool = False
    stats: bool = False
    workers: int = DEFAULT_WORKERS
    time_budget: int = DEFAULT_TIME_BUDGET  # seconds
    log_level: str = DEFAULT_LOG_LEVEL
    debug: bool = False

    @property
    def family(self) -> str:
        return parse_algebra(self.algebra)[0]

    @property
    def rank(self) -> int | None:
        return parse_algebra(self.algebra)[1]

    def weight_values(self) -> list[str | None] | None:
        """Character weights with ``symbolic`` entries mapped to None."""
        if self.weights is None:
            return None
        return [None if w == SYMBOLIC_WEIGHT else w for w in self.weights]


def read_toml(path: str | os.PathLike[str], what: str) -> dict[str, Any]:
    try:
        return dict(toml.load(path))
    except FileNotFoundError as e:
        msg = f"{what} {path} does not exist"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e
    except (OSError, toml.TomlDecodeError) as e:
        msg = f"cannot read {what} {path}: {e}"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e


def load_job_config(
    path: str | os.PathLike[str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> JobConfig:
    """Read a TOML job file, apply command-line overrides and validate."""
    data: dict[str, Any] = read_toml(path, "job file") if path is not None else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    try:
        validated = JOB_SCHEMA(data)
    except vol.Invalid as e:
        msg = f"invalid job configuration: {e}"
        _LOGGER.error(msg)
        raise ConfigError(msg) from e
    if validated[CONF_ALGEBRA] == FAMILY_CUSTOM and CONF_ALGEBRA_FILE not in validated:
        msg = "a custom algebra needs algebra_file"
        _LOGGER.error(msg)
        raise ConfigError(msg)
    if validated[CONF_REPRESENTATION] == REP_CUSTOM and CONF_REP_FILE not in validated:
        msg = "a custom representation needs representation_file"
        _LOGGER.error(msg)
        raise ConfigError(msg)
    _LOGGER.debug("Job configuration: %s", validated)
    return JobConfig(**validated)
