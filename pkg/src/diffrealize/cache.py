"""On-disk cache of structure constants for the built-in algebra families."""

import hashlib
import logging
import os
from pathlib import Path
from typing import Any

import toml
import voluptuous as vol

from .const import (
    CACHE_DIR_ENV,
    CACHE_FORMAT_VERSION,
    DEFAULT_CACHE_DIR,
    FAMILY_GL,
    FAMILY_SL,
    SIMPLY_LACED_FAMILIES,
)
from .errors import AlgebraValidationError, CacheError, DomainError
from .liealg import LieSuperAlgebra, build_gl, build_sl, load_custom

_LOGGER: logging.Logger = logging.getLogger(__package__)


def cache_key(family: str, rank: int, version: int = CACHE_FORMAT_VERSION) -> str:
    digest = hashlib.sha256(f"{family}:{rank}:{version}".encode()).hexdigest()
    return digest[:24]


def resolve_cache_dir(configured: str | os.PathLike[str] | None = None) -> Path:
    """Flag or config value, then the environment, then the default."""
    if configured:
        return Path(configured)
    return Path(os.environ.get(CACHE_DIR_ENV, DEFAULT_CACHE_DIR))


def build_algebra(family: str, rank: int) -> LieSuperAlgebra:
    if family == FAMILY_GL:
        return build_gl(rank)
    if family == FAMILY_SL:
        return build_sl(rank)
    if family in SIMPLY_LACED_FAMILIES:
        from .chevalley import build_simply_laced  # pylint: disable=import-outside-toplevel

        return build_simply_laced(family, rank)
    msg = f"unknown algebra family {family!r}"
    _LOGGER.error(msg)
    raise DomainError(msg)


class StructureCache:
    """Content-addressed TOML files, one per (family, rank, format version)."""

    def __init__(self, directory: str | os.PathLike[str] | None = None) -> None:
        self.directory = resolve_cache_dir(directory)

    def path_for(self, family: str, rank: int) -> Path:
        return self.directory / f"{cache_key(family, rank)}.toml"

    def store(self, alg: LieSuperAlgebra) -> Path:
        if alg.rank is None:
            msg = f"{alg.name} has no rank and cannot be cached"
            _LOGGER.error(msg)
            raise CacheError(msg)
        path = self.path_for(alg.family, alg.rank)
        document = {
            "format_version": CACHE_FORMAT_VERSION,
            "family": alg.family,
            "rank": alg.rank,
            "algebra": alg.to_spec(),
        }
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            path.write_text(toml.dumps(document), encoding="utf-8")
        except OSError as e:
            msg = f"cannot write cache entry {path}: {e}"
            _LOGGER.error(msg)
            raise CacheError(msg) from e
        _LOGGER.debug("Cached %s in %s", alg.name, path)
        return path

    def load(self, family: str, rank: int) -> LieSuperAlgebra | None:
        """The cached algebra, or None when absent; raises CacheError when unusable."""
        path = self.path_for(family, rank)
        if not path.exists():
            return None
        try:
            document: dict[str, Any] = toml.load(path)
        except (OSError, toml.TomlDecodeError) as e:
            msg = f"cache entry {path} is unreadable: {e}"
            raise CacheError(msg) from e
        if (
            document.get("format_version") != CACHE_FORMAT_VERSION
            or document.get("family") != family
            or document.get("rank") != rank
        ):
            msg = f"cache entry {path} does not describe {family}{rank}"
            raise CacheError(msg)
        try:
            return load_custom(document["algebra"])
        except (AlgebraValidationError, DomainError) as e:
            msg = f"cache entry {path} fails validation: {e}"
            raise CacheError(msg) from e
        except (vol.Invalid, KeyError) as e:
            msg = f"cache entry {path} is malformed: {e}"
            raise CacheError(msg) from e

    def get(self, family: str, rank: int) -> LieSuperAlgebra:
        """Load from the cache, building and storing on a miss or a corrupt entry."""
        try:
            cached = self.load(family, rank)
        except CacheError as e:
            _LOGGER.warning("Rebuilding %s%d: %s", family, rank, e)
            cached = None
        if cached is not None:
            _LOGGER.debug("Loaded %s%d from cache", family, rank)
            return cached
        alg = build_algebra(family, rank)
        self.store(alg)
        return alg
