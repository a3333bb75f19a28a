"""Exceptions raised by diffrealize."""

from typing import Any

from .const import EXIT_CONFIG, EXIT_INTERNAL, EXIT_TRUNCATION, EXIT_VALIDATION


class DiffRealizeError(Exception):
    """Base class for all errors raised by the package."""

    exit_code: int = EXIT_INTERNAL


class DomainError(DiffRealizeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    exit_code = EXIT_CONFIG


class AlgebraValidationError(DiffRealizeError):
    """Structure constants violate super-antisymmetry, super-Jacobi or the grading."""

    exit_code = EXIT_VALIDATION

    def __init__(self, msg: str, report: Any = None) -> None:
        super().__init__(msg)
        self.report = report


class DecompositionError(DiffRealizeError):
    """A requested splitting g = g_- + h is unusable."""

    exit_code = EXIT_VALIDATION

    def __init__(self, msg: str, reason: str) -> None:
        super().__init__(msg)
        self.reason = reason


class RepresentationError(DiffRealizeError):
    """Matrices do not define a representation of h."""

    exit_code = EXIT_VALIDATION


class EngineMisuseError(DiffRealizeError):
    """An engine was called on a decomposition it does not support."""

    exit_code = EXIT_CONFIG


class TruncationError(DiffRealizeError):
    """A computation needs more polynomial degree than the truncation allows."""

    exit_code = EXIT_TRUNCATION


class GraphCycleError(TruncationError):
    """Unbounded path enumeration was requested on a graph with a cycle."""

    def __init__(self, msg: str, cycle: list[int]) -> None:
        super().__init__(msg)
        self.cycle = cycle


class ConfigError(DiffRealizeError):
    """A job configuration or input file could not be parsed."""

    exit_code = EXIT_CONFIG


class CacheError(DiffRealizeError):
    """A cached structure-constant file is unreadable or inconsistent."""

    exit_code = EXIT_VALIDATION
