"""
Exact differential-operator realizations of induced and coinduced modules
over Lie superalgebras.
"""

from importlib.metadata import PackageNotFoundError, version

from .decomp import Decomposition, custom, from_spec, triangular
from .errors import DiffRealizeError
from .liealg import LieSuperAlgebra, build_gl, build_sl, load_custom, validate
from .realize import (
    DiffOperator,
    HRepresentation,
    Realization,
    build_realization,
    make_adjoint,
    make_character,
    make_custom,
)
from .series import PhiH, SeriesEngine

try:
    __version__ = version("diffrealize")
except PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = [
    "Decomposition",
    "DiffOperator",
    "DiffRealizeError",
    "HRepresentation",
    "LieSuperAlgebra",
    "PhiH",
    "Realization",
    "SeriesEngine",
    "build_gl",
    "build_realization",
    "build_sl",
    "custom",
    "from_spec",
    "load_custom",
    "make_adjoint",
    "make_character",
    "make_custom",
    "triangular",
    "validate",
]
