"""Global fixtures for diffrealize."""

import pytest
from diffrealize.chevalley import build_simply_laced
from diffrealize.decomp import custom, triangular
from diffrealize.liealg import build_gl, build_sl, load_custom
from diffrealize.realize import make_character

from .const import GL11_SPEC, SL3_GENERAL_DECOMP


@pytest.fixture(autouse=True)
def isolated_cache_dir(tmp_path, monkeypatch):
    """Keep structure-constant caches out of the working tree."""
    monkeypatch.setenv("DIFFREALIZE_CACHE_DIR", str(tmp_path / "cache"))
    yield


# sl(2) as A_1 in the Chevalley basis e, h, f
@pytest.fixture(name="sl2")
def sl2_fixture():
    return build_simply_laced("A", 1)


# g_- = <f>, h = <e, h>
@pytest.fixture(name="sl2_decomp")
def sl2_decomp_fixture(sl2):
    return triangular(sl2)


# One-dimensional character of the sl(2) Borel with a symbolic weight lambda
@pytest.fixture(name="sl2_character")
def sl2_character_fixture(sl2_decomp):
    return make_character(sl2_decomp)


# A_2 = sl(3) in the Chevalley basis, triangular
@pytest.fixture(name="a2_decomp")
def a2_decomp_fixture():
    return triangular(build_simply_laced("A", 2))


# D_4, triangular; depth 5
@pytest.fixture(name="d4_decomp")
def d4_decomp_fixture():
    return triangular(build_simply_laced("D", 4))


# gl(2) and gl(3) on matrix units, strictly lower triangular g_-
@pytest.fixture(name="gl2_decomp")
def gl2_decomp_fixture():
    return triangular(build_gl(2))


@pytest.fixture(name="gl3_decomp")
def gl3_decomp_fixture():
    return triangular(build_gl(3))


# depth 3, so l + d is even for the degree-1 generators
@pytest.fixture(name="gl4_decomp")
def gl4_decomp_fixture():
    return triangular(build_gl(4))


# gl(1|1) with odd psi-, psi+; g_- = <psi->
@pytest.fixture(name="gl11")
def gl11_fixture():
    return load_custom(GL11_SPEC)


@pytest.fixture(name="gl11_decomp")
def gl11_decomp_fixture(gl11):
    return triangular(gl11)


# sl(3) with g_- = <E21, E31, E32 + E12> and h the upper Borel; g_- is not closed
@pytest.fixture(name="sl3_general_decomp")
def sl3_general_decomp_fixture():
    sl3 = build_sl(3)
    return custom(sl3, SL3_GENERAL_DECOMP["minus"], SL3_GENERAL_DECOMP["h"])
