import pytest

from pimlang import config
from pimlang.compiler.compile_map import build_compile_map
from pimlang.parser import parse
from pimlang.schemas.compile_map import CompileMap
from pimlang.schemas.model import Model
from pimlang.schemas.pi import PiProgram
from pimlang.sim.engines import compile_model
from tests.utils import (
    FCR_MODEL,
    FCR_SRC_MODEL,
    M2_MODEL,
    MULTI_PARTNER_MODEL,
    _m2_model,
)


@pytest.fixture(scope="session", autouse=True)
def test_environment():
    assert config.settings.ENVIRONMENT == "TEST"


@pytest.fixture(scope="session")
def fcr_model() -> Model:
    return parse(FCR_MODEL)


@pytest.fixture(scope="session")
def fcr_src_model() -> Model:
    return parse(FCR_SRC_MODEL)


@pytest.fixture(scope="session")
def m2_model() -> Model:
    return _m2_model()


@pytest.fixture(scope="session")
def multi_partner_model() -> Model:
    return parse(MULTI_PARTNER_MODEL)


@pytest.fixture(scope="session")
def fcr_cmap(fcr_model) -> CompileMap:
    return build_compile_map(fcr_model)


@pytest.fixture(scope="session")
def fcr_src_cmap(fcr_src_model) -> CompileMap:
    return build_compile_map(fcr_src_model)


@pytest.fixture(scope="session")
def m2_cmap(m2_model) -> CompileMap:
    return build_compile_map(m2_model)


@pytest.fixture(scope="session")
def fcr_program(fcr_model) -> PiProgram:
    return compile_model(fcr_model)


@pytest.fixture(scope="session")
def fcr_src_program(fcr_src_model) -> PiProgram:
    return compile_model(fcr_src_model)


@pytest.fixture(scope="session")
def m2_text_model() -> Model:
    return parse(M2_MODEL)
