import pytest
from urbanCoverage.grid.grid import GridSpec, build_grid, place_base_stations
from urbanCoverage.link.linkBudget import LinkConfig
from urbanCoverage.propagation.pathGain import SameStreetParams, UmaParams, PathGainModels, calibrate_corner
from urbanCoverage.propagation.penetration import bpl_models
from urbanCoverage.util import Logger

Logger.log_level = 1


@pytest.fixture(scope="session")
def spec():
    return GridSpec()


@pytest.fixture(scope="session")
def world(spec):
    return build_grid(spec)


@pytest.fixture(scope="session")
def sites(spec):
    return place_base_stations(spec, 400)


@pytest.fixture(scope="session")
def models():
    return PathGainModels(SameStreetParams(), calibrate_corner(), UmaParams(28.0))


@pytest.fixture(scope="session")
def bpl():
    return bpl_models("3gpp")


@pytest.fixture
def link_1w():
    return LinkConfig(fc_ghz=28.0, ptx_dbm_per_pol=30.0)


@pytest.fixture
def link_100w():
    return LinkConfig(fc_ghz=28.0, ptx_dbm_per_pol=50.0)
