import numpy as np
import pytest
from urbanCoverage.link.linkBudget import (LinkConfig, LinkResult, Sector, noise_power_dbm, rx_power_dbm,
                                           sector_interference_dbm, sinr_db, shannon_rate, main_lobe_sector,
                                           main_lobe_sectors, route_sectors)
from urbanCoverage.util import ConfigurationError

SECTOR_CEILING_DB = 22.0 - 10 * np.log10(3)


def test_noise_power():
    assert noise_power_dbm(400e6, 9.0) == pytest.approx(-78.98, abs=0.01)
    assert noise_power_dbm(100e6, 9.0) == pytest.approx(-85.0, abs=0.01)
    assert LinkConfig(bw_hz=400e6).noise_dbm == pytest.approx(-78.98, abs=0.01)


def test_received_power():
    assert rx_power_dbm(30.0, 26.0, 12.0, 5.0, -135.0) == pytest.approx(-72.0)


def test_rate_at_reference_points(link_1w):
    assert shannon_rate(3.0, link_1w) == pytest.approx(480e6)
    assert shannon_rate(13.0, link_1w) == pytest.approx(0.6 * 400e6 * 2 * np.log2(11.0))
    assert shannon_rate(13.0, link_1w) == pytest.approx(1.66e9, rel=0.01)


def test_rate_outage_threshold(link_1w):
    assert link_1w.outage_threshold_db == -3.0
    assert shannon_rate(-3.01, link_1w) == 0.0
    assert shannon_rate(-3.0, link_1w) > 0.0


def test_sinr_without_interferers_is_snr():
    assert sinr_db(-70.0, [], -79.0) == pytest.approx(9.0)


def test_interference_only_lowers_sinr():
    assert sinr_db(-70.0, [-80.0, -85.0], -79.0) < -70.0 + 79.0


def test_sector_interference():
    assert sector_interference_dbm(-40.0, 26.0, 4.0, 1) == -np.inf
    assert sector_interference_dbm(-40.0, 26.0, 4.0, 4) == pytest.approx(-40.0 - SECTOR_CEILING_DB)


def test_link_result(link_100w):
    serving = np.array([-30.0, -60.0, -95.0])
    interference = np.array([-80.0, -70.0, -90.0])
    result = LinkResult(np.zeros(3, dtype=int), serving, interference, link_100w)
    assert np.allclose(result.snr_db, serving - link_100w.noise_dbm)
    assert np.all(result.sinr_db <= result.snr_db)
    assert np.all(result.sinr_db <= SECTOR_CEILING_DB + 1e-9)
    assert result.sinr_db[0] == pytest.approx(SECTOR_CEILING_DB, abs=0.01)
    assert list(result.outage) == list(result.sinr_db < -3.0)
    assert result.outage[2]
    assert result.rate_bps[2] == 0.0
    assert len(result) == 3


def test_single_sector_sites_only_see_other_sites(link_100w):
    link = LinkConfig(ptx_dbm_per_pol=50.0, n_sectors=1)
    result = LinkResult(np.zeros(1, dtype=int), np.array([-40.0]), np.array([-np.inf]), link)
    assert result.sinr_db[0] == pytest.approx(result.snr_db[0])


def test_main_lobe_sector(spec):
    assert main_lobe_sector(spec, (400, 400), (400, 500)) is Sector.SOUTH
    assert main_lobe_sector(spec, (400, 400), (400, 300)) is Sector.NORTH
    assert main_lobe_sector(spec, (400, 400), (490, 400)) is Sector.EAST
    assert main_lobe_sector(spec, (400, 400), (300, 410)) is Sector.WEST


def test_main_lobe_sector_follows_the_first_street_leg(spec):
    # (600, 690) lies on the x=600 street, reached by turning at (600, 400)
    assert main_lobe_sector(spec, (400, 400), (600, 690)) is Sector.EAST
    assert main_lobe_sectors(400, 400, 600, 690) == Sector.SOUTH.value
    # (700, 450) lies on the y=450 street, reached by turning at (400, 450)
    assert main_lobe_sector(spec, (400, 400), (700, 450)) is Sector.SOUTH
    assert main_lobe_sectors(400, 400, 700, 450) == Sector.EAST.value


def test_route_sectors_match_the_scalar_route(spec, world, sites):
    grid_x, grid_y = np.meshgrid(world.xs, world.ys)
    xs = grid_x[world.street_mask][::13]
    ys = grid_y[world.street_mask][::13]
    indoor_x, indoor_y = np.array([450.0, 250.0]), np.array([440.0, 610.0])
    xs, ys = np.concatenate([xs, indoor_x]), np.concatenate([ys, indoor_y])
    for bs in sites.positions[:5]:
        codes = route_sectors(spec, bs[0], bs[1], xs, ys)
        expected = [main_lobe_sector(spec, bs, (x, y)).value for x, y in zip(xs, ys)]
        assert list(codes) == expected


def test_link_config_validation():
    with pytest.raises(ConfigurationError):
        LinkConfig(bw_hz=0)
    with pytest.raises(ConfigurationError):
        LinkConfig(n_sectors=0)
    with pytest.raises(ConfigurationError):
        LinkConfig(overhead=1.0)
