"""Full-size runs of the published scenarios; slower than the rest of the suite."""
import pytest
from urbanCoverage.config.scenarioConfig import load_preset
from urbanCoverage.simulator.simulator import run_drops

EDGE_RATE_FLOOR_BPS = 0.8 * 248e6


@pytest.fixture(scope="module")
def baseline_1w():
    return run_drops(load_preset("paper-28ghz-1w", n_drops=4))


def test_indoor_outage_with_one_fifth_high_loss_buildings(baseline_1w):
    assert baseline_1w.outage_fraction("indoor") == pytest.approx(0.15, abs=0.04)


@pytest.mark.parametrize("p_high, expected, tolerance", [(0.0, 0.08, 0.03), (1.0, 0.61, 0.05)])
def test_indoor_outage_follows_the_high_loss_share(p_high, expected, tolerance):
    result = run_drops(load_preset("paper-28ghz-1w", p_high=p_high, n_drops=4))
    assert result.outage_fraction("indoor") == pytest.approx(expected, abs=tolerance)


def test_outdoor_edge_rate_at_one_watt(baseline_1w):
    assert baseline_1w.edge_rate("outdoor") >= 200e6
    assert baseline_1w.outage_fraction("outdoor") < baseline_1w.outage_fraction("indoor")


def test_wide_spacing_rates_at_3_5_ghz_over_100_mhz():
    result = run_drops(load_preset("paper-3.5ghz-100w-isd800-100mhz", n_drops=2))
    assert result.edge_rate("indoor") == pytest.approx(73e6, rel=0.25)
    assert result.median_rate("indoor") == pytest.approx(280e6, rel=0.25)


@pytest.mark.parametrize("name", ["paper-3.5ghz-100w-isd800", "paper-7ghz-100w-isd800", "paper-14ghz-100w-isd800"])
def test_wide_spacing_edge_rate_at_lower_carriers(name):
    result = run_drops(load_preset(name, n_drops=2))
    assert result.edge_rate("indoor") >= EDGE_RATE_FLOOR_BPS
