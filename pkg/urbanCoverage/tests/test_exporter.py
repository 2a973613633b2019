import csv
import json
import numpy as np
import pytest
from urbanCoverage.exporter.exporter import (export_cdfs, export_summary, export_bpl_curves, export_heatmap,
                                             export_classification, export_field, provenance_line)
from urbanCoverage.link.linkBudget import LinkConfig, LinkResult
from urbanCoverage.propagation.penetration import bpl_curves
from urbanCoverage.simulator.simulationResult import CoverageResult, DropResult, HeatmapSnapshot


def read_rows(path):
    with open(path) as f:
        lines = f.read().splitlines()
    return lines[0], list(csv.reader(lines[1:]))


@pytest.fixture
def coverage_result():
    link = LinkConfig()
    rng = np.random.default_rng(5)
    drops = []
    for drop_id in range(2):
        serving = rng.uniform(-110.0, -40.0, size=50)
        link_result = LinkResult(np.zeros(50, dtype=int), serving, serving - 20.0, link)
        masks = {"indoor": np.arange(50) < 30, "outdoor": np.arange(50) >= 30}
        drops.append(DropResult(drop_id, link_result, masks))
    return CoverageResult({"fc_ghz": 28.0}, 42, "ab" * 32, drops)


def test_provenance_line():
    assert provenance_line(3, "cafe") == "# seed=3 config_sha256=cafe\n"


def test_cdf_table(tmp_path, coverage_result):
    path = str(tmp_path / "cdfs.csv")
    export_cdfs(coverage_result, path, levels=100)
    first, rows = read_rows(path)
    assert first == "# seed=42 config_sha256=%s" % ("ab" * 32)
    assert rows[0] == ["population", "metric", "value", "cdf"]
    assert len(rows) == 1 + 2 * 3 * 100
    sinr = [float(r[2]) for r in rows[1:] if r[0] == "indoor" and r[1] == "sinr"]
    assert len(sinr) == 100
    assert all(a <= b for a, b in zip(sinr, sinr[1:]))
    assert rows[-1][3] == "1.0000"


def test_coverage_result_pools_drops(coverage_result):
    assert coverage_result.n_points("indoor") == 60
    assert coverage_result.n_points("outdoor") == 40
    assert 0.0 <= coverage_result.outage_fraction("indoor") <= 1.0
    assert coverage_result.edge_rate("indoor") <= coverage_result.median_rate("indoor")


def test_summary_json(tmp_path, coverage_result):
    path = str(tmp_path / "summary.json")
    export_summary(coverage_result.summary(), path)
    with open(path) as f:
        summary = json.load(f)
    assert summary["seed"] == 42
    assert summary["n_drops"] == 2
    for population in ("indoor", "outdoor"):
        for key in ("outage", "edge_rate_bps", "median_rate_bps", "median_snr_db", "median_sinr_db", "points"):
            assert "%s_%s" % (population, key) in summary


def test_bpl_curve_table(tmp_path):
    path = str(tmp_path / "bpl.csv")
    export_bpl_curves(bpl_curves([28.0]), path, 4, "beef")
    first, rows = read_rows(path)
    assert first == "# seed=4 config_sha256=beef"
    assert rows[0] == ["fc_ghz", "model", "bpl_db"]
    assert rows[1][:2] == ["28", "3gpp_low"]
    assert float(rows[1][2]) == pytest.approx(17.83, abs=0.01)


def test_heatmap_table(tmp_path):
    xs, ys = np.meshgrid([0.0, 1.0], [0.0, 1.0])
    classes = np.array([[0, 1], [2, 3]], dtype=np.int8)
    snr = np.array([[10.0, 5.0], [-2.0, np.nan]])
    snapshot = HeatmapSnapshot(xs, ys, classes, snr, snr, np.zeros((2, 2), dtype=int), np.zeros((2, 2), dtype=int),
                               np.full((2, 2), -1), np.zeros(0), 1, "00")
    path = str(tmp_path / "heatmap.csv")
    export_heatmap(snapshot, path)
    first, rows = read_rows(path)
    assert first.startswith("# seed=1")
    assert rows[1:] == [["0", "0", "outdoor_los", "10.00"], ["1", "0", "outdoor_nlos", "5.00"],
                        ["0", "1", "indoor", "-2.00"], ["1", "1", "ignored", ""]]


def test_field_table(tmp_path):
    path = str(tmp_path / "field.csv")
    export_field(np.arange(6, dtype=float).reshape(2, 3), path, 9, "ff")
    _, rows = read_rows(path)
    assert rows[0] == ["x", "y", "shadow_db"]
    assert rows[1] == ["0", "0", "0.000"]
    assert rows[-1] == ["2", "1", "5.000"]


def test_classification_table(tmp_path):
    xs, ys = np.meshgrid([0.0, 10.0, 20.0], [0.0])
    classes = np.array([[0, 2, 3]], dtype=np.int8)
    snr = np.array([[12.0, 3.0, np.nan]])
    snapshot = HeatmapSnapshot(xs, ys, classes, snr, snr, np.array([[0, 4, -1]]), np.array([[1, 2, -1]]),
                               np.array([[-1, 1, 0]]), np.array([0, 1], dtype=np.int8), 6, "aa")
    path = str(tmp_path / "classification.csv")
    export_classification(snapshot, path)
    first, rows = read_rows(path)
    assert first == "# seed=6 config_sha256=aa"
    assert rows[0] == ["x", "y", "class", "building_id", "loss_class", "serving_bs", "sector"]
    assert rows[1:] == [["0", "0", "outdoor_los", "", "", "0", "1"],
                        ["10", "0", "indoor", "1", "high", "4", "2"],
                        ["20", "0", "ignored", "0", "low", "-1", "-1"]]
