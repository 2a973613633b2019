"""CSV and JSON exports of coverage results.

Every CSV starts with a ``# seed=... config_sha256=...`` line so a file can be
traced back to the run that produced it.
"""
import csv
import json
import os
import numpy as np
from urbanCoverage.grid.grid import STREET, LocationClass, LossClass
from urbanCoverage.simulator.simulationResult import POPULATIONS, METRICS
from urbanCoverage.util import Logger

CDF_LEVELS = 1000


def provenance_line(seed, config_hash):
    return "# seed=%s config_sha256=%s\n" % (seed, config_hash)


def export_cdfs(result, path, levels=CDF_LEVELS):
    """Writes (population, metric, value, cdf) rows at evenly spaced probabilities."""
    ps = np.arange(1, levels + 1) / float(levels)
    with open(path, "w", newline="") as f:
        f.write(provenance_line(result.seed, result.config_hash))
        writer = csv.writer(f)
        writer.writerow(["population", "metric", "value", "cdf"])
        for population in POPULATIONS:
            if result.n_points(population) == 0:
                continue
            for metric in METRICS:
                values = result.cdf(population, metric).Quantiles(ps)
                for value, p in zip(values, ps):
                    writer.writerow([population, metric, "%.6g" % value, "%.4f" % p])
    Logger.info("wrote CDF table to %s" % path)


def export_summary(summary, path):
    with open(path, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    Logger.info("wrote summary to %s" % path)


def export_heatmap(snapshot, path):
    """One row per lattice point: x, y, class, snr_db (empty for ignored cells)."""
    names = dict((c.value, c.name.lower()) for c in LocationClass)
    with open(path, "w", newline="") as f:
        f.write(provenance_line(snapshot.seed, snapshot.config_hash))
        writer = csv.writer(f)
        writer.writerow(["x", "y", "class", "snr_db"])
        for x, y, c, snr in zip(snapshot.xs.ravel(), snapshot.ys.ravel(), snapshot.classes.ravel(),
                                snapshot.snr_db.ravel()):
            writer.writerow([_coordinate(x), _coordinate(y), names[int(c)], "" if np.isnan(snr) else "%.2f" % snr])
    Logger.info("wrote heatmap to %s" % path)


def export_classification(snapshot, path):
    """Per-point class, building and its loss class, serving BS and sector of a snapshot.

    building_id and loss_class are empty on streets.
    """
    names = dict((c.value, c.name.lower()) for c in LocationClass)
    loss_names = dict((c.value, c.name.lower()) for c in LossClass)
    with open(path, "w", newline="") as f:
        f.write(provenance_line(snapshot.seed, snapshot.config_hash))
        writer = csv.writer(f)
        writer.writerow(["x", "y", "class", "building_id", "loss_class", "serving_bs", "sector"])
        for x, y, c, building, bs, sector in zip(snapshot.xs.ravel(), snapshot.ys.ravel(), snapshot.classes.ravel(),
                                                 snapshot.building_ids.ravel(), snapshot.serving_bs.ravel(),
                                                 snapshot.sector.ravel()):
            if building == STREET:
                building_cell, loss_cell = "", ""
            else:
                building_cell, loss_cell = int(building), loss_names[int(snapshot.loss_codes[building])]
            writer.writerow([_coordinate(x), _coordinate(y), names[int(c)], building_cell, loss_cell, int(bs),
                             int(sector)])
    Logger.info("wrote classification map to %s" % path)


def export_field(field, path, seed, config_hash, resolution_m=1.0):
    """Writes a shadow-fading field as x, y, value rows."""
    with open(path, "w", newline="") as f:
        f.write(provenance_line(seed, config_hash))
        writer = csv.writer(f)
        writer.writerow(["x", "y", "shadow_db"])
        rows, cols = field.shape
        for i in range(rows):
            for j in range(cols):
                writer.writerow([_coordinate(j * resolution_m), _coordinate(i * resolution_m), "%.3f" % field[i, j]])
    Logger.info("wrote fading field to %s" % path)


def export_bpl_curves(rows, path, seed, config_hash):
    with open(path, "w", newline="") as f:
        f.write(provenance_line(seed, config_hash))
        writer = csv.writer(f)
        writer.writerow(["fc_ghz", "model", "bpl_db"])
        for fc, model, loss in rows:
            writer.writerow(["%g" % fc, model, "%.4f" % loss])
    Logger.info("wrote building penetration loss curves to %s" % path)


def export_results(result, out_dir):
    """CDF table and summary of a drop run."""
    export_cdfs(result, os.path.join(out_dir, "cdfs.csv"))
    export_summary(result.summary(), os.path.join(out_dir, "summary.json"))


def _coordinate(value):
    return "%g" % value
