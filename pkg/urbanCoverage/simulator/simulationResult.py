import pickle
import numpy as np
from urbanCoverage.stats.Cdf import MakeCdfFromList
from urbanCoverage.util import Logger

POPULATIONS = ("indoor", "outdoor")
METRICS = ("snr", "sinr", "rate")


class DropResult(object):
    """Per-UE link quantities of one drop, split by population."""

    def __init__(self, drop_id, link_result, masks):
        self.drop_id = drop_id
        self.populations = {}
        for population in POPULATIONS:
            mask = masks[population]
            self.populations[population] = {
                "snr": link_result.snr_db[mask],
                "sinr": link_result.sinr_db[mask],
                "rate": link_result.rate_bps[mask],
                "outage": link_result.outage[mask],
                "serving_bs": link_result.serving_bs[mask],
            }


class CoverageResult(object):
    def __init__(self, config_echo, seed, config_hash, drops):
        self.config_echo = config_echo
        self.seed = seed
        self.config_hash = config_hash
        self.n_drops = len(drops)
        self.populations = {}
        ordered = sorted(drops, key=lambda d: d.drop_id)
        for population in POPULATIONS:
            self.populations[population] = dict(
                (key, np.concatenate([d.populations[population][key] for d in ordered]))
                for key in METRICS + ("outage", "serving_bs"))

    def values(self, population, metric):
        return self.populations[population][metric]

    def cdf(self, population, metric):
        return MakeCdfFromList(self.values(population, metric), "%s_%s" % (population, metric))

    def n_points(self, population):
        return len(self.populations[population]["snr"])

    def outage_fraction(self, population):
        outage = self.populations[population]["outage"]
        return float(np.mean(outage)) if len(outage) else float("nan")

    def edge_rate(self, population):
        return self.cdf(population, "rate").Percentile(10)

    def median_rate(self, population):
        return self.cdf(population, "rate").Percentile(50)

    def median(self, population, metric):
        return self.cdf(population, metric).Percentile(50)

    def summary(self):
        summary = {"seed": self.seed, "config_sha256": self.config_hash, "n_drops": self.n_drops,
                   "config": self.config_echo}
        for population in POPULATIONS:
            if self.n_points(population) == 0:
                continue
            summary["%s_points" % population] = self.n_points(population)
            summary["%s_outage" % population] = self.outage_fraction(population)
            summary["%s_edge_rate_bps" % population] = self.edge_rate(population)
            summary["%s_median_rate_bps" % population] = self.median_rate(population)
            summary["%s_median_snr_db" % population] = self.median(population, "snr")
            summary["%s_median_sinr_db" % population] = self.median(population, "sinr")
        return summary


class HeatmapSnapshot(object):
    """Single-instant SNR of every lattice point, arrays shaped like the world.

    building_ids is -1 on streets; loss_codes is indexed by building id.
    """

    def __init__(self, xs, ys, classes, snr_db, sinr_db, serving_bs, sector, building_ids, loss_codes, seed,
                 config_hash):
        self.xs = xs
        self.ys = ys
        self.classes = classes
        self.snr_db = snr_db
        self.sinr_db = sinr_db
        self.serving_bs = serving_bs
        self.sector = sector
        self.building_ids = building_ids
        self.loss_codes = loss_codes
        self.seed = seed
        self.config_hash = config_hash

    @property
    def shape(self):
        return self.snr_db.shape

    def mean_snr(self, mask):
        return float(np.mean(self.snr_db[mask]))


def save_simulation_result(result, output_file):
    Logger.info("writing simulation result to file: %s" % output_file)
    with open(output_file, "wb") as out:
        pickle.dump(result, out)


def load_simulation_result(file_path):
    Logger.info("loading simulation result from file: %s " % file_path)
    with open(file_path, "rb") as result_file:
        return pickle.load(result_file)
