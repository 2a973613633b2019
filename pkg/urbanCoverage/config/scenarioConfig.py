"""Scenario configuration: plain-text ``key = value`` files and presets.

Keys carry their unit as a suffix. Values are parsed with TypeConversion;
anything that does not parse, is out of range or is unknown raises a
ConfigurationError whose message starts with the offending key.
"""
import hashlib
from urbanCoverage.grid.grid import GridSpec, place_base_stations
from urbanCoverage.link.linkBudget import LinkConfig
from urbanCoverage.propagation.pathGain import (SameStreetParams, CornerParams, UmaParams, PathGainModels,
                                                calibrate_corner)
from urbanCoverage.propagation.penetration import bpl_models
from urbanCoverage.stats.shadowFading import FadingSpec
from urbanCoverage.util import Logger, TypeConversion, ConfigurationError, DomainError

REQUIRED = object()
OPTIONAL = None

# (key, type, default); REQUIRED keys have no default
KEYS = [
    ("fc_ghz", float, REQUIRED),
    ("ptx_dbm_per_pol", float, REQUIRED),
    ("bw_hz", float, REQUIRED),
    ("n_pol", int, REQUIRED),
    ("gtx_dbi", float, REQUIRED),
    ("bs_height_m", float, REQUIRED),
    ("gue_indoor_dbi", float, REQUIRED),
    ("gue_outdoor_dbi", float, REQUIRED),
    ("ue_height_m", float, REQUIRED),
    ("m_los_db", float, REQUIRED),
    ("m_nlos_db", float, REQUIRED),
    ("nf_db", float, REQUIRED),
    ("min_sinr_db", float, REQUIRED),
    ("impl_penalty_db", float, REQUIRED),
    ("max_indoor_depth_m", float, REQUIRED),
    ("gs_dbi", float, REQUIRED),
    ("isd_m", float, REQUIRED),
    ("p_high", float, REQUIRED),
    ("hpbw_deg", float, 10.0),
    ("n_sectors", int, 4),
    ("overhead", float, 0.4),
    ("grid_width_m", float, 800.0),
    ("grid_height_m", float, 800.0),
    ("block_w_m", float, 200.0),
    ("block_h_m", float, 50.0),
    ("strip_w_m", float, 190.0),
    ("strip_h_m", float, 40.0),
    ("unit_building_w_m", float, 19.0),
    ("unit_building_h_m", float, 20.0),
    ("ignored_core_w_m", float, 150.0),
    ("ignored_core_h_m", float, 10.0),
    ("resolution_m", float, 1.0),
    ("diamond_radius_m", float, OPTIONAL),
    ("same_street_intercept_db", float, -35.0),
    ("same_street_exponent", float, 3.56),
    ("corner_intercept_db", float, -35.0),
    ("corner_exponent", float, 3.0),
    ("corner_loss_db", float, OPTIONAL),
    ("corner_anchor_pl_db", float, 135.0),
    ("corner_anchor_dc_m", float, 100.0),
    ("corner_anchor_x_m", float, 190.0),
    ("shadow_fading", str, "on"),
    ("sigma_los_db", float, 7.1),
    ("sigma_nlos_db", float, 7.1),
    ("dcorr_los_m", float, 37.0),
    ("dcorr_nlos_m", float, 50.0),
    ("dcorr_indoor_m", float, 10.0),
    ("bpl_model", str, "3gpp"),
    ("pl_npi_db", float, 5.0),
    ("sigma_p_low_db", float, 4.4),
    ("sigma_p_high_db", float, 6.5),
    ("n_drops", int, 20),
    ("seed", int, 1),
    ("n_cores", int, 1),
    ("out_dir", str, "results"),
]
KEY_TYPES = dict((key, kind) for key, kind, _ in KEYS)
REQUIRED_KEYS = [key for key, _, default in KEYS if default is REQUIRED]

BASELINE_VALUES = {
    "fc_ghz": 28.0,
    "ptx_dbm_per_pol": 30.0,
    "bw_hz": 400e6,
    "n_pol": 2,
    "gtx_dbi": 26.0,
    "bs_height_m": 22.0,
    "gue_indoor_dbi": 12.0,
    "gue_outdoor_dbi": 6.0,
    "ue_height_m": 1.5,
    "m_los_db": 2.0,
    "m_nlos_db": 5.0,
    "nf_db": 9.0,
    "min_sinr_db": -6.0,
    "impl_penalty_db": 3.0,
    "max_indoor_depth_m": 10.0,
    "gs_dbi": 4.0,
    "isd_m": 400.0,
    "p_high": 0.2,
}


def _build_presets():
    frequencies = [("paper-28ghz-1w", 28.0, 30.0), ("paper-28ghz-100w", 28.0, 50.0),
                   ("paper-14ghz-100w", 14.0, 50.0), ("paper-7ghz-100w", 7.0, 50.0),
                   ("paper-3.5ghz-100w", 3.5, 50.0)]
    presets = {}
    for name, fc, ptx in frequencies:
        presets[name] = {"fc_ghz": fc, "ptx_dbm_per_pol": ptx}
        presets[name + "-isd800"] = {"fc_ghz": fc, "ptx_dbm_per_pol": ptx, "isd_m": 800.0}
    presets["paper-3.5ghz-100w-isd800-100mhz"] = {"fc_ghz": 3.5, "ptx_dbm_per_pol": 50.0, "isd_m": 800.0,
                                                  "bw_hz": 100e6}
    return presets


PRESETS = _build_presets()


def convert(key, raw):
    if key not in KEY_TYPES:
        raise ConfigurationError("%s: unknown configuration key" % key)
    kind = KEY_TYPES[key]
    if kind is str:
        return str(raw).strip()
    value = TypeConversion.get_int(raw) if kind is int else TypeConversion.get_float(raw)
    if value is None:
        raise ConfigurationError("%s: cannot parse %r as %s" % (key, raw, kind.__name__))
    return value


def parse_config_text(text):
    values = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError("line %s: expected 'key = value', got %r" % (number, line))
        key, raw = [part.strip() for part in line.split("=", 1)]
        if key in values:
            raise ConfigurationError("%s: given twice (line %s)" % (key, number))
        values[key] = convert(key, raw)
    return values


class ScenarioConfig(object):
    """Validated scenario. values holds the effective key/value pairs."""

    def __init__(self, values):
        missing = [key for key in REQUIRED_KEYS if values.get(key) is None]
        if missing:
            raise ConfigurationError("missing required keys: %s" % ", ".join(missing))
        self.values = {}
        for key, kind, default in KEYS:
            value = values.get(key)
            self.values[key] = default if value is None else convert(key, value)
        for key in values:
            if key not in KEY_TYPES:
                raise ConfigurationError("%s: unknown configuration key" % key)
        self._build()

    def __getitem__(self, key):
        return self.values[key]

    def _check(self, key, ok, message):
        if not ok:
            raise ConfigurationError("%s: %s" % (key, message))

    def _build(self):
        v = self.values
        self._check("p_high", 0.0 <= v["p_high"] <= 1.0, "must lie in [0, 1]")
        self._check("n_drops", v["n_drops"] >= 1, "must be at least 1")
        self._check("n_cores", v["n_cores"] >= 1, "must be at least 1")
        self._check("nf_db", v["nf_db"] >= 0, "must be non-negative")
        self._check("ue_height_m", 0 < v["ue_height_m"] < v["bs_height_m"], "must be positive and below bs_height_m")
        self._check("shadow_fading", v["shadow_fading"] in ("on", "off"), "must be 'on' or 'off'")

        self.grid = GridSpec(v["grid_width_m"], v["grid_height_m"], v["block_w_m"], v["block_h_m"],
                             v["strip_w_m"], v["strip_h_m"], v["unit_building_w_m"], v["unit_building_h_m"],
                             v["ignored_core_w_m"], v["ignored_core_h_m"], v["resolution_m"]).validate()
        self.sites = place_base_stations(self.grid, v["isd_m"], v["bs_height_m"], v["ue_height_m"],
                                         v["diamond_radius_m"])
        self.link = LinkConfig(v["fc_ghz"], v["ptx_dbm_per_pol"], v["bw_hz"], v["n_pol"], v["gtx_dbi"],
                               v["gue_indoor_dbi"], v["gue_outdoor_dbi"], v["m_los_db"], v["m_nlos_db"],
                               v["nf_db"], v["min_sinr_db"], v["impl_penalty_db"], v["max_indoor_depth_m"],
                               v["gs_dbi"], v["hpbw_deg"], v["n_sectors"], v["overhead"])
        self.fading = FadingSpec(v["sigma_los_db"], v["sigma_nlos_db"], v["dcorr_los_m"], v["dcorr_nlos_m"],
                                 v["dcorr_indoor_m"], enabled=v["shadow_fading"] == "on")
        same_street = SameStreetParams(v["same_street_intercept_db"], v["same_street_exponent"], v["sigma_los_db"])
        if v["corner_loss_db"] is None:
            corner = calibrate_corner(v["corner_anchor_pl_db"], v["corner_anchor_dc_m"], v["corner_anchor_x_m"],
                                      v["corner_intercept_db"], v["corner_exponent"], v["sigma_nlos_db"])
        else:
            corner = CornerParams(v["corner_intercept_db"], v["corner_exponent"], v["corner_loss_db"],
                                  v["sigma_nlos_db"])
        try:
            uma = UmaParams(v["fc_ghz"], v["bs_height_m"], v["ue_height_m"])
        except DomainError as e:
            raise ConfigurationError(str(e))
        self.models = PathGainModels(same_street, corner, uma)
        self.bpl = bpl_models(v["bpl_model"], v["sigma_p_low_db"], v["sigma_p_high_db"], v["pl_npi_db"])
        self.p_high = v["p_high"]
        self.n_drops = v["n_drops"]
        self.seed = v["seed"]
        self.n_cores = v["n_cores"]
        self.out_dir = v["out_dir"]

    def with_overrides(self, **overrides):
        values = dict(self.values)
        values.update(dict((k, v) for k, v in overrides.items() if v is not None))
        return ScenarioConfig(values)

    def echo(self):
        """Effective values plus derived quantities, for result summaries."""
        echo = dict((k, v) for k, v in self.values.items() if v is not None)
        echo["solved_corner_loss_db"] = self.models.corner.corner_loss_db
        return echo


def preset_values(name):
    if name not in PRESETS:
        raise ConfigurationError("preset: unknown preset %s (known: %s)" % (name, ", ".join(sorted(PRESETS))))
    values = dict(BASELINE_VALUES)
    values.update(PRESETS[name])
    return values


def load_preset(name, **overrides):
    values = preset_values(name)
    values.update(dict((k, v) for k, v in overrides.items() if v is not None))
    return ScenarioConfig(values)


def load_config(path, preset=None, **overrides):
    """Reads a config file, layered over an optional preset and under overrides."""
    Logger.info("loading scenario configuration from %s" % path)
    with open(path) as config_file:
        file_values = parse_config_text(config_file.read())
    values = preset_values(preset) if preset is not None else {}
    values.update(file_values)
    values.update(dict((k, v) for k, v in overrides.items() if v is not None))
    return ScenarioConfig(values)


def format_value(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(config):
    lines = ["# urbanCoverage scenario"]
    for key, _, _ in KEYS:
        value = config.values[key]
        if value is not None:
            lines.append("%s = %s" % (key, format_value(value)))
    return "\n".join(lines) + "\n"


def save_config(config, path):
    Logger.info("writing scenario configuration to %s" % path)
    with open(path, "w") as config_file:
        config_file.write(dump_config(config))


def config_hash(config):
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()
