"""Link budget: received power, noise, interference, SINR and rate."""
from enum import Enum
import numpy as np
from urbanCoverage.grid.grid import SameStreet, OneTurn, manhattan_route, street_memberships
from urbanCoverage.util import ConfigurationError, NO_POWER_DBM, db_to_linear, linear_to_db

THERMAL_NOISE_DBM_PER_HZ = -174.0


class Sector(Enum):
    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3


class LinkConfig(object):
    def __init__(self, fc_ghz=28.0, ptx_dbm_per_pol=30.0, bw_hz=400e6, n_pol=2, gtx_dbi=26.0,
                 gue_indoor_dbi=12.0, gue_outdoor_dbi=6.0, m_los_db=2.0, m_nlos_db=5.0, nf_db=9.0,
                 min_sinr_db=-6.0, impl_penalty_db=3.0, max_indoor_depth_m=10.0, gs_dbi=4.0,
                 hpbw_deg=10.0, n_sectors=4, overhead=0.4):
        self.fc_ghz = fc_ghz
        self.ptx_dbm_per_pol = ptx_dbm_per_pol
        self.bw_hz = bw_hz
        self.n_pol = n_pol
        self.gtx_dbi = gtx_dbi
        self.gue_indoor_dbi = gue_indoor_dbi
        self.gue_outdoor_dbi = gue_outdoor_dbi
        self.m_los_db = m_los_db
        self.m_nlos_db = m_nlos_db
        self.nf_db = nf_db
        self.min_sinr_db = min_sinr_db
        self.impl_penalty_db = impl_penalty_db
        self.max_indoor_depth_m = max_indoor_depth_m
        self.gs_dbi = gs_dbi
        self.hpbw_deg = hpbw_deg
        self.n_sectors = n_sectors
        self.overhead = overhead
        self.validate()

    def validate(self):
        if self.bw_hz <= 0:
            raise ConfigurationError("bw_hz: must be positive")
        if self.n_pol < 1:
            raise ConfigurationError("n_pol: must be at least 1")
        if self.n_sectors < 1:
            raise ConfigurationError("n_sectors: must be at least 1")
        if not 0.0 <= self.overhead < 1.0:
            raise ConfigurationError("overhead: must lie in [0, 1)")
        if self.max_indoor_depth_m < 0:
            raise ConfigurationError("max_indoor_depth_m: must be non-negative")
        return self

    @property
    def outage_threshold_db(self):
        return self.min_sinr_db + self.impl_penalty_db

    @property
    def noise_dbm(self):
        return noise_power_dbm(self.bw_hz, self.nf_db)


def noise_power_dbm(bw_hz, nf_db):
    return THERMAL_NOISE_DBM_PER_HZ + 10.0 * np.log10(bw_hz) + nf_db


def rx_power_dbm(ptx_dbm, gtx_dbi, gue_dbi, m_db, pg_db):
    return ptx_dbm + gtx_dbi + gue_dbi - m_db + pg_db


def sector_interference_dbm(serving_dbm, gtx_dbi, gs_dbi, n_sectors):
    """Power leaked by the other sectors of the serving site.

    Each other sector reaches the UE over the same path as the serving sector
    but with its side-lobe gain gs instead of the main-lobe gain gtx.
    """
    if n_sectors <= 1:
        return np.full(np.shape(serving_dbm), NO_POWER_DBM)
    return np.asarray(serving_dbm, dtype=float) - gtx_dbi + gs_dbi + 10.0 * np.log10(n_sectors - 1)


def sinr_db(serving_dbm, interferers_dbm, noise_dbm):
    """interferers_dbm is a sequence of interferer powers (possibly empty)."""
    interference = sum((db_to_linear(i) for i in interferers_dbm), 0.0)
    return np.asarray(serving_dbm, dtype=float) - linear_to_db(interference + db_to_linear(noise_dbm))


def shannon_rate(sinr, link):
    """Rate in bit/s; zero below the outage threshold."""
    sinr = np.asarray(sinr, dtype=float)
    effective = db_to_linear(sinr - link.impl_penalty_db)
    rate = (1.0 - link.overhead) * link.bw_hz * link.n_pol * np.log2(1.0 + effective)
    return np.where(sinr < link.outage_threshold_db, 0.0, rate)


def main_lobe_sectors(bs_x, bs_y, xs, ys):
    """Sector codes of the main lobes pointing from sites toward points along the dominant axis."""
    dx = np.asarray(xs, dtype=float) - np.asarray(bs_x, dtype=float)
    dy = np.asarray(ys, dtype=float) - np.asarray(bs_y, dtype=float)
    # y grows southwards
    vertical = np.where(dy > 0, Sector.SOUTH.value, Sector.NORTH.value)
    horizontal = np.where(dx > 0, Sector.EAST.value, Sector.WEST.value)
    return np.where((np.abs(dx) >= np.abs(dy)) & (dx != 0), horizontal, vertical).astype(np.int8)


def _leg_sector(bs, target, vertical):
    if vertical:
        return Sector.SOUTH if target[1] > bs[1] else Sector.NORTH
    return Sector.EAST if target[0] > bs[0] else Sector.WEST


def main_lobe_sector(spec, bs, toward):
    """Sector whose main lobe covers the first street leg of the route from bs to a point.

    Points without a street route fall back to the dominant axis.
    """
    bx, by = float(bs[0]), float(bs[1])
    x, y = float(toward[0]), float(toward[1])
    on_ns, xc, on_ew, yc = [np.asarray(v).item() for v in street_memberships(spec, x, y)]
    dominant = Sector(int(main_lobe_sectors(bx, by, x, y)))
    if not (on_ns or on_ew):
        return dominant
    route = manhattan_route(spec, (bx, by), (x, y))
    if isinstance(route, SameStreet):
        same_ns = on_ns and np.isclose(bx % spec.block_w_m, 0.0) and xc == bx
        same_ew = on_ew and np.isclose(by % spec.block_h_m, 0.0) and yc == by
        vertical = same_ns and (not same_ew or abs(y - by) <= abs(x - bx))
        return _leg_sector((bx, by), (x, y), vertical)
    if isinstance(route, OneTurn):
        corner_x, corner_y = route.corner
        return _leg_sector((bx, by), route.corner, corner_x == bx and corner_y != by)
    return dominant


def route_sectors(spec, bs_x, bs_y, xs, ys):
    """Vectorised main_lobe_sector for arrays of (site, point) pairs."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    bs_x = np.broadcast_to(np.asarray(bs_x, dtype=float), xs.shape)
    bs_y = np.broadcast_to(np.asarray(bs_y, dtype=float), ys.shape)
    on_ns, xc, on_ew, yc = street_memberships(spec, xs, ys)
    bs_on_ns = np.isclose(np.mod(bs_x, spec.block_w_m), 0.0)
    bs_on_ew = np.isclose(np.mod(bs_y, spec.block_h_m), 0.0)

    same_ns = on_ns & bs_on_ns & (xc == bs_x)
    same_ew = on_ew & bs_on_ew & (yc == bs_y)
    same = same_ns | same_ew
    same_vertical = np.where(same_ns, np.abs(ys - bs_y), np.inf) <= np.where(same_ew, np.abs(xs - bs_x), np.inf)
    # one turn: a north-south point turns at (xc, bs_y), an east-west point at (bs_x, yc)
    turn_h = on_ns & bs_on_ew
    turn_v = on_ew & bs_on_ns
    turn_vertical = np.where(turn_v, np.abs(xs - bs_x), np.inf) < np.where(turn_h, np.abs(ys - bs_y), np.inf)

    vertical = np.where(same, same_vertical, turn_vertical)
    target_x = np.where(same, xs, xc)
    target_y = np.where(same, ys, yc)
    leg = np.where(vertical,
                   np.where(target_y > bs_y, Sector.SOUTH.value, Sector.NORTH.value),
                   np.where(target_x > bs_x, Sector.EAST.value, Sector.WEST.value))
    has_route = same | turn_h | turn_v
    return np.where(has_route, leg, main_lobe_sectors(bs_x, bs_y, xs, ys)).astype(np.int8)


class LinkResult(object):
    """Per-UE link quantities. Every attribute is an array of equal length."""

    def __init__(self, serving_bs, serving_dbm, bs_interference_dbm, link):
        self.serving_bs = np.asarray(serving_bs)
        self.serving_dbm = np.asarray(serving_dbm, dtype=float)
        self.bs_interference_dbm = np.asarray(bs_interference_dbm, dtype=float)
        self.sector_interference_dbm = sector_interference_dbm(self.serving_dbm, link.gtx_dbi, link.gs_dbi,
                                                               link.n_sectors)
        self.noise_dbm = link.noise_dbm
        self.snr_db = self.serving_dbm - self.noise_dbm
        self.sinr_db = sinr_db(self.serving_dbm, [self.bs_interference_dbm, self.sector_interference_dbm],
                               self.noise_dbm)
        self.rate_bps = shannon_rate(self.sinr_db, link)
        self.outage = self.sinr_db < link.outage_threshold_db

    @property
    def interference_dbm(self):
        return linear_to_db(db_to_linear(self.bs_interference_dbm) + db_to_linear(self.sector_interference_dbm))

    def __len__(self):
        return len(self.serving_dbm)
