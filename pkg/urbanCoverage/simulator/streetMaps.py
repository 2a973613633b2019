"""Median outdoor path gain of every street location, per BS.

Street locations are evaluated at their centreline projection: a point on a
north-south street at (x, y) uses (xc, y), a point on an east-west street uses
(x, yc).
"""
import numpy as np
from urbanCoverage.grid.grid import street_memberships, bs_street_lines
from urbanCoverage.propagation.pathGain import pg_same_street, pg_around_corner, pl_uma, combine_gains
from urbanCoverage.util import Logger, NO_POWER_DBM

NORTH_SOUTH = "ns"
EAST_WEST = "ew"


class StreetGain(object):
    def __init__(self, pg_db, los, corner_db, rooftop_db):
        self.pg_db = pg_db
        self.los = los
        self.corner_db = corner_db
        self.rooftop_db = rooftop_db


def street_gain(spec, bs, axis, line, pos, models):
    """Gain from bs to centreline points of one street orientation.

    line is the centreline coordinate (x for north-south streets, y for
    east-west ones), pos the coordinate along the street. LOS points use the
    same-street model; the rest use the corner model (when the site's crossing
    street reaches the line) power-summed with the over-rooftop model.
    """
    bx, by = float(bs[0]), float(bs[1])
    line = np.asarray(line, dtype=float)
    pos = np.asarray(pos, dtype=float)
    bs_on_ns = np.isclose(np.mod(bx, spec.block_w_m), 0.0)
    bs_on_ew = np.isclose(np.mod(by, spec.block_h_m), 0.0)
    if axis == NORTH_SOUTH:
        across, along, on_line, turns = bx, by, bs_on_ns, bs_on_ew
        px, py = line, pos
    else:
        across, along, on_line, turns = by, bx, bs_on_ew, bs_on_ns
        px, py = pos, line

    same = on_line & np.isclose(line, across)
    d_same = np.maximum(np.abs(pos - along), 1.0)
    rooftop = -pl_uma(np.hypot(px - bx, py - by), models.uma)
    if turns:
        d_c = np.maximum(np.abs(line - across), 1.0)
        corner = pg_around_corner(d_c + np.abs(pos - along), d_c, models.corner)
        nlos = combine_gains(corner, rooftop)
    else:
        corner = np.full(np.shape(line), NO_POWER_DBM)
        nlos = rooftop
    pg = np.where(same, pg_same_street(d_same, models.same_street), nlos)
    return StreetGain(pg, same, corner, rooftop)


class StreetPgMap(object):
    """pg_db[b] holds the median gain from BS b, NaN off-street; los[b] marks LOS."""

    def __init__(self, pg_db, los):
        self.pg_db = pg_db
        self.los = los

    @property
    def n_bs(self):
        return self.pg_db.shape[0]

    def lookup(self, world, xs, ys):
        i, j = world.lattice_index(xs, ys)
        return self.pg_db[:, i, j], self.los[:, i, j]


def street_point_gains(world, sites, models, xs, ys):
    """(n_bs, n) gains and LOS flags of lattice street points.

    A point in the band of both a north-south and an east-west street takes
    the stronger of its two projections; a point lying in the band of a BS
    street is served by that street only.
    """
    spec = world.spec
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    on_ns, xc, on_ew, yc = street_memberships(spec, xs, ys)
    n_bs = sites.n_bs
    pg = np.full((n_bs, len(xs)), -np.inf)
    los = np.zeros((n_bs, len(xs)), dtype=bool)
    for b, bs in enumerate(sites):
        lines_x, lines_y = bs_street_lines(spec, [bs])
        in_bs_ns = on_ns & np.isin(xc, lines_x)
        in_bs_ew = on_ew & np.isin(yc, lines_y)
        candidates = []
        for axis, member, line, pos, blocked in ((NORTH_SOUTH, on_ns, xc, ys, in_bs_ew),
                                                 (EAST_WEST, on_ew, yc, xs, in_bs_ns)):
            gain = np.full(len(xs), -np.inf)
            is_los = np.zeros(len(xs), dtype=bool)
            idx = np.flatnonzero(member)
            if len(idx):
                g = street_gain(spec, bs, axis, line[idx], pos[idx], models)
                gain[idx] = np.where(blocked[idx] & ~g.los, -np.inf, g.pg_db)
                is_los[idx] = g.los
            candidates.append((gain, is_los))
        (g_ns, los_ns), (g_ew, los_ew) = candidates
        take_ns = g_ns >= g_ew
        pg[b] = np.where(take_ns, g_ns, g_ew)
        los[b] = np.where(take_ns, los_ns, los_ew)
    return pg, los


def build_street_pg_maps(world, sites, models):
    rows, cols = world.shape
    grid_x, grid_y = np.meshgrid(world.xs, world.ys)
    mask = world.street_mask
    pg, los = street_point_gains(world, sites, models, grid_x[mask], grid_y[mask])
    pg_map = np.full((sites.n_bs, rows, cols), np.nan, dtype=np.float32)
    los_map = np.zeros((sites.n_bs, rows, cols), dtype=bool)
    pg_map[:, mask] = pg
    los_map[:, mask] = los
    Logger.info("built street path gain maps for %s sites" % sites.n_bs)
    return StreetPgMap(pg_map, los_map)
