"""Received power of outdoor and indoor UEs from every BS, and serving-BS
selection."""
import numpy as np
from urbanCoverage.grid.grid import WALLS, LossClass, LocationClass, indoor_geometry
from urbanCoverage.link.linkBudget import LinkResult, rx_power_dbm, route_sectors
from urbanCoverage.propagation.pathGain import pl_uma
from urbanCoverage.propagation.penetration import o2i_total, pl_indoor
from urbanCoverage.simulator.streetMaps import street_gain, street_point_gains, NORTH_SOUTH, EAST_WEST
from urbanCoverage.stats.shadowFading import NoShadows
from urbanCoverage.util import ContractViolation, db_to_linear, linear_to_db, power_sum_db

DIRECT_PATH = "direct"
PATH_NAMES = WALLS + (DIRECT_PATH,)


class EvaluationPoints(object):
    """UE locations of one evaluation, split into outdoor and indoor subsets.

    loss_codes holds the LossClass value of the building of every indoor point.
    """

    def __init__(self, world, xs, ys, loss_codes=None):
        self.world = world
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        i, j = world.lattice_index(self.xs, self.ys)
        if np.any(world.ignored_mask[i, j]):
            raise ContractViolation("ignored-core points cannot be evaluated")
        self.indoor = world.indoor_mask[i, j]
        self.outdoor = ~self.indoor
        self.building_ids = world.building_id[i, j][self.indoor]
        if loss_codes is None:
            loss_codes = np.full(len(world.buildings), LossClass.LOW.value, dtype=np.int8)
        self.set_building_classes(loss_codes)
        self.geometry = indoor_geometry(world.spec, self.xs[self.indoor], self.ys[self.indoor])

    def set_building_classes(self, loss_codes):
        """loss_codes is indexed by building id."""
        self.loss_codes = np.asarray(loss_codes)[self.building_ids]

    def __len__(self):
        return len(self.xs)


def direct_indoor_depth(geometry, bs):
    """Length of the straight bs -> UE segment inside the building strip."""
    bx, by = float(bs[0]), float(bs[1])
    sx0, sx1, sy0, sy1 = geometry.strip
    dx = geometry.xs - bx
    dy = geometry.ys - by
    safe_dx = np.where(dx == 0, 1.0, dx)
    safe_dy = np.where(dy == 0, 1.0, dy)
    tx = np.where(dx > 0, (sx0 - bx) / safe_dx, np.where(dx < 0, (sx1 - bx) / safe_dx, -np.inf))
    ty = np.where(dy > 0, (sy0 - by) / safe_dy, np.where(dy < 0, (sy1 - by) / safe_dy, -np.inf))
    entry = np.clip(np.maximum(tx, ty), 0.0, 1.0)
    return (1.0 - entry) * np.hypot(dx, dy)


class IndoorPaths(object):
    """Five candidate paths from one BS to a set of indoor points.

    power_dbm has shape (5, n) in PATH_NAMES order. exits holds the StreetGain
    of each wall exit point.
    """

    def __init__(self, power_dbm, exits, tw_db, indoor_db, los):
        self.power_dbm = power_dbm
        self.exits = exits
        self.tw_db = tw_db
        self.indoor_db = indoor_db
        self.los = los

    @property
    def total_dbm(self):
        return power_sum_db(self.power_dbm, axis=0)


def o2i_loss_db(bpl, fc_ghz, high, pl_b_db, d_in_m, shadow_p_db):
    """Total O2I loss per point, picking the penetration model of each building's class."""
    low_loss = o2i_total(pl_b_db, bpl[LossClass.LOW], fc_ghz, d_in_m, shadow_p_db)
    high_loss = o2i_total(pl_b_db, bpl[LossClass.HIGH], fc_ghz, d_in_m, shadow_p_db)
    return np.where(high, high_loss.total, low_loss.total)


def indoor_paths(spec, bs, models, link, bpl, geometry, loss_codes, shadowing):
    n = len(geometry.xs)
    high = loss_codes == LossClass.HIGH.value
    tw = np.where(high, bpl[LossClass.HIGH].loss(link.fc_ghz), bpl[LossClass.LOW].loss(link.fc_ghz))
    sigma_p = np.where(high, bpl[LossClass.HIGH].sigma_p_db, bpl[LossClass.LOW].sigma_p_db)
    base = link.ptx_dbm_per_pol + link.gtx_dbi + link.gue_indoor_dbi

    power = np.empty((len(PATH_NAMES), n))
    indoor_db = np.empty((len(PATH_NAMES), n))
    los = np.zeros((len(PATH_NAMES), n), dtype=bool)
    exits = []
    for k, wall in enumerate(WALLS):
        axis = NORTH_SOUTH if k < 2 else EAST_WEST
        gain = street_gain(spec, bs, axis, geometry.exit_line[k], geometry.exit_pos[k], models)
        ex, ey = geometry.exit_points(wall)
        pl_b = -(gain.pg_db + shadowing.street(gain.los, ex, ey))
        indoor_db[k] = pl_indoor(geometry.distances[k])
        total = o2i_loss_db(bpl, link.fc_ghz, high, pl_b, geometry.distances[k],
                            shadowing.indoor(sigma_p, geometry.xs, geometry.ys))
        m = np.where(gain.los, link.m_los_db, link.m_nlos_db)
        power[k] = base - m - total
        los[k] = gain.los
        exits.append(gain)

    d_2d = np.hypot(geometry.xs - float(bs[0]), geometry.ys - float(bs[1]))
    pl_b = pl_uma(d_2d, models.uma) - shadowing.street(np.zeros(n, dtype=bool), geometry.xs, geometry.ys)
    depth = np.minimum(direct_indoor_depth(geometry, bs), link.max_indoor_depth_m)
    indoor_db[-1] = pl_indoor(depth)
    total = o2i_loss_db(bpl, link.fc_ghz, high, pl_b, depth, shadowing.indoor(sigma_p, geometry.xs, geometry.ys))
    power[-1] = base - link.m_nlos_db - total
    return IndoorPaths(power, exits, tw, indoor_db, los)


def outdoor_power(link, pg_db, los, shadow_db):
    m = np.where(los, link.m_los_db, link.m_nlos_db)
    return rx_power_dbm(link.ptx_dbm_per_pol, link.gtx_dbi, link.gue_outdoor_dbi, m, pg_db + shadow_db)


def received_power(world, sites, models, link, bpl, points, shadows=None, street_maps=None):
    """(n_bs, n) received power of every evaluation point from every BS."""
    shadows = NoShadows() if shadows is None else shadows
    out_x, out_y = points.xs[points.outdoor], points.ys[points.outdoor]
    if street_maps is not None:
        pg, los = street_maps.lookup(world, out_x, out_y)
    else:
        pg, los = street_point_gains(world, sites, models, out_x, out_y)
    rx = np.empty((sites.n_bs, len(points)))
    for b, bs in enumerate(sites):
        shadowing = shadows.for_bs(b)
        rx[b, points.outdoor] = outdoor_power(link, pg[b], los[b], shadowing.street(los[b], out_x, out_y))
        paths = indoor_paths(world.spec, bs, models, link, bpl, points.geometry, points.loss_codes, shadowing)
        rx[b, points.indoor] = paths.total_dbm
    return rx


def select_serving(rx_dbm):
    """Strongest BS per column (lowest index on ties) and the power sum of the rest."""
    rx_dbm = np.asarray(rx_dbm, dtype=float)
    columns = np.arange(rx_dbm.shape[1])
    serving = np.argmax(rx_dbm, axis=0)
    linear = db_to_linear(rx_dbm)
    linear[serving, columns] = 0.0
    return serving, rx_dbm[serving, columns], linear_to_db(linear.sum(axis=0))


def evaluate_points(world, sites, models, link, bpl, points, shadows=None, street_maps=None):
    rx = received_power(world, sites, models, link, bpl, points, shadows, street_maps)
    serving, serving_dbm, interference_dbm = select_serving(rx)
    return LinkResult(serving, serving_dbm, interference_dbm, link)


class CandidatePath(object):
    def __init__(self, name, power_dbm, pg_db, corner_db, rooftop_db, los, tw_db, indoor_db):
        self.name = name
        self.power_dbm = power_dbm
        self.pg_db = pg_db
        self.corner_db = corner_db
        self.rooftop_db = rooftop_db
        self.los = los
        self.tw_db = tw_db
        self.indoor_db = indoor_db

    def __repr__(self):
        return "CandidatePath(%s, %.2f dBm)" % (self.name, self.power_dbm)


class IndoorPower(object):
    def __init__(self, total_dbm, paths):
        self.total_dbm = total_dbm
        self.paths = paths

    def path(self, name):
        return [p for p in self.paths if p.name == name][0]

    @property
    def strongest(self):
        return max(self.paths, key=lambda p: p.power_dbm)


def indoor_power(world, sites, bs_index, point, models, link, bpl, loss_class=LossClass.LOW, shadows=None):
    """Five-path breakdown of the power one BS delivers to one indoor point."""
    i, j = world.index_of(*point)
    if not world.indoor_mask[i, j]:
        raise ContractViolation("(%s, %s) is not an indoor point" % tuple(point))
    shadows = NoShadows() if shadows is None else shadows
    geometry = indoor_geometry(world.spec, [point[0]], [point[1]])
    bs = tuple(sites.positions[bs_index])
    paths = indoor_paths(world.spec, bs, models, link, bpl, geometry,
                         np.array([loss_class.value]), shadows.for_bs(bs_index))
    candidates = []
    for k, name in enumerate(PATH_NAMES):
        if k < len(WALLS):
            gain = paths.exits[k]
            pg, corner, rooftop = gain.pg_db[0], gain.corner_db[0], gain.rooftop_db[0]
        else:
            corner = np.nan
            rooftop = pg = -float(pl_uma(np.hypot(point[0] - bs[0], point[1] - bs[1]), models.uma))
        candidates.append(CandidatePath(name, float(paths.power_dbm[k, 0]), float(pg), float(corner),
                                        float(rooftop), bool(paths.los[k, 0]), float(paths.tw_db[0]),
                                        float(paths.indoor_db[k, 0])))
    return IndoorPower(float(paths.total_dbm[0]), candidates)


def serving_sectors(sites, points, serving):
    """Main-lobe sector of the serving BS toward each point, following the street route."""
    bs = sites.positions[serving]
    return route_sectors(points.world.spec, bs[:, 0], bs[:, 1], points.xs, points.ys)


def location_classes(world, sites, points):
    classes = world.classify(sites)
    i, j = world.lattice_index(points.xs, points.ys)
    return classes[i, j]


def population_masks(world, sites, points):
    classes = location_classes(world, sites, points)
    return {
        "indoor": classes == LocationClass.INDOOR.value,
        "outdoor": (classes == LocationClass.OUTDOOR_LOS.value) | (classes == LocationClass.OUTDOOR_NLOS.value),
    }
