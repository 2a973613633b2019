from enum import Enum
import numpy as np
from urbanCoverage.util import Logger, ConfigurationError, ContractViolation


class LocationClass(Enum):
    OUTDOOR_LOS = 0
    OUTDOOR_NLOS = 1
    INDOOR = 2
    IGNORED = 3


class LossClass(Enum):
    LOW = 0
    HIGH = 1


# order of the four candidate exterior walls of an indoor point
WALLS = ("west", "east", "north", "south")

STREET = -1


class GridSpec(object):
    """Dimensions of the Manhattan world, all in metres."""

    def __init__(self, width_m=800, height_m=800, block_w_m=200, block_h_m=50,
                 strip_w_m=190, strip_h_m=40, unit_w_m=19, unit_h_m=20,
                 core_w_m=150, core_h_m=10, resolution_m=1):
        self.width_m = width_m
        self.height_m = height_m
        self.block_w_m = block_w_m
        self.block_h_m = block_h_m
        self.strip_w_m = strip_w_m
        self.strip_h_m = strip_h_m
        self.unit_w_m = unit_w_m
        self.unit_h_m = unit_h_m
        self.core_w_m = core_w_m
        self.core_h_m = core_h_m
        self.resolution_m = resolution_m

    @property
    def margin_x(self):
        return (self.block_w_m - self.strip_w_m) / 2.0

    @property
    def margin_y(self):
        return (self.block_h_m - self.strip_h_m) / 2.0

    @property
    def street_w_m(self):
        return self.block_w_m - self.strip_w_m

    @property
    def shape(self):
        """Lattice shape as (rows, columns), rows running north to south."""
        return (int(round(self.height_m / self.resolution_m)),
                int(round(self.width_m / self.resolution_m)))

    @property
    def units_per_strip(self):
        return (int(round(self.strip_w_m / self.unit_w_m)),
                int(round(self.strip_h_m / self.unit_h_m)))

    def validate(self):
        def divides(whole, part):
            ratio = whole / float(part)
            return abs(ratio - round(ratio)) < 1e-9

        if self.resolution_m <= 0:
            raise ConfigurationError("resolution_m: must be positive")
        for key in ("width_m", "height_m", "block_w_m", "block_h_m", "strip_w_m", "strip_h_m",
                    "unit_w_m", "unit_h_m"):
            if getattr(self, key) <= 0:
                raise ConfigurationError("%s: must be positive" % key)
        if not divides(self.width_m, self.block_w_m) or not divides(self.height_m, self.block_h_m):
            raise ConfigurationError("block_w_m: blocks of %sx%s m do not tile a %sx%s m grid"
                                     % (self.block_w_m, self.block_h_m, self.width_m, self.height_m))
        if self.strip_w_m >= self.block_w_m or self.strip_h_m >= self.block_h_m:
            raise ConfigurationError("strip_w_m: building strip must leave a street inside the block")
        if self.core_w_m >= self.strip_w_m or self.core_h_m >= self.strip_h_m or self.core_w_m < 0 or self.core_h_m < 0:
            raise ConfigurationError("core_w_m: ignored core must fit inside the building strip")
        if not divides(self.strip_w_m, self.unit_w_m) or not divides(self.strip_h_m, self.unit_h_m):
            raise ConfigurationError("unit_w_m: unit buildings must tile the building strip")
        for key in ("width_m", "height_m", "block_w_m", "block_h_m", "margin_x", "margin_y"):
            if not divides(getattr(self, key), self.resolution_m):
                raise ConfigurationError("resolution_m: does not divide %s" % key)
        return self


class Building(object):
    def __init__(self, id, block, x0, y0, x1, y1, loss_class=None):
        self.id = id
        self.block = block
        self.x0 = x0
        self.y0 = y0
        self.x1 = x1
        self.y1 = y1
        self.loss_class = loss_class

    def with_loss_class(self, loss_class):
        return Building(self.id, self.block, self.x0, self.y0, self.x1, self.y1, loss_class)

    def __repr__(self):
        return "Building(%s, block=%s, [%s,%s)x[%s,%s), %s)" % (
            self.id, self.block, self.x0, self.x1, self.y0, self.y1, self.loss_class)


class SiteLayout(object):
    def __init__(self, positions, isd_m, bs_height_m=22.0, ue_height_m=1.5, diamond_radius_m=None):
        self.positions = np.asarray(positions, dtype=float).reshape(-1, 2)
        self.isd_m = isd_m
        self.bs_height_m = bs_height_m
        self.ue_height_m = ue_height_m
        self.diamond_radius_m = isd_m / 2.0 if diamond_radius_m is None else diamond_radius_m
        self.center_index = 0

    @property
    def n_bs(self):
        return len(self.positions)

    @property
    def center(self):
        return tuple(self.positions[self.center_index])

    def __iter__(self):
        for position in self.positions:
            yield tuple(position)


class SameStreet(object):
    def __init__(self, d):
        self.d = d

    def __repr__(self):
        return "SameStreet(d=%s)" % self.d


class OneTurn(object):
    def __init__(self, d_c, x, corner):
        self.d_c = d_c
        self.x = x
        self.corner = corner

    def __repr__(self):
        return "OneTurn(d_c=%s, x=%s, corner=%s)" % (self.d_c, self.x, self.corner)


class NoStreetRoute(object):
    def __repr__(self):
        return "NoStreetRoute()"


class IndoorGeometry(object):
    """Wall distances and wall exit points of indoor lattice points.

    distances has shape (4, n) in WALLS order. West/east exits lie on a
    north-south centreline (exit_line = x, exit_pos = y); north/south exits lie
    on an east-west centreline (exit_line = y, exit_pos = x).
    """

    def __init__(self, xs, ys, strip, distances, exit_line, exit_pos):
        self.xs = xs
        self.ys = ys
        self.strip = strip
        self.distances = distances
        self.exit_line = exit_line
        self.exit_pos = exit_pos

    def exit_points(self, wall):
        k = WALLS.index(wall)
        if k < 2:
            return self.exit_line[k], self.exit_pos[k]
        return self.exit_pos[k], self.exit_line[k]


def street_memberships(spec, xs, ys):
    """Street bands a point falls into and the centreline each band projects onto."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ox = np.mod(xs, spec.block_w_m)
    oy = np.mod(ys, spec.block_h_m)
    on_ns = (ox < spec.margin_x) | (ox >= spec.block_w_m - spec.margin_x)
    on_ew = (oy < spec.margin_y) | (oy >= spec.block_h_m - spec.margin_y)
    xc = np.floor(xs / spec.block_w_m + 0.5) * spec.block_w_m
    yc = np.floor(ys / spec.block_h_m + 0.5) * spec.block_h_m
    return on_ns, xc, on_ew, yc


def indoor_geometry(spec, xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    bx = np.floor(xs / spec.block_w_m) * spec.block_w_m
    by = np.floor(ys / spec.block_h_m) * spec.block_h_m
    sx0 = bx + spec.margin_x
    sx1 = sx0 + spec.strip_w_m
    sy0 = by + spec.margin_y
    sy1 = sy0 + spec.strip_h_m
    distances = np.vstack([xs - sx0, sx1 - xs, ys - sy0, sy1 - ys])
    exit_line = np.vstack([bx, bx + spec.block_w_m, by, by + spec.block_h_m])
    exit_pos = np.vstack([ys, ys, xs, xs])
    return IndoorGeometry(xs, ys, (sx0, sx1, sy0, sy1), distances, exit_line, exit_pos)


class World(object):
    """Immutable street/building layout of the lattice."""

    def __init__(self, spec):
        self.spec = spec
        rows, cols = spec.shape
        res = spec.resolution_m
        self.xs = np.arange(cols) * res
        self.ys = np.arange(rows) * res
        grid_x, grid_y = np.meshgrid(self.xs, self.ys)
        ox = np.mod(grid_x, spec.block_w_m)
        oy = np.mod(grid_y, spec.block_h_m)
        in_strip = ((ox >= spec.margin_x) & (ox < spec.block_w_m - spec.margin_x) &
                    (oy >= spec.margin_y) & (oy < spec.block_h_m - spec.margin_y))
        core_x0 = (spec.block_w_m - spec.core_w_m) / 2.0
        core_y0 = (spec.block_h_m - spec.core_h_m) / 2.0
        in_core = ((ox >= core_x0) & (ox < core_x0 + spec.core_w_m) &
                   (oy >= core_y0) & (oy < core_y0 + spec.core_h_m))
        self.street_mask = ~in_strip
        self.ignored_mask = in_strip & in_core
        self.indoor_mask = in_strip & ~in_core

        n_cols, n_rows = spec.units_per_strip
        blocks_x = int(round(spec.width_m / spec.block_w_m))
        blocks_y = int(round(spec.height_m / spec.block_h_m))
        self.buildings = []
        for bj in range(blocks_y):
            for bi in range(blocks_x):
                for r in range(n_rows):
                    for c in range(n_cols):
                        x0 = bi * spec.block_w_m + spec.margin_x + c * spec.unit_w_m
                        y0 = bj * spec.block_h_m + spec.margin_y + r * spec.unit_h_m
                        self.buildings.append(Building(len(self.buildings), (bi, bj), x0, y0,
                                                       x0 + spec.unit_w_m, y0 + spec.unit_h_m))
        self.buildings_per_block = n_cols * n_rows
        self.building_id = np.full(spec.shape, STREET, dtype=np.int32)
        self.building_id[in_strip] = self.building_of(grid_x[in_strip], grid_y[in_strip])

    @property
    def shape(self):
        return self.spec.shape

    def building_of(self, xs, ys):
        spec = self.spec
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        bi = np.floor(xs / spec.block_w_m).astype(int)
        bj = np.floor(ys / spec.block_h_m).astype(int)
        n_cols, n_rows = spec.units_per_strip
        c = np.floor((np.mod(xs, spec.block_w_m) - spec.margin_x) / spec.unit_w_m).astype(int)
        r = np.floor((np.mod(ys, spec.block_h_m) - spec.margin_y) / spec.unit_h_m).astype(int)
        blocks_x = int(round(spec.width_m / spec.block_w_m))
        return (bj * blocks_x + bi) * self.buildings_per_block + r * n_cols + c

    def index_of(self, x, y):
        res = self.spec.resolution_m
        return int(round(y / res)), int(round(x / res))

    def lattice_index(self, xs, ys):
        """Nearest lattice indices for (possibly off-lattice) coordinates, clipped into the grid."""
        rows, cols = self.spec.shape
        res = self.spec.resolution_m
        i = np.clip(np.rint(np.asarray(ys, dtype=float) / res).astype(int), 0, rows - 1)
        j = np.clip(np.rint(np.asarray(xs, dtype=float) / res).astype(int), 0, cols - 1)
        return i, j

    def los_street_mask(self, sites, xs, ys):
        on_ns, xc, on_ew, yc = street_memberships(self.spec, xs, ys)
        bs_x, bs_y = bs_street_lines(self.spec, sites)
        return (on_ns & np.isin(xc, bs_x)) | (on_ew & np.isin(yc, bs_y))

    def classify(self, sites):
        """Per-point LocationClass codes for the given site layout."""
        classes = np.full(self.spec.shape, LocationClass.INDOOR.value, dtype=np.int8)
        classes[self.ignored_mask] = LocationClass.IGNORED.value
        grid_x, grid_y = np.meshgrid(self.xs, self.ys)
        los = self.los_street_mask(sites, grid_x, grid_y)
        classes[self.street_mask & los] = LocationClass.OUTDOOR_LOS.value
        classes[self.street_mask & ~los] = LocationClass.OUTDOOR_NLOS.value
        return classes

    def locate(self, x, y, sites):
        """Classifies a single point, returning a PointInfo."""
        i, j = self.index_of(x, y)
        if self.street_mask[i, j]:
            bs_ids = [b for b, bs in enumerate(sites) if not isinstance(
                manhattan_route(self.spec, bs, (x, y)), (OneTurn, NoStreetRoute))]
            kind = LocationClass.OUTDOOR_LOS if bs_ids else LocationClass.OUTDOOR_NLOS
            return PointInfo(kind, bs_ids=bs_ids)
        building = self.buildings[self.building_id[i, j]]
        if self.ignored_mask[i, j]:
            return PointInfo(LocationClass.IGNORED, building=building)
        geometry = indoor_geometry(self.spec, [x], [y])
        distances = dict(zip(WALLS, geometry.distances[:, 0]))
        exits = dict((wall, tuple(float(v[0]) for v in geometry.exit_points(wall))) for wall in WALLS)
        return PointInfo(LocationClass.INDOOR, building=building, wall_distances=distances, wall_exits=exits)


class PointInfo(object):
    def __init__(self, kind, bs_ids=None, building=None, wall_distances=None, wall_exits=None):
        self.kind = kind
        self.bs_ids = bs_ids or []
        self.building = building
        self.wall_distances = wall_distances
        self.wall_exits = wall_exits


def build_grid(spec):
    spec.validate()
    world = World(spec)
    Logger.info("built %sx%s m world: %s buildings, %s street points" % (
        spec.width_m, spec.height_m, len(world.buildings), int(world.street_mask.sum())))
    return world


def bs_street_lines(spec, sites):
    """Centreline coordinates of the north-south and east-west streets that carry a BS."""
    positions = sites.positions if isinstance(sites, SiteLayout) else np.asarray(list(sites), dtype=float).reshape(-1, 2)
    bx, by = positions[:, 0], positions[:, 1]
    on_ns = np.isclose(np.mod(bx, spec.block_w_m), 0.0)
    on_ew = np.isclose(np.mod(by, spec.block_h_m), 0.0)
    return bx[on_ns], by[on_ew]


def place_base_stations(spec, isd_m, bs_height_m=22.0, ue_height_m=1.5, diamond_radius_m=None):
    """Diamond lattice of intersection-mounted sites at Manhattan spacing isd_m.

    Sites sit at intersections whose coordinates are multiples of isd/2 with
    the same checkerboard parity as the grid centre, so the centre is always a
    site. Boundary intersections are included. Sites are ordered by distance
    from the centre, ties by (y, x).
    """
    half = isd_m / 2.0
    if isd_m <= 0:
        raise ConfigurationError("isd_m: must be positive")
    ratio_x = half / spec.block_w_m
    ratio_y = half / spec.block_h_m
    if abs(ratio_x - round(ratio_x)) > 1e-9 or abs(ratio_y - round(ratio_y)) > 1e-9:
        raise ConfigurationError("isd_m: %s m does not place sites on street intersections" % isd_m)
    cx, cy = spec.width_m / 2.0, spec.height_m / 2.0
    if abs(cx / half - round(cx / half)) > 1e-9 or abs(cy / half - round(cy / half)) > 1e-9:
        raise ConfigurationError("isd_m: %s m has no site at the grid centre" % isd_m)
    parity = int(round(cx / half + cy / half)) % 2
    positions = []
    for i in range(int(round(spec.width_m / half)) + 1):
        for j in range(int(round(spec.height_m / half)) + 1):
            if (i + j) % 2 == parity:
                positions.append((i * half, j * half))
    positions.sort(key=lambda p: (np.hypot(p[0] - cx, p[1] - cy), p[1], p[0]))
    Logger.info("placed %s sites at ISD %s m" % (len(positions), isd_m))
    return SiteLayout(positions, isd_m, bs_height_m, ue_height_m, diamond_radius_m)


def assign_building_classes(buildings, p_high, rng):
    """Draws an independent Bernoulli(p_high) high-loss flag per unit building."""
    if not 0.0 <= p_high <= 1.0:
        raise ConfigurationError("p_high: must lie in [0, 1]")
    high = rng.random(len(buildings)) < p_high
    return [b.with_loss_class(LossClass.HIGH if h else LossClass.LOW) for b, h in zip(buildings, high)]


def loss_class_codes(buildings):
    return np.array([b.loss_class.value for b in buildings], dtype=np.int8)


def manhattan_route(spec, bs, point):
    """Street route from a site to a street point, measured along centrelines."""
    bx, by = float(bs[0]), float(bs[1])
    x, y = float(point[0]), float(point[1])
    on_ns, xc, on_ew, yc = [np.asarray(v).item() for v in street_memberships(spec, x, y)]
    if not (on_ns or on_ew):
        raise ContractViolation("(%s, %s) is not a street point" % (x, y))
    bs_on_ns = np.isclose(bx % spec.block_w_m, 0.0)
    bs_on_ew = np.isclose(by % spec.block_h_m, 0.0)

    same = []
    if on_ns and bs_on_ns and xc == bx:
        same.append(abs(y - by))
    if on_ew and bs_on_ew and yc == by:
        same.append(abs(x - bx))
    if same:
        return SameStreet(min(same))

    turns = []
    if on_ns and bs_on_ew:
        d_c = abs(xc - bx)
        turns.append(OneTurn(d_c, d_c + abs(y - by), (xc, by)))
    if on_ew and bs_on_ns:
        d_c = abs(yc - by)
        turns.append(OneTurn(d_c, d_c + abs(x - bx), (bx, yc)))
    if turns:
        return min(turns, key=lambda r: r.x - r.d_c)
    return NoStreetRoute()


def in_diamond(xs, ys, center, radius_m=200.0):
    return np.abs(np.asarray(xs, dtype=float) - center[0]) + np.abs(np.asarray(ys, dtype=float) - center[1]) <= radius_m
