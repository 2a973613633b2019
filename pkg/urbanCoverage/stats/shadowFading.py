"""Log-normal shadow fading: independent draws per drop and spatially
correlated fields for snapshot maps."""
import numpy as np
from urbanCoverage.util import Logger, ConfigurationError, DomainError


class FadingSpec(object):
    def __init__(self, sigma_los_db=7.1, sigma_nlos_db=7.1, dcorr_los_m=37.0, dcorr_nlos_m=50.0,
                 dcorr_indoor_m=10.0, enabled=True):
        self.sigma_los_db = sigma_los_db
        self.sigma_nlos_db = sigma_nlos_db
        self.dcorr_los_m = dcorr_los_m
        self.dcorr_nlos_m = dcorr_nlos_m
        self.dcorr_indoor_m = dcorr_indoor_m
        self.enabled = enabled
        for key in ("sigma_los_db", "sigma_nlos_db"):
            if getattr(self, key) < 0:
                raise ConfigurationError("%s: must be non-negative" % key)
        for key in ("dcorr_los_m", "dcorr_nlos_m", "dcorr_indoor_m"):
            if getattr(self, key) <= 0:
                raise ConfigurationError("%s: must be positive" % key)


def draw_iid(sigma_db, rng, size=None):
    """Zero-mean Gaussian shadowing in dB; sigma may be an array matching size."""
    sigma_db = np.asarray(sigma_db, dtype=float)
    if size is None:
        size = sigma_db.shape
    return rng.standard_normal(size) * sigma_db


def correlated_field(shape, sigma_db, d_corr_m, rng, resolution_m=1.0):
    """Gaussian field with exponential autocorrelation exp(-r / d_corr).

    Synthesised in the frequency domain on a grid padded by 4 * d_corr so the
    periodic wrap does not correlate opposite edges, then cropped and rescaled
    to the exact target standard deviation.
    """
    if d_corr_m < resolution_m:
        raise DomainError("correlation distance %s m is below the lattice resolution %s m" % (d_corr_m, resolution_m))
    rows, cols = shape
    if sigma_db == 0:
        return np.zeros(shape)
    pad = int(np.ceil(4.0 * d_corr_m / resolution_m))
    n_rows, n_cols = rows + 2 * pad, cols + 2 * pad
    ky = np.fft.fftfreq(n_rows, d=resolution_m)
    kx = np.fft.rfftfreq(n_cols, d=resolution_m)
    k2 = ky[:, None] ** 2 + kx[None, :] ** 2
    # square root of the 2D spectrum of exp(-r/d)
    amplitude = np.power(1.0 + (2.0 * np.pi * d_corr_m) ** 2 * k2, -0.75)
    noise = rng.standard_normal((n_rows, n_cols))
    field = np.fft.irfft2(np.fft.rfft2(noise) * amplitude, s=(n_rows, n_cols))
    field = field[pad:pad + rows, pad:pad + cols]
    field = field - field.mean()
    return field * (sigma_db / field.std())


class _ZeroShadowing(object):
    def street(self, los, xs, ys):
        return np.zeros(np.shape(los))

    def indoor(self, sigma_p_db, xs, ys):
        return np.zeros(np.shape(sigma_p_db))


class NoShadows(object):
    """Median predictions, used for worked examples."""

    def for_bs(self, bs_index):
        return _ZeroShadowing()


class _IidShadowing(object):
    def __init__(self, rng, fading):
        self.rng = rng
        self.fading = fading

    def street(self, los, xs, ys):
        sigma = np.where(los, self.fading.sigma_los_db, self.fading.sigma_nlos_db)
        return draw_iid(sigma, self.rng)

    def indoor(self, sigma_p_db, xs, ys):
        return draw_iid(sigma_p_db, self.rng)


class DropShadows(object):
    """Independent draws per (UE, BS, path) within one drop."""

    def __init__(self, rng, fading):
        self.rng = rng
        self.fading = fading

    def for_bs(self, bs_index):
        return _IidShadowing(self.rng, self.fading)


class _FieldShadowing(object):
    def __init__(self, world, los_field, nlos_field, indoor_field):
        self.world = world
        self.los_field = los_field
        self.nlos_field = nlos_field
        self.indoor_field = indoor_field

    def street(self, los, xs, ys):
        i, j = self.world.lattice_index(xs, ys)
        return np.where(los, self.los_field[i, j], self.nlos_field[i, j])

    def indoor(self, sigma_p_db, xs, ys):
        i, j = self.world.lattice_index(xs, ys)
        return self.indoor_field[i, j] * sigma_p_db


class FieldShadows(object):
    """Spatially correlated fields, one set per BS.

    Each BS owns a LOS, a NLOS and a unit-variance indoor layer, each seeded
    from its own SeedSequence child so the layers can be built in any order.
    """

    def __init__(self, world, fading, seed_sequence, n_bs):
        self.world = world
        self.fading = fading
        self.children = [child.spawn(3) for child in seed_sequence.spawn(n_bs)]

    def layers(self, bs_index):
        res = self.world.spec.resolution_m
        shape = self.world.shape
        los_seed, nlos_seed, indoor_seed = self.children[bs_index]
        los = correlated_field(shape, self.fading.sigma_los_db, self.fading.dcorr_los_m,
                               np.random.default_rng(los_seed), res)
        nlos = correlated_field(shape, self.fading.sigma_nlos_db, self.fading.dcorr_nlos_m,
                                np.random.default_rng(nlos_seed), res)
        indoor = correlated_field(shape, 1.0, self.fading.dcorr_indoor_m,
                                  np.random.default_rng(indoor_seed), res)
        return los, nlos, indoor

    def for_bs(self, bs_index):
        Logger.debug("synthesising shadow fields for BS %s" % bs_index)
        return _FieldShadowing(self.world, *self.layers(bs_index))
