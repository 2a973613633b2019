"""Street-canyon and over-rooftop path gain models.

Gains are in dB and negative (gain = -loss). All functions accept scalars or
numpy arrays.
"""
import numpy as np
from scipy.constants import speed_of_light
from urbanCoverage.util import Logger, ConfigurationError, DomainError, power_sum_db

EFFECTIVE_ENVIRONMENT_HEIGHT_M = 1.0
UMA_MIN_D2D_M = 10.0


class SameStreetParams(object):
    def __init__(self, intercept_db=-35.0, exponent=3.56, sigma_db=7.1):
        self.intercept_db = intercept_db
        self.exponent = exponent
        self.sigma_db = sigma_db


class CornerParams(object):
    """Parameters of the around-one-corner model.

    corner_loss_db is the extra loss incurred at the turn and must be positive.
    """

    def __init__(self, intercept_db=-35.0, exponent=3.0, corner_loss_db=6.505, sigma_db=7.1):
        if corner_loss_db <= 0:
            raise ConfigurationError("corner_loss_db: must be positive, got %.3f dB" % corner_loss_db)
        self.intercept_db = intercept_db
        self.exponent = exponent
        self.corner_loss_db = corner_loss_db
        self.sigma_db = sigma_db


class UmaParams(object):
    def __init__(self, fc_ghz, bs_height_m=22.0, ue_height_m=1.5):
        if not 0.5 <= fc_ghz <= 100.0:
            raise DomainError("fc_ghz: %s GHz is outside 0.5-100 GHz" % fc_ghz)
        self.fc_ghz = fc_ghz
        self.bs_height_m = bs_height_m
        self.ue_height_m = ue_height_m


def pg_same_street(d, params, shadow_db=0.0):
    d = np.asarray(d, dtype=float)
    if np.any(d < 1.0):
        raise DomainError("same-street distance below 1 m")
    return params.intercept_db - 10.0 * params.exponent * np.log10(d) + shadow_db


def pg_around_corner(x, d_c, params, shadow_db=0.0):
    """x is the total Manhattan distance, d_c the distance from the site to the corner."""
    x = np.asarray(x, dtype=float)
    d_c = np.asarray(d_c, dtype=float)
    if np.any(x < 1.0) or np.any(d_c < 1.0):
        raise DomainError("corner model needs x >= 1 m and d_c >= 1 m")
    n = params.exponent
    before = params.intercept_db - 10.0 * n * np.log10(x)
    # the leg after the turn is at least one metre
    after_turn = np.maximum(x - d_c, 1.0)
    beyond = params.intercept_db - params.corner_loss_db - 5.0 * n * np.log10(d_c * after_turn * x)
    return np.where(x <= d_c, before, beyond) + shadow_db


def breakpoint_distance(params):
    h_bs = params.bs_height_m - EFFECTIVE_ENVIRONMENT_HEIGHT_M
    h_ut = params.ue_height_m - EFFECTIVE_ENVIRONMENT_HEIGHT_M
    return 4.0 * h_bs * h_ut * params.fc_ghz * 1e9 / speed_of_light


def pl_uma(d_2d, params, los=False, d_3d=None):
    """Urban-macro path loss (positive dB). Distances below 10 m are clamped to 10 m."""
    dh = params.bs_height_m - params.ue_height_m
    d_2d = np.maximum(np.asarray(d_2d, dtype=float), UMA_MIN_D2D_M)
    if d_3d is None:
        d_3d = np.sqrt(d_2d ** 2 + dh ** 2)
    else:
        d_3d = np.maximum(np.asarray(d_3d, dtype=float), np.sqrt(UMA_MIN_D2D_M ** 2 + dh ** 2))
    log_fc = 20.0 * np.log10(params.fc_ghz)
    d_bp = breakpoint_distance(params)
    pl1 = 28.0 + 22.0 * np.log10(d_3d) + log_fc
    pl2 = 28.0 + 40.0 * np.log10(d_3d) + log_fc - 9.0 * np.log10(d_bp ** 2 + dh ** 2)
    pl_los = np.where(d_2d <= d_bp, pl1, pl2)
    if los:
        return pl_los
    pl_nlos = 13.54 + 39.08 * np.log10(d_3d) + log_fc - 0.6 * (params.ue_height_m - 1.5)
    return np.maximum(pl_los, pl_nlos)


def combine_gains(*gains_db):
    """Power sum of path gains given in dB."""
    return power_sum_db(np.broadcast_arrays(*[np.asarray(g, dtype=float) for g in gains_db]), axis=0)


def solve_corner_loss(target_pl_db, d_c_m, x_m, intercept_db, exponent):
    return intercept_db + target_pl_db - 5.0 * exponent * np.log10(d_c_m * (x_m - d_c_m) * x_m)


def calibrate_corner(target_pl_db=135.0, d_c_m=100.0, x_m=190.0, intercept_db=-35.0, exponent=3.0, sigma_db=7.1):
    """Solves the corner loss so that the model predicts target_pl_db at (d_c_m, x_m)."""
    if not x_m > d_c_m >= 1.0:
        raise ConfigurationError("corner_anchor_x_m: anchor must lie beyond the corner (x > d_c >= 1)")
    corner_loss = float(solve_corner_loss(target_pl_db, d_c_m, x_m, intercept_db, exponent))
    if corner_loss <= 0:
        raise ConfigurationError(
            "corner_exponent: anchor %.1f dB at d_c=%s m, x=%s m solves to a non-positive corner loss "
            "(%.2f dB) with intercept %.1f dB and exponent %.2f" % (
                target_pl_db, d_c_m, x_m, corner_loss, intercept_db, exponent))
    Logger.info("solved corner loss %.3f dB (intercept %.1f dB, exponent %.2f)" % (corner_loss, intercept_db, exponent))
    return CornerParams(intercept_db, exponent, corner_loss, sigma_db)


class PathGainModels(object):
    """The three outdoor models used together by the engine."""

    def __init__(self, same_street, corner, uma):
        self.same_street = same_street
        self.corner = corner
        self.uma = uma
