"""Outdoor-to-indoor building penetration loss."""
import numpy as np
from urbanCoverage.grid.grid import LossClass
from urbanCoverage.util import ConfigurationError, DomainError, linear_to_db

INDOOR_LOSS_DB_PER_M = 0.5
MIN_FC_GHZ = 0.5
MAX_FC_GHZ = 100.0

# material name -> (a, b) of the a + b*f loss law, f in GHz
MATERIALS = {
    "glass": (2.0, 0.2),
    "irr_glass": (23.0, 0.3),
    "concrete": (5.0, 4.0),
}


def material_loss(material, fc_ghz):
    a, b = MATERIALS[material]
    return a + b * np.asarray(fc_ghz, dtype=float)


class BplModel(object):
    """Through-wall loss of one building class.

    kind is "3gpp" (weighted material mix plus a fixed term) or "5gcm"
    (10*log10(A + B*f^2)).
    """

    def __init__(self, name, kind="3gpp", mix=None, pl_npi_db=5.0, a=None, b=None, sigma_p_db=4.4):
        self.name = name
        self.kind = kind
        self.mix = mix or {}
        self.pl_npi_db = pl_npi_db
        self.a = a
        self.b = b
        self.sigma_p_db = sigma_p_db
        self.validate()

    def validate(self):
        if self.kind == "3gpp":
            if not self.mix:
                raise ConfigurationError("bpl_model: %s has no material mix" % self.name)
            for material in self.mix:
                if material not in MATERIALS:
                    raise ConfigurationError("bpl_model: unknown material %s" % material)
            if abs(sum(self.mix.values()) - 1.0) > 1e-9:
                raise ConfigurationError("bpl_model: material fractions of %s sum to %s, not 1"
                                         % (self.name, sum(self.mix.values())))
        elif self.kind == "5gcm":
            if self.a is None or self.b is None or self.a <= 0 or self.b < 0:
                raise ConfigurationError("bpl_model: %s needs A > 0 and B >= 0" % self.name)
        else:
            raise ConfigurationError("bpl_model: unknown kind %s" % self.kind)
        if self.sigma_p_db < 0:
            raise ConfigurationError("sigma_p: must be non-negative")

    def loss(self, fc_ghz):
        if self.kind == "5gcm":
            return bpl_5gcm(fc_ghz, self.a, self.b)
        return pl_tw(fc_ghz, self.mix, self.pl_npi_db)


def three_gpp_low(sigma_p_db=4.4, pl_npi_db=5.0):
    return BplModel("3gpp_low", "3gpp", {"glass": 0.3, "concrete": 0.7}, pl_npi_db, sigma_p_db=sigma_p_db)


def three_gpp_high(sigma_p_db=6.5, pl_npi_db=5.0):
    return BplModel("3gpp_high", "3gpp", {"irr_glass": 0.7, "concrete": 0.3}, pl_npi_db, sigma_p_db=sigma_p_db)


def five_gcm_low(sigma_p_db=4.4):
    return BplModel("5gcm_low", "5gcm", a=5.0, b=0.03, sigma_p_db=sigma_p_db)


def five_gcm_high(sigma_p_db=6.5):
    return BplModel("5gcm_high", "5gcm", a=10.0, b=5.0, sigma_p_db=sigma_p_db)


def bpl_models(kind="3gpp", sigma_p_low_db=4.4, sigma_p_high_db=6.5, pl_npi_db=5.0):
    """Returns a {LossClass: BplModel} mapping for a model family."""
    if kind == "3gpp":
        return {LossClass.LOW: three_gpp_low(sigma_p_low_db, pl_npi_db),
                LossClass.HIGH: three_gpp_high(sigma_p_high_db, pl_npi_db)}
    if kind == "5gcm":
        return {LossClass.LOW: five_gcm_low(sigma_p_low_db), LossClass.HIGH: five_gcm_high(sigma_p_high_db)}
    raise ConfigurationError("bpl_model: unknown family %s (expected 3gpp or 5gcm)" % kind)


def check_frequency(fc_ghz):
    fc_ghz = np.asarray(fc_ghz, dtype=float)
    if np.any(fc_ghz < MIN_FC_GHZ) or np.any(fc_ghz > MAX_FC_GHZ):
        raise DomainError("fc_ghz: penetration models hold for %s-%s GHz" % (MIN_FC_GHZ, MAX_FC_GHZ))
    return fc_ghz


def pl_tw(fc_ghz, mix, pl_npi_db=5.0):
    fc_ghz = check_frequency(fc_ghz)
    if abs(sum(mix.values()) - 1.0) > 1e-9:
        raise ConfigurationError("bpl_model: material fractions sum to %s, not 1" % sum(mix.values()))
    total = sum(fraction * np.power(10.0, -material_loss(material, fc_ghz) / 10.0)
                for material, fraction in mix.items())
    return pl_npi_db - linear_to_db(total)


def bpl_5gcm(fc_ghz, a, b):
    fc_ghz = check_frequency(fc_ghz)
    return 10.0 * np.log10(a + b * fc_ghz ** 2)


def pl_indoor(d_in_m):
    return INDOOR_LOSS_DB_PER_M * np.asarray(d_in_m, dtype=float)


class O2iLoss(object):
    """Outdoor path loss to the wall plus the penetration terms, all in dB."""

    def __init__(self, outdoor, tw, indoor, shadow):
        self.outdoor = outdoor
        self.tw = tw
        self.indoor = indoor
        self.shadow = shadow

    @property
    def penetration(self):
        return self.tw + self.indoor + self.shadow

    @property
    def total(self):
        return self.outdoor + self.penetration


def o2i_total(pl_b_db, model, fc_ghz, d_in_m, shadow_p_db=0.0):
    """pl_b_db is the outdoor path loss up to the exterior wall."""
    return O2iLoss(np.asarray(pl_b_db, dtype=float), model.loss(fc_ghz), pl_indoor(d_in_m),
                   np.asarray(shadow_p_db, dtype=float))


def bpl_curves(freqs_ghz, models=None):
    """Rows of (frequency, model name, loss) for every model at every frequency."""
    if models is None:
        models = [three_gpp_low(), three_gpp_high(), five_gcm_low(), five_gcm_high()]
    freqs_ghz = np.asarray(freqs_ghz, dtype=float)
    rows = []
    for model in models:
        for f, loss in zip(freqs_ghz, model.loss(freqs_ghz)):
            rows.append((float(f), model.name, float(loss)))
    return rows
