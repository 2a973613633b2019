import numpy as np


class Logger(object):
    log_level = 3

    @staticmethod
    def warning(message):
        if Logger.log_level > 1:
            Logger.log("warning", message)

    @staticmethod
    def error(message):
        Logger.log("error", message)

    @staticmethod
    def info(message):
        if Logger.log_level > 2:
            Logger.log("info", message)

    @staticmethod
    def debug(message):
        if Logger.log_level > 3:
            Logger.log("debug", message)

    @staticmethod
    def log(log_type, message):
        if log_type == "warning":
            print(PrintColors.WARNING, end=' ')
            print("WARNING: ", end=' ')
        elif log_type == "error":
            print(PrintColors.FAIL, end=' ')
            print("ERROR: ", end=' ')
        elif log_type == "info":
            print("INFO: ", end=' ')
        elif log_type == "debug":
            print("DEBUG: ", end=' ')
        print(message, end=' ')
        print(PrintColors.ENDC)


class PrintColors:
    HEADER = '\033[95m'
    OKBLUE = '\033[94m'
    OKGREEN = '\033[92m'
    WARNING = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'


class TypeConversion(object):
    @staticmethod
    def get_float(value):
        try:
            return float(value)
        except (ValueError, TypeError):
            return None

    @staticmethod
    def get_int(value):
        try:
            as_float = float(value)
        except (ValueError, TypeError):
            return None
        if not as_float.is_integer():
            return None
        return int(as_float)


NO_POWER_DBM = -np.inf


def db_to_linear(value_db):
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value):
    """Converts linear power to dB. Zero power maps to -inf instead of raising."""
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(value, dtype=float))


def power_sum_db(values_db, axis=0):
    """Sums powers given in dB along an axis, returning dB."""
    return linear_to_db(np.sum(db_to_linear(values_db), axis=axis))


class CoverageException(Exception):
    pass


class ConfigurationError(CoverageException):
    pass


class DomainError(CoverageException):
    pass


class ContractViolation(CoverageException):
    pass
