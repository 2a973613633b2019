"""Empirical cumulative distribution functions.

Adapted from the Cdf class of "Think Stats" by Allen B. Downey
(greenteapress.com), distributed under the GNU GPL. This version keeps the
values in numpy arrays and interpolates linearly between order statistics.
"""
import numpy as np


class Cdf(object):
    """Represents a cumulative distribution function.

    Attributes:
        xs: sorted values
        ps: cumulative probabilities, ps[i] = (i + 1) / n
        name: string used as a label in exports.
    """

    def __init__(self, xs=None, ps=None, name=''):
        self.xs = np.asarray([] if xs is None else xs, dtype=float)
        self.ps = np.asarray([] if ps is None else ps, dtype=float)
        self.name = name

    def __len__(self):
        return len(self.xs)

    def Value(self, p):
        """Returns InverseCDF(p), linearly interpolated between order statistics.

        Args:
            p: number in the range [0, 1]
        """
        if p < 0 or p > 1:
            raise ValueError('Probability p must be in range [0, 1]')
        if len(self.xs) == 0:
            raise ValueError('Empty distribution')
        return float(np.percentile(self.xs, 100.0 * p))

    def Quantiles(self, ps):
        """Vectorised Value for an array of probabilities."""
        return np.percentile(self.xs, 100.0 * np.asarray(ps, dtype=float))

    def Percentile(self, p):
        """Returns the value that corresponds to percentile p (0-100)."""
        return self.Value(p / 100.0)


def MakeCdfFromList(seq, name=''):
    """Creates a CDF from an unsorted sequence.

    Args:
        seq: unsorted sequence of numbers
        name: string name for the cdf

    Returns:
        Cdf object
    """
    xs = np.sort(np.asarray(seq, dtype=float).ravel())
    ps = np.arange(1, len(xs) + 1, dtype=float) / max(len(xs), 1)
    return Cdf(xs, ps, name)
