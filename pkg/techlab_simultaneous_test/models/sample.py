import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import DegenerateSampleError, InputError

_logger = logging.getLogger(__name__)


def _frozen(array):
    array = np.array(array, dtype=np.float64)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class SampleSet:
    """Observations of one population, rows are observations"""
    observations: np.ndarray
    label: str = 'sample'

    def __post_init__(self):
        object.__setattr__(self, 'observations', _frozen(self.observations))
        self._check_shape()
        self._check_finite()

    def _check_shape(self):
        """Validate the observation matrix layout"""
        if self.observations.ndim != 2:
            raise InputError('%s: observations must be a 2-d matrix, got %d dimension(s)'
                             % (self.label, self.observations.ndim))
        if self.observations.shape[1] < 1:
            raise InputError('%s: at least one variable is required' % self.label)
        if self.observations.shape[0] < 2:
            raise DegenerateSampleError('%s: at least 2 observations are required, got %d'
                                        % (self.label, self.observations.shape[0]))

    def _check_finite(self):
        """Reject NaN and infinite entries"""
        bad = ~np.isfinite(self.observations)
        if bad.any():
            row, col = np.argwhere(bad)[0]
            raise InputError('%s: non-finite value at row %d, column %d (%d in total)'
                             % (self.label, row, col, int(bad.sum())))

    @property
    def size(self):
        return self.observations.shape[0]

    @property
    def dim(self):
        return self.observations.shape[1]


@dataclass(frozen=True)
class SampleMoments:
    """Mean, scatter and unbiased covariance of one sample"""
    mean: np.ndarray
    scatter: np.ndarray
    df: int
    covariance: np.ndarray
    size: int
    label: str = 'sample'

    @property
    def dim(self):
        return self.mean.shape[0]


def compute_moments(sample):
    """
    Compute the sample mean and centered cross-product matrix

    Args:
        sample: SampleSet with N >= 2 rows

    Returns:
        SampleMoments with scatter A = sum (x_i - xbar)(x_i - xbar)' and
        covariance S = A / (N - 1)
    """
    x = sample.observations
    if x.shape[0] < 2:
        raise DegenerateSampleError('%s: at least 2 observations are required' % sample.label)

    mean = x.mean(axis=0)
    centered = x - mean
    scatter = centered.T @ centered
    # exact symmetry; BLAS may leave the two triangles an ulp apart
    scatter = 0.5 * (scatter + scatter.T)
    df = x.shape[0] - 1

    return SampleMoments(
        mean=_frozen(mean),
        scatter=_frozen(scatter),
        df=df,
        covariance=_frozen(scatter / df),
        size=x.shape[0],
        label=sample.label,
    )
