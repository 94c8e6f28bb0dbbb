import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..exceptions import (
    ConditioningError,
    DegenerateDataError,
    DimensionError,
    InputError,
    InvariantError,
)

_logger = logging.getLogger(__name__)

CLAMP_FLOOR = 1e-10
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class FisherSpectrum:
    """Eigenvalues of B_n = A1 (A1 + A2)^-1 split into zero, interior and one"""
    interior: np.ndarray
    zero_count: int
    one_count: int
    clamp_tolerance: float
    raw: np.ndarray

    @property
    def dim(self):
        return self.interior.shape[0] + self.zero_count + self.one_count


@dataclass(frozen=True)
class QuadraticTerm:
    """Hotelling-type quadratic form T_n and its null limit r/(1-r)"""
    t_n: float
    limit: float


def _check_pair(m1, m2):
    """Validate that two sets of moments can be pooled"""
    if m1.dim != m2.dim:
        raise InputError('Samples have different dimensions: %d vs %d' % (m1.dim, m2.dim))
    p = m1.dim
    if p >= m1.df + m2.df:
        raise DimensionError(
            'Dimension p=%d must be smaller than n1 + n2 = %d + %d; the pooled scatter is singular'
            % (p, m1.df, m2.df))


def pooled_cholesky(m1, m2):
    """
    Lower Cholesky factor of the pooled scatter A1 + A2

    Args:
        m1, m2: SampleMoments of the two samples

    Returns:
        numpy.ndarray: lower triangular L with L L' = A1 + A2
    """
    _check_pair(m1, m2)
    pooled = m1.scatter + m2.scatter
    try:
        factor = linalg.cholesky(pooled, lower=True, check_finite=False)
    except linalg.LinAlgError as e:
        _logger.error('Cholesky factorization of pooled scatter failed: %s', str(e))
        raise ConditioningError('Pooled scatter is not positive definite: %s' % str(e)) from e

    diag = np.abs(np.diag(factor))
    if diag.min() ** 2 <= m1.dim * _EPS * diag.max() ** 2:
        raise ConditioningError(
            'Pooled scatter is numerically singular (pivot ratio %.3g)' % (diag.min() / diag.max()))
    return factor


def fisher_spectrum(m1, m2, factor=None):
    """
    Eigenvalues of the Fisher-type matrix B_n = n1 S1 (n1 S1 + n2 S2)^-1

    Solved as the symmetric-definite pencil A1 v = lambda (A1 + A2) v,
    reduced to L^-1 A1 L^-T with the pooled Cholesky factor, so every
    eigenvalue is real and lies in [0, 1] up to roundoff.

    Args:
        m1, m2: SampleMoments of the two samples
        factor: optional pooled Cholesky factor, reused when given

    Returns:
        FisherSpectrum
    """
    if factor is None:
        factor = pooled_cholesky(m1, m2)
    else:
        _check_pair(m1, m2)
    p = m1.dim

    half = linalg.solve_triangular(factor, m1.scatter, lower=True, check_finite=False)
    reduced = linalg.solve_triangular(factor, half.T, lower=True, check_finite=False)
    reduced = 0.5 * (reduced + reduced.T)
    raw = linalg.eigh(reduced, eigvals_only=True, check_finite=False)

    tol = max(p * _EPS * float(np.abs(raw).max()), CLAMP_FLOOR)
    is_zero = raw <= tol
    is_one = raw >= 1.0 - tol
    interior = raw[~is_zero & ~is_one]
    zero_count = int(is_zero.sum())
    one_count = int(is_one.sum())

    expected_zero = max(p - m1.df, 0)
    expected_one = max(p - m2.df, 0)
    if zero_count != expected_zero or one_count != expected_one:
        _logger.error('Eigenvalue counts %d/%d differ from rank-forced %d/%d',
                      zero_count, one_count, expected_zero, expected_one)
        raise DegenerateDataError(
            'B_n has %d zero and %d one eigenvalues, expected %d and %d from the sample ranks; '
            'the data are rank deficient (duplicated or collinear observations?)'
            % (zero_count, one_count, expected_zero, expected_one))

    if raw[0] < -10 * tol or raw[-1] > 1.0 + 10 * tol:
        raise InvariantError('B_n eigenvalues escaped [0, 1]: min %.3g, max %.3g' % (raw[0], raw[-1]))

    interior = np.array(interior)
    interior.flags.writeable = False
    raw = np.array(raw)
    raw.flags.writeable = False
    return FisherSpectrum(
        interior=interior,
        zero_count=zero_count,
        one_count=one_count,
        clamp_tolerance=tol,
        raw=raw,
    )


def hotelling_term(m1, m2, factor=None):
    """
    Quadratic form T_n = n1 n2 / n * d' (A1 + A2)^-1 d with d = mean1 - mean2

    One triangular solve against the pooled Cholesky factor; no inverse is formed.
    """
    if factor is None:
        factor = pooled_cholesky(m1, m2)
    else:
        _check_pair(m1, m2)

    n1, n2 = m1.df, m2.df
    n = n1 + n2
    diff = m1.mean - m2.mean
    solved = linalg.solve_triangular(factor, diff, lower=True, check_finite=False)
    t_n = n1 * n2 / n * float(solved @ solved)

    r_n = m1.dim / n
    return QuadraticTerm(t_n=t_n, limit=r_n / (1.0 - r_n))
