"""Deterministic null calibration of the modified likelihood ratio statistic.

All quantities use the finite-sample ratios y1 = p/n1, y2 = p/n2 and
r_n = p/n with natural logarithms. The helper functions ``ell``,
``u_term``, ``v_term`` and ``psi`` recompute c1 = yb/(ya+yb) and
c2 = ya/(ya+yb) from their own arguments, so ``ell(y2, y1)`` carries
y1/(y1+y2) in its c1 slot.
"""
import logging
import math
from dataclasses import dataclass

from ..exceptions import AssumptionError, CalibrationError, DimensionError, InputError

_logger = logging.getLogger(__name__)

NEAR_UNITY_THRESHOLD = 0.05

MOMENT_SOURCES = ('known', 'estimated')


@dataclass(frozen=True)
class DimensionRatios:
    """Dimension-to-degrees-of-freedom ratios of a two-sample problem"""
    n1: int
    n2: int
    p: int
    n: int
    y1: float
    y2: float
    r_n: float
    h: float
    c1: float
    c2: float
    y1_gt_1: bool
    y2_gt_1: bool
    near_unity: bool

    @property
    def regime(self):
        """Label of the (y1, y2) regime, e.g. 'y1>1,y2<1'"""
        return 'y1%s1,y2%s1' % ('>' if self.y1_gt_1 else '<', '>' if self.y2_gt_1 else '<')


@dataclass(frozen=True)
class MomentParams:
    """Fourth cumulants beta_t = E z^4 - 3 of the two standardized populations"""
    beta1: float = 0.0
    beta2: float = 0.0
    source: str = 'known'
    clipped: bool = False

    def __post_init__(self):
        self._check_betas()

    def _check_betas(self):
        """Fourth cumulants of unit-variance variables are at least -2"""
        if self.source not in MOMENT_SOURCES:
            raise InputError('Unknown moment source: %s' % self.source)
        for name, value in (('beta1', self.beta1), ('beta2', self.beta2)):
            if not math.isfinite(value) or value < -2.0:
                raise InputError('%s must be a finite value >= -2, got %r' % (name, value))


@dataclass(frozen=True)
class CenteringTerms:
    """Centering l_n, mean mu_n and variance nu_n^2 of the null limit"""
    l_n: float
    mu_n: float
    nu_n2: float
    nu_n: float


def is_near_unity(y1, y2):
    """True when either ratio is within NEAR_UNITY_THRESHOLD of 1"""
    return min(abs(y1 - 1.0), abs(y2 - 1.0)) < NEAR_UNITY_THRESHOLD


def dimension_ratios(n1, n2, p):
    """
    Derive y1, y2, r_n, h, c1, c2 from degrees of freedom and dimension

    Args:
        n1, n2: degrees of freedom N_t - 1 of the two samples
        p: dimension

    Returns:
        DimensionRatios
    """
    if n1 < 2 or n2 < 2:
        raise InputError('Degrees of freedom must be at least 2, got n1=%d, n2=%d' % (n1, n2))
    if p < 1:
        raise InputError('Dimension must be positive, got p=%d' % p)
    n = n1 + n2
    if p >= n:
        raise DimensionError('Dimension p=%d must be smaller than n1 + n2 = %d' % (p, n))
    if p == n1 or p == n2:
        raise AssumptionError(
            'Dimension ratio equals 1 (p=%d, n1=%d, n2=%d); the test is undefined there'
            % (p, n1, n2))

    y1 = p / n1
    y2 = p / n2
    c1 = n1 / n
    return DimensionRatios(
        n1=n1,
        n2=n2,
        p=p,
        n=n,
        y1=y1,
        y2=y2,
        r_n=p / n,
        h=math.sqrt(y1 + y2 - y1 * y2),
        c1=c1,
        c2=1.0 - c1,
        y1_gt_1=y1 > 1.0,
        y2_gt_1=y2 > 1.0,
        near_unity=is_near_unity(y1, y2),
    )


def _weights(ya, yb):
    """Return (c1, c2, h^2) computed from the helper's own arguments"""
    for value in (ya, yb):
        if not value > 0.0:
            raise InputError('Dimension ratios must be positive, got %r' % value)
        if value == 1.0:
            raise AssumptionError('Dimension ratio equal to 1 is not allowed')
    total = ya + yb
    return yb / total, ya / total, ya + yb - ya * yb


def psi(ya, yb):
    """Psi(ya, yb) of the fourth-cumulant correction in mu_n"""
    c1, c2, h2 = _weights(ya, yb)
    if yb < 1.0:
        first = yb ** 4
    else:
        first = h2 * (2.0 * yb ** 2 - h2)
    if ya < 1.0:
        second = ya ** 3 * (ya + 2.0 * yb)
    else:
        second = h2 * (ya + yb + ya * yb)
    return c2 * ya ** 2 * first - c1 * yb ** 2 * second


def ell(ya, yb):
    """l(ya, yb); zero unless ya > 1"""
    c1, _c2, h2 = _weights(ya, yb)
    if ya < 1.0:
        return 0.0
    log_h = 0.5 * math.log(h2)
    return (2.0 * c1 * h2 / (ya * yb) * log_h
            - c1 * (1.0 + yb) / yb * math.log(ya)
            - c1 * (1.0 - ya) / ya * math.log(yb))


def u_term(ya, yb):
    """u(ya, yb) = c1 log(ya / h); zero unless ya > 1"""
    c1, _c2, h2 = _weights(ya, yb)
    if ya < 1.0:
        return 0.0
    return c1 * (math.log(ya) - 0.5 * math.log(h2))


def v_term(ya, yb):
    """v(ya, yb) = 2 c1 log ya - 2 c1 (c1 + 2 c2) log h; zero unless ya > 1"""
    c1, c2, h2 = _weights(ya, yb)
    if ya < 1.0:
        return 0.0
    return 2.0 * c1 * math.log(ya) - c1 * (c1 + 2.0 * c2) * math.log(h2)


def centering(ratios, moments):
    """
    Centering and scaling constants of the null limit

    Args:
        ratios: DimensionRatios of the problem
        moments: MomentParams with the fourth cumulants

    Returns:
        CenteringTerms with l_n, mu_n, nu_n^2 and nu_n
    """
    y1, y2 = ratios.y1, ratios.y2
    c1, c2 = ratios.c1, ratios.c2
    beta1, beta2 = moments.beta1, moments.beta2
    total = y1 + y2
    prod = y1 * y2
    h2 = y1 + y2 - prod
    log_h = 0.5 * math.log(h2)
    gap1 = abs(1.0 - y1)
    gap2 = abs(1.0 - y2)
    both_above = ratios.y1_gt_1 and ratios.y2_gt_1

    l_n = (c2 * math.log(y1) + c1 * math.log(y2)
           + 2.0 * h2 / prod * log_h
           - total / prod * math.log(total)
           - c1 * gap1 / y1 * math.log(gap1)
           - c2 * gap2 / y2 * math.log(gap2)
           - ell(y1, y2) - ell(y2, y1))

    mu_n = (0.5 * math.log(total) + 0.5 * c1 * math.log(gap1) + 0.5 * c2 * math.log(gap2) - log_h
            - u_term(y1, y2) - u_term(y2, y1)
            + beta1 * psi(y1, y2) / (2.0 * y1 * y2 ** 2 * total ** 2)
            + beta2 * psi(y2, y1) / (2.0 * y2 * y1 ** 2 * total ** 2))

    cross = 4.0 * c1 * c2 * log_h if both_above else 0.0
    bracket = ((y1 - 1.0) * y2 ** 2 if ratios.y1_gt_1 else 0.0) - ((y2 - 1.0) * y1 ** 2 if ratios.y2_gt_1 else 0.0)
    nu_n2 = (4.0 * log_h - 2.0 * c1 ** 2 * math.log(gap1) - 2.0 * c2 ** 2 * math.log(gap2) - 2.0 * math.log(total)
             + 2.0 * (v_term(y1, y2) + v_term(y2, y1) + cross)
             + (y1 * beta1 + y2 * beta2) / (prod ** 2 * total ** 2) * bracket ** 2)

    if not math.isfinite(nu_n2) or nu_n2 <= 0.0:
        _logger.error('Null variance nu_n^2=%r for y1=%.6g, y2=%.6g', nu_n2, y1, y2)
        raise CalibrationError('Null variance nu_n^2 must be positive, got %r (y1=%.6g, y2=%.6g)'
                               % (nu_n2, y1, y2))

    return CenteringTerms(l_n=l_n, mu_n=mu_n, nu_n2=nu_n2, nu_n=math.sqrt(nu_n2))
