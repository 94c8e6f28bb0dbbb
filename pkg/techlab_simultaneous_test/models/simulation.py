import logging
import time
from dataclasses import dataclass, replace
from multiprocessing import Pool
from typing import Optional

import numpy as np
from scipy.stats import kstest

from ..exceptions import InputError, ReplicationError, SimultaneousTestError
from .calibration import is_near_unity
from .hn_test import run_hn_test
from .ml_test import run_ml_test
from .sample import SampleSet
from .tables import PUBLISHED_RATES, table_grid

_logger = logging.getLogger(__name__)

DEFAULT_REPS = 10000

MODEL_KINDS = ('I', 'II')
DISTRIBUTIONS = ('gamma', 'gaussian')
TEST_NAMES = ('ml', 'hn')

# Gamma(shape 4, rate 2) has mean 2, variance 1 and fourth cumulant 6 / 4
GAMMA_SHAPE = 4.0
GAMMA_RATE = 2.0
FOURTH_CUMULANTS = {'gamma': 6.0 / GAMMA_SHAPE, 'gaussian': 0.0}

_SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class SimulationModel:
    """Two-population design with diagonal spiked covariance diag(p^2, 1, ..., 1)"""
    kind: str
    n1: int
    n2: int
    p: int
    a: float = 0.0
    distribution: str = 'gamma'

    def __post_init__(self):
        self._check_design()

    def _check_design(self):
        """Validate model kind, sizes and the Model I scale"""
        if self.kind not in MODEL_KINDS:
            raise InputError('Model kind must be one of %s, got %r' % (', '.join(MODEL_KINDS), self.kind))
        if self.distribution not in DISTRIBUTIONS:
            raise InputError('Distribution must be one of %s, got %r'
                             % (', '.join(DISTRIBUTIONS), self.distribution))
        if self.n1 < 2 or self.n2 < 2 or self.p < 1:
            raise InputError('Need n1, n2 >= 2 and p >= 1, got (%d, %d, %d)' % (self.n1, self.n2, self.p))
        if self.kind == 'II' and self.a != 0.0:
            raise InputError('Parameter a only applies to Model I')
        if 1.0 + self.a / self.n1 <= 0.0:
            raise InputError('Model I scale 1 + a/n1 must be positive, got a=%r' % self.a)

    @property
    def beta_true(self):
        return FOURTH_CUMULANTS[self.distribution]

    @property
    def label(self):
        if self.kind == 'I':
            return 'ModelI(a=%g) (%d, %d, %d)' % (self.a, self.n1, self.n2, self.p)
        return 'ModelII (%d, %d, %d)' % (self.n1, self.n2, self.p)

    def scale(self, t):
        """Diagonal of Sigma_t^(1/2) for sample t"""
        root = np.ones(self.p)
        root[0] = float(self.p)
        if self.kind == 'I' and t == 1:
            root *= np.sqrt(1.0 + self.a / self.n1)
        return root

    def location(self, t):
        """Mean vector mu_t for sample t"""
        mu = np.zeros(self.p)
        if self.kind == 'II':
            mu[0] = 1.0
            mu[1:] = self.p if t == 1 else self.p + 1
        return mu


@dataclass(frozen=True)
class ScenarioResult:
    """Rejection rates of one scenario over a batch of replications"""
    model: SimulationModel
    rejection_rate_ml: Optional[float]
    rejection_rate_hn: Optional[float]
    replications: int
    seed: int
    runtime_ms: int
    alpha: float
    alternative: str = 'two-sided'
    z_scores: Optional[tuple] = None


@dataclass(frozen=True)
class TableCell:
    """One cell of a reproduced size or power table"""
    table: int
    regime: str
    n1: int
    n2: int
    p: int
    a: float
    result: ScenarioResult
    published_ml: Optional[float]
    published_hn: Optional[float]


@dataclass(frozen=True)
class NullSummary:
    """Moments of standardized scores and their sup-distance to Phi"""
    count: int
    mean: float
    variance: float
    sup_distance: float


@dataclass(frozen=True)
class NullHistogram:
    z_scores: tuple
    summary: NullSummary
    result: ScenarioResult


@dataclass(frozen=True)
class PowerPoint:
    a: float
    result: ScenarioResult


def _check_seed(seed):
    if seed is None:
        raise InputError('A seed is required for reproducible simulation')
    if not 0 <= int(seed) < _SEED_LIMIT:
        raise InputError('Seed must be a 64-bit unsigned integer, got %r' % seed)
    return int(seed)


def split_seed(seed, index):
    """
    Counter-based child seed for stream ``index`` of ``seed``

    Child seeds depend only on (seed, index), never on how work is
    scheduled, so parallel runs reproduce serial runs exactly.
    """
    sequence = np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=(int(index),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _draw(rng, distribution, size):
    """Standardized draws: mean 0, variance 1"""
    if distribution == 'gamma':
        return rng.gamma(GAMMA_SHAPE, 1.0 / GAMMA_RATE, size=size) - GAMMA_SHAPE / GAMMA_RATE
    return rng.standard_normal(size=size)


def standardized_gamma_stream(seed, chunk_size=4096):
    """
    Endless stream of Gamma(4, rate 2) - 2 variates

    Args:
        seed: 64-bit seed; the stream is a deterministic function of it
        chunk_size: number of variates drawn per refill

    Yields:
        float
    """
    rng = np.random.default_rng(_check_seed(seed))
    while True:
        for value in _draw(rng, 'gamma', chunk_size):
            yield float(value)


def generate_pair(model, rep_seed):
    """
    Draw both samples of a model, N_t = n_t + 1 observations each

    Returns:
        tuple: (SampleSet, SampleSet)
    """
    rng = np.random.default_rng(_check_seed(rep_seed))
    samples = []
    for t, n_t in ((1, model.n1), (2, model.n2)):
        z = _draw(rng, model.distribution, (n_t + 1, model.p))
        samples.append(SampleSet(z * model.scale(t) + model.location(t), 'sample%d' % t))
    return samples[0], samples[1]


def _replicate(task):
    """Run the requested tests on one replication"""
    model, rep, rep_seed, cfg, tests = task
    try:
        s1, s2 = generate_pair(model, rep_seed)
        ml = run_ml_test(s1, s2, cfg) if 'ml' in tests else None
        hn = run_hn_test(s1, s2, cfg) if 'hn' in tests else None
    except SimultaneousTestError as e:
        raise ReplicationError(rep, rep_seed, str(e), e.exit_code) from e
    _logger.debug('rep %d: ml=%s hn=%s', rep, ml and ml.reject, hn and hn.reject)
    return (
        ml.reject if ml else False,
        hn.reject if hn else False,
        ml.z_score if ml else float('nan'),
    )


def run_replications(model, reps, seed, cfg, tests=TEST_NAMES, threads=1, keep_z=False):
    """
    Monte Carlo rejection rates of the requested tests for one model

    Replication r draws its data from split_seed(seed, r) and uses the
    model's true fourth cumulant unless cfg asks for estimation. Results
    are identical for any number of worker processes.

    Args:
        model: SimulationModel
        reps: number of replications, at least 1
        seed: 64-bit master seed
        cfg: TestConfig; cfg.alternative selects the ML rejection rule
        tests: subset of ('ml', 'hn')
        threads: worker processes
        keep_z: retain the ML z-scores in replication order

    Returns:
        ScenarioResult
    """
    if reps < 1:
        raise InputError('Number of replications must be at least 1, got %d' % reps)
    if threads < 1:
        raise InputError('Number of workers must be at least 1, got %d' % threads)
    tests = tuple(name for name in TEST_NAMES if name in tests)
    if not tests:
        raise InputError('At least one of %s must be requested' % ', '.join(TEST_NAMES))
    seed = _check_seed(seed)
    if cfg.moment_mode == 'known':
        cfg = replace(cfg, beta1=model.beta_true, beta2=model.beta_true)
    if 'ml' in tests and cfg.warn_near_one:
        if is_near_unity(model.p / model.n1, model.p / model.n2):
            _logger.warning('%s: dimension ratio near 1 (y1=%.4f, y2=%.4f); the null variance is inflated',
                            model.label, model.p / model.n1, model.p / model.n2)
        cfg = replace(cfg, warn_near_one=False)

    tasks = [(model, rep, split_seed(seed, rep), cfg, tests) for rep in range(reps)]
    _logger.info('Running %d replications of %s with %d worker(s)', reps, model.label, threads)
    started = time.perf_counter()
    try:
        if threads == 1 or reps == 1:
            outcomes = [_replicate(task) for task in tasks]
        else:
            with Pool(processes=min(threads, reps)) as pool:
                outcomes = pool.map(_replicate, tasks, chunksize=max(1, reps // (4 * threads)))
    except ReplicationError as e:
        _logger.error('Simulation of %s aborted: %s', model.label, str(e))
        raise
    runtime_ms = int(round(1000.0 * (time.perf_counter() - started)))

    ml_count = sum(1 for ml_reject, _hn, _z in outcomes if ml_reject)
    hn_count = sum(1 for _ml, hn_reject, _z in outcomes if hn_reject)
    result = ScenarioResult(
        model=model,
        rejection_rate_ml=ml_count / reps if 'ml' in tests else None,
        rejection_rate_hn=hn_count / reps if 'hn' in tests else None,
        replications=reps,
        seed=seed,
        runtime_ms=runtime_ms,
        alpha=cfg.alpha,
        alternative=cfg.alternative,
        z_scores=tuple(z for _ml, _hn, z in outcomes) if keep_z and 'ml' in tests else None,
    )
    _logger.info('%s: ml=%s hn=%s in %d ms', model.label, result.rejection_rate_ml,
                 result.rejection_rate_hn, runtime_ms)
    return result


def reproduce_table(table, reps, seed, cfg, distribution='gamma', threads=1):
    """
    Re-estimate every cell of a size or power table

    Cell i uses split_seed(seed, i) as its master seed. The published ML
    rates follow the lower-tail rule, so pass TABLE_ALTERNATIVE in cfg to
    compare against them.

    Returns:
        list of TableCell in published order
    """
    seed = _check_seed(seed)
    cells = []
    for index, (regime, kind, n1, n2, p, a) in enumerate(table_grid(table)):
        model = SimulationModel(kind, n1, n2, p, a, distribution)
        try:
            result = run_replications(model, reps, split_seed(seed, index), cfg, TEST_NAMES, threads)
        except ReplicationError as e:
            raise e.in_cell('table %d %s (%d, %d, %d, a=%g)' % (table, regime, n1, n2, p, a)) from e
        published = PUBLISHED_RATES[table].get((n1, n2, p, a), (None, None))
        cells.append(TableCell(table, regime, n1, n2, p, a, result, published[0], published[1]))
    return cells


def summarize_z(z_scores):
    """Mean, variance and Kolmogorov sup-distance of scores to N(0, 1)"""
    z = np.asarray(z_scores, dtype=np.float64)
    if z.size < 2:
        raise InputError('At least 2 scores are needed for a summary, got %d' % z.size)
    return NullSummary(
        count=int(z.size),
        mean=float(z.mean()),
        variance=float(z.var(ddof=1)),
        sup_distance=float(kstest(z, 'norm').statistic),
    )


def null_histogram(n1, n2, p, reps, seed, cfg, distribution='gamma', threads=1):
    """
    Standardized ML scores under the null (Model I, a = 0)

    Returns:
        NullHistogram with the scores in replication order and their summary
    """
    model = SimulationModel('I', n1, n2, p, 0.0, distribution)
    result = run_replications(model, reps, seed, cfg, ('ml',), threads, keep_z=True)
    return NullHistogram(z_scores=result.z_scores, summary=summarize_z(result.z_scores), result=result)


def power_curve(n1, n2, p, a_values, reps, seed, cfg, distribution='gamma', threads=1):
    """
    Rejection rates of both tests along a grid of Model I scales a

    Point i uses split_seed(seed, i); a = 0 gives the empirical size.
    """
    seed = _check_seed(seed)
    points = []
    for index, a in enumerate(a_values):
        model = SimulationModel('I', n1, n2, p, float(a), distribution)
        points.append(PowerPoint(float(a), run_replications(model, reps, split_seed(seed, index), cfg,
                                                            TEST_NAMES, threads)))
    return points
