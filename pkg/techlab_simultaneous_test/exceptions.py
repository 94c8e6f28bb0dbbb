"""Error classes raised by the simultaneous test package.

The split follows how failures are reported to a caller: ``UserError`` for
input the caller can fix, ``ValidationError`` for data that violates the
assumptions of the asymptotic theory. Every class carries the process exit
code the CLI uses for it.
"""


class SimultaneousTestError(Exception):
    """Base class for all package errors"""
    exit_code = 1


class UserError(SimultaneousTestError):
    """Invalid input supplied by the caller"""
    exit_code = 2


class InputError(UserError):
    """Malformed data: non-finite entries, ragged files, bad flags"""


class DegenerateSampleError(UserError):
    """Sample with fewer than two observations"""


class SampleSizeError(UserError):
    """Sample too small for an unbiased estimator"""


class ValidationError(SimultaneousTestError):
    """Data violates the assumptions the test is calibrated under"""
    exit_code = 3


class DimensionError(ValidationError):
    """Dimension too large for the pooled scatter to be invertible"""


class AssumptionError(ValidationError):
    """A dimension ratio sits exactly on a forbidden value"""


class ConditioningError(ValidationError):
    """Pooled scatter is numerically singular"""


class DegenerateDataError(ValidationError):
    """Rank-deficient or otherwise degenerate data"""


class CalibrationError(ValidationError):
    """Null calibration produced an unusable variance"""


class InvariantError(SimultaneousTestError):
    """Internal invariant broken; indicates a bug rather than bad input"""
    exit_code = 1


class OutputError(SimultaneousTestError):
    """Report or table could not be written"""
    exit_code = 4


class ReplicationError(SimultaneousTestError):
    """Failure inside one Monte Carlo replication.

    Keeps everything needed to replay the failing replication alone.
    All constructor arguments are stored in ``args`` so the error survives
    pickling across worker processes.
    """

    def __init__(self, rep, rep_seed, detail, exit_code=1, cell=None):
        super().__init__(rep, rep_seed, detail, exit_code, cell)
        self.rep = rep
        self.rep_seed = rep_seed
        self.detail = detail
        self.exit_code = exit_code
        self.cell = cell

    def __str__(self):
        where = 'replication %s (rep_seed=%s)' % (self.rep, self.rep_seed)
        if self.cell:
            where = '%s in cell %s' % (where, self.cell)
        return '%s failed: %s' % (where, self.detail)

    def in_cell(self, cell):
        """Return a copy annotated with a grid cell label"""
        return ReplicationError(self.rep, self.rep_seed, self.detail, self.exit_code, cell)
