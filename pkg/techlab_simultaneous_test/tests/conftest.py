import numpy as np
import pandas as pd
import pytest

from techlab_simultaneous_test.models.sample import SampleSet


def gamma_sample(rng, size, p, label='sample'):
    """Standardized Gamma(4, rate 2) - 2 observations"""
    return SampleSet(rng.gamma(4.0, 0.5, size=(size, p)) - 2.0, label)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def gamma_pair(rng):
    """Null Gamma samples with n1 = 25, n2 = 35 degrees of freedom in p = 20"""
    return gamma_sample(rng, 26, 20, 'sample1'), gamma_sample(rng, 36, 20, 'sample2')


@pytest.fixture
def write_csv(tmp_path):
    """Write a matrix as CSV, optionally with a header line, and return its path"""
    def _write(name, matrix, header=False):
        path = tmp_path / name
        frame = pd.DataFrame(np.asarray(matrix))
        if header:
            frame.columns = ['x%d' % (j + 1) for j in range(frame.shape[1])]
        frame.to_csv(path, index=False, header=header, float_format='%.17g')
        return path
    return _write
