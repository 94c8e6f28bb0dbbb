import logging
from pathlib import Path

import pandas as pd

from ..exceptions import InputError
from ..models.report import file_digest
from ..models.sample import SampleSet

_logger = logging.getLogger(__name__)


def _has_header(first_row):
    """A first line with any non-numeric field is a header"""
    return bool(pd.to_numeric(first_row, errors='coerce').isna().any())


def load_sample(path, label):
    """
    Read a comma-separated observation matrix, rows are observations

    Args:
        path: CSV file, UTF-8, optional header line of column names
        label: sample label used in messages

    Returns:
        tuple: (SampleSet, dict with label, path, sha256, rows and columns)
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, header=None, sep=',', encoding='utf-8', dtype=str,
                            skip_blank_lines=True, skipinitialspace=True)
    except FileNotFoundError as e:
        raise InputError('%s: file not found: %s' % (label, path)) from e
    except pd.errors.EmptyDataError as e:
        raise InputError('%s: file is empty: %s' % (label, path)) from e
    except pd.errors.ParserError as e:
        raise InputError('%s: rows have different numbers of columns in %s: %s' % (label, path, str(e))) from e
    except (OSError, UnicodeDecodeError) as e:
        raise InputError('%s: cannot read %s: %s' % (label, path, str(e))) from e

    if not frame.empty and _has_header(frame.iloc[0]):
        _logger.debug('%s: treating first line of %s as header', label, path)
        frame = frame.iloc[1:]

    values = frame.apply(lambda column: pd.to_numeric(column.str.strip(), errors='coerce'))
    missing = values.isna().to_numpy()
    if missing.any():
        rows, cols = missing.nonzero()
        row, col = int(rows[0]), int(cols[0])
        raise InputError('%s: missing or non-numeric value in %s at data row %d, column %d '
                         '(rows must all have the same number of numeric fields)'
                         % (label, path, row + 1, col + 1))

    sample = SampleSet(values.to_numpy(dtype='float64'), label)
    meta = {
        'label': label,
        'path': str(path),
        'sha256': file_digest(path),
        'rows': sample.size,
        'columns': sample.dim,
    }
    _logger.info('Loaded %s: %d observations of %d variables from %s', label, sample.size, sample.dim, path)
    return sample, meta
