"""Report documents: JSON machine form, plain-text human form, CSV table form."""
import hashlib
import json
import logging
import os
from dataclasses import asdict
from pathlib import Path

import jsonschema
import numpy as np
import pandas as pd

from .. import MANIFEST, __version__
from ..exceptions import InputError, InvariantError, OutputError
from .calibration import CenteringTerms, DimensionRatios, MomentParams
from .hn_test import HnIngredients
from .ml_test import TestReport

_logger = logging.getLogger(__name__)

TABLE_COLUMNS = ['n1', 'n2', 'p', 'a', 'test', 'reps', 'seed', 'rate']

SCHEMA_PATH = Path(__file__).resolve().parent.parent / 'data' / 'report_schema.json'


def file_digest(path):
    """SHA-256 hex digest of a file's bytes"""
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for block in iter(lambda: handle.read(1 << 16), b''):
            digest.update(block)
    return digest.hexdigest()


def _plain(value):
    """json.dumps fallback for numpy scalars and arrays"""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError('Object of type %s is not JSON serializable' % type(value).__name__)


def report_to_dict(report):
    """Field-for-field dictionary of a TestReport"""
    doc = asdict(report)
    doc['warnings'] = list(report.warnings)
    if report.ingredients is not None:
        doc['ingredients']['frobenius_hat'] = list(report.ingredients.frobenius_hat)
        doc['ingredients']['fourth_power'] = list(report.ingredients.fourth_power)
    return doc


def report_from_dict(doc):
    """Rebuild a TestReport from its dictionary form"""
    try:
        fields = dict(doc)
        if fields.get('centering') is not None:
            fields['centering'] = CenteringTerms(**fields['centering'])
        if fields.get('ratios') is not None:
            fields['ratios'] = DimensionRatios(**fields['ratios'])
        if fields.get('betas_used') is not None:
            fields['betas_used'] = MomentParams(**fields['betas_used'])
        if fields.get('ingredients') is not None:
            ingredients = dict(fields['ingredients'])
            ingredients['frobenius_hat'] = tuple(ingredients['frobenius_hat'])
            ingredients['fourth_power'] = tuple(ingredients['fourth_power'])
            fields['ingredients'] = HnIngredients(**ingredients)
        fields['warnings'] = tuple(fields.get('warnings', ()))
        return TestReport(**fields)
    except (TypeError, KeyError) as e:
        raise InputError('Not a test report document: %s' % str(e)) from e


def build_test_document(reports, inputs):
    """
    Machine form of one or more test reports

    Args:
        reports: list of TestReport
        inputs: list of dicts with path, sha256, rows and columns of each data file

    Returns:
        dict matching data/report_schema.json
    """
    return validate_document({
        'tool': MANIFEST['name'],
        'version': __version__,
        'inputs': list(inputs),
        'reports': [report_to_dict(report) for report in reports],
    })


def dumps(doc):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline"""
    try:
        return json.dumps(doc, sort_keys=True, indent=2, default=_plain, allow_nan=False) + '\n'
    except ValueError as e:
        raise OutputError('Report holds a value JSON cannot represent: %s' % str(e)) from e


def load_schema():
    with open(SCHEMA_PATH, encoding='utf-8') as handle:
        return json.load(handle)


def validate_document(doc):
    """
    Check a test document against data/report_schema.json

    The document is validated in its serialized form, so numpy scalars and
    tuples are checked as the JSON they become.
    """
    validator = jsonschema.Draft7Validator(load_schema())
    errors = sorted(validator.iter_errors(json.loads(dumps(doc))),
                    key=lambda error: [str(part) for part in error.path])
    if errors:
        first = errors[0]
        location = '/'.join(str(part) for part in first.path) or '<root>'
        _logger.error('Report document fails its schema at %s: %s', location, first.message)
        raise InvariantError('Report document fails its schema at %s: %s' % (location, first.message))
    return doc


def render_text(report):
    """Aligned plain-text summary of a TestReport"""
    title = 'Modified likelihood ratio (ML) test' if report.test == 'ml' else 'L2-norm-based (HN) test'
    rows = [
        ('statistic', '%.6f' % report.statistic_L),
        ('z score', '%.6f' % report.z_score),
        ('p-value', '%.6g' % report.p_value),
        ('alpha', '%g' % report.alpha),
        ('alternative', report.alternative),
        ('decision', 'reject H0' if report.reject else 'do not reject H0'),
    ]
    if report.test == 'ml':
        ratios = report.ratios
        rows[1:1] = [
            ('ZH', '%.6f' % report.zh),
            ('T_n', '%.6f' % report.t_n),
        ]
        rows.extend([
            ('(n1, n2, p)', '(%d, %d, %d)' % (ratios.n1, ratios.n2, ratios.p)),
            ('y1, y2, r_n', '%.4f, %.4f, %.4f' % (ratios.y1, ratios.y2, ratios.r_n)),
            ('l_n, mu_n, nu_n', '%.6f, %.6f, %.6f' % (report.centering.l_n, report.centering.mu_n,
                                                     report.centering.nu_n)),
            ('beta1, beta2', '%.4f, %.4f (%s)' % (report.betas_used.beta1, report.betas_used.beta2,
                                                  report.betas_used.source)),
        ])
    else:
        ingredients = report.ingredients
        rows.extend([
            ('||delta||^2 hat', '%.6g' % ingredients.delta2_hat),
            ('||Delta||_F^2 hat', '%.6g' % ingredients.frob2_hat),
        ])
    width = max(len(label) for label, _value in rows)
    lines = [title, '-' * len(title)]
    lines.extend('%s  %s' % (label.ljust(width), value) for label, value in rows)
    lines.extend('warning: %s' % text for text in report.warnings)
    return '\n'.join(lines) + '\n'


def scenario_rows(result):
    """CSV rows (as dicts) of one ScenarioResult, one per test"""
    model = result.model
    rows = []
    for test, rate in (('ml', result.rejection_rate_ml), ('hn', result.rejection_rate_hn)):
        if rate is None:
            continue
        rows.append({
            'n1': model.n1,
            'n2': model.n2,
            'p': model.p,
            'a': model.a,
            'test': test,
            'reps': result.replications,
            'seed': result.seed,
            'rate': rate,
        })
    return rows


def rows_frame(rows):
    """DataFrame with the fixed table column order"""
    frame = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    frame['seed'] = frame['seed'].astype('uint64')
    return frame


def _ensure_parent(path):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError('Cannot create directory for %s: %s' % (path, str(e))) from e


def prepare_directory(path):
    """
    Create an output directory and check that it accepts files

    Called before long simulations so a bad --out fails before any work.
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        _logger.error('Cannot use %s as output directory: %s', path, str(e))
        raise OutputError('Cannot create output directory %s: %s' % (path, str(e))) from e
    if not os.access(path, os.W_OK | os.X_OK):
        _logger.error('Output directory %s is not writable', path)
        raise OutputError('Output directory %s is not writable' % path)
    return path


def write_text(path, text):
    """Write text to a file, mapping I/O failures to OutputError"""
    _ensure_parent(path)
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    except OSError as e:
        _logger.error('Failed to write %s: %s', path, str(e))
        raise OutputError('Cannot write %s: %s' % (path, str(e))) from e
    _logger.info('Wrote %s', path)


def write_json(path, doc):
    write_text(path, dumps(doc))


def write_table(path, rows):
    """Write table rows as CSV with columns n1,n2,p,a,test,reps,seed,rate"""
    write_text(path, rows_frame(rows).to_csv(index=False, lineterminator='\n', float_format='%.10g'))
