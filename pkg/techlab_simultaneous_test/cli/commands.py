"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 assumption violation, 4 output
failure, 1 anything else. Results go to stdout or --out files; logging and
warnings go to stderr.
"""
import argparse
import logging
import sys
from pathlib import Path

import pandas as pd

from .. import __version__
from ..exceptions import InputError, SimultaneousTestError
from ..models.calibration import dimension_ratios
from ..models.hn_test import run_hn_test
from ..models.ml_test import ALTERNATIVES, DEFAULT_ALPHA, TestConfig, run_ml_test
from ..models.report import (
    build_test_document,
    prepare_directory,
    render_text,
    rows_frame,
    scenario_rows,
    write_json,
    write_table,
    write_text,
)
from ..models.simulation import (
    DEFAULT_REPS,
    DISTRIBUTIONS,
    SimulationModel,
    null_histogram,
    power_curve,
    reproduce_table,
    run_replications,
)
from ..models.tables import TABLE_ALTERNATIVE, TABLES
from .data_files import load_sample

_logger = logging.getLogger(__name__)


def _sidecar(path, suffix):
    path = Path(path)
    return path.with_name('%s.%s.json' % (path.stem, suffix))


def _check_counts(args):
    """Validate replication and worker counts before any work starts"""
    if args.reps < 1:
        raise InputError('--reps must be at least 1, got %d' % args.reps)
    if args.threads < 1:
        raise InputError('--threads must be at least 1, got %d' % args.threads)


def _config(args):
    """TestConfig of the test command; known cumulants default to 0"""
    if args.estimate_moments:
        if args.beta1 is not None or args.beta2 is not None:
            raise InputError('--estimate-moments cannot be combined with --beta1/--beta2')
        return TestConfig(alpha=args.alpha, moment_mode='estimate', alternative=args.alternative)
    return TestConfig(alpha=args.alpha, beta1=args.beta1 or 0.0, beta2=args.beta2 or 0.0,
                      alternative=args.alternative)


def cmd_test(args):
    """Run the ML and/or HN test on two CSV files"""
    cfg = _config(args)
    s1, meta1 = load_sample(args.sample1, 'sample1')
    s2, meta2 = load_sample(args.sample2, 'sample2')
    if s1.dim != s2.dim:
        raise InputError('sample1 has %d columns but sample2 has %d columns' % (s1.dim, s2.dim))
    # both tests share the p < n1 + n2 precondition
    dimension_ratios(s1.size - 1, s2.size - 1, s1.dim)

    reports = []
    if args.test in ('ml', 'both'):
        reports.append(run_ml_test(s1, s2, cfg))
    if args.test in ('hn', 'both'):
        reports.append(run_hn_test(s1, s2, cfg))

    for report in reports:
        sys.stdout.write(render_text(report))

    if args.json:
        write_json(args.json, build_test_document(reports, [meta1, meta2]))
    if args.csv:
        frame = pd.DataFrame([{
            'test': report.test,
            'statistic': report.statistic_L,
            'z_score': report.z_score,
            'p_value': report.p_value,
            'reject': report.reject,
            'alpha': report.alpha,
        } for report in reports])
        write_text(args.csv, frame.to_csv(index=False, lineterminator='\n', float_format='%.12g'))
    return 0


def cmd_simulate(args):
    """Monte Carlo rejection rates for one Model I / Model II scenario"""
    _check_counts(args)
    cfg = TestConfig(alpha=args.alpha, alternative=args.alternative)
    model = SimulationModel(args.model, args.n1, args.n2, args.p, args.a, args.distribution)
    tests = ('ml', 'hn') if args.test == 'both' else (args.test,)
    result = run_replications(model, args.reps, args.seed, cfg, tests, args.threads)
    rows = scenario_rows(result)

    if args.out is None:
        sys.stdout.write(rows_frame(rows).to_csv(index=False, lineterminator='\n', float_format='%.10g'))
        return 0
    if Path(args.out).suffix.lower() == '.json':
        write_json(args.out, {
            'tool': 'simulate',
            'version': __version__,
            'model': args.model,
            'distribution': args.distribution,
            'alpha': args.alpha,
            'alternative': args.alternative,
            'rows': rows,
        })
    else:
        write_table(args.out, rows)
    write_json(_sidecar(args.out, 'meta'), {
        'seed': result.seed,
        'alternative': result.alternative,
        'runtime_ms': result.runtime_ms,
    })
    return 0


def cmd_reproduce(args):
    """Reproduce table 1, 2 or 3 into OUT/table_<k>.csv"""
    _check_counts(args)
    cfg = TestConfig(alpha=args.alpha, alternative=args.alternative)
    out = prepare_directory(args.out)
    cells = reproduce_table(args.table, args.reps, args.seed, cfg, args.distribution, args.threads)

    rows = []
    meta = []
    for cell in cells:
        rows.extend(scenario_rows(cell.result))
        meta.append({
            'regime': cell.regime,
            'n1': cell.n1,
            'n2': cell.n2,
            'p': cell.p,
            'a': cell.a,
            'seed': cell.result.seed,
            'runtime_ms': cell.result.runtime_ms,
            'published_ml': cell.published_ml,
            'published_hn': cell.published_hn,
        })

    write_table(out / ('table_%d.csv' % args.table), rows)
    write_json(out / ('table_%d.meta.json' % args.table), {
        'table': args.table,
        'seed': args.seed,
        'reps': args.reps,
        'alpha': args.alpha,
        'alternative': args.alternative,
        'distribution': args.distribution,
        'cells': meta,
    })
    return 0


def cmd_nulldist(args):
    """Write null z-scores (one per line) plus a summary JSON"""
    _check_counts(args)
    cfg = TestConfig(alpha=args.alpha, alternative=args.alternative)
    histogram = null_histogram(args.n1, args.n2, args.p, args.reps, args.seed, cfg, args.distribution,
                               args.threads)
    frame = pd.DataFrame({'z': histogram.z_scores})
    write_text(args.out, frame.to_csv(index=False, lineterminator='\n', float_format='%.17g'))
    summary = histogram.summary
    write_json(_sidecar(args.out, 'summary'), {
        'n1': args.n1,
        'n2': args.n2,
        'p': args.p,
        'reps': args.reps,
        'seed': args.seed,
        'distribution': args.distribution,
        'count': summary.count,
        'mean': summary.mean,
        'variance': summary.variance,
        'sup_distance': summary.sup_distance,
    })
    return 0


def _a_values(text):
    try:
        values = [float(item) for item in text.split(',') if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError('expected comma-separated numbers, got %r' % text) from e
    if not values:
        raise argparse.ArgumentTypeError('at least one value of a is required')
    return values


def cmd_power(args):
    """Power curve of both tests over a grid of Model I scales a"""
    _check_counts(args)
    cfg = TestConfig(alpha=args.alpha, alternative=args.alternative)
    points = power_curve(args.n1, args.n2, args.p, args.a_values, args.reps, args.seed, cfg,
                         args.distribution, args.threads)
    rows = [row for point in points for row in scenario_rows(point.result)]
    if args.out is None:
        sys.stdout.write(rows_frame(rows).to_csv(index=False, lineterminator='\n', float_format='%.10g'))
    else:
        write_table(args.out, rows)
    return 0


def _add_run_options(parser):
    parser.add_argument('--reps', type=int, default=DEFAULT_REPS, help='replications (default %(default)s)')
    parser.add_argument('--seed', type=int, required=True, help='64-bit master seed (required)')
    parser.add_argument('--alpha', type=float, default=DEFAULT_ALPHA, help='significance level')
    parser.add_argument('--threads', type=int, default=1, help='worker processes; never changes results')
    parser.add_argument('--distribution', choices=DISTRIBUTIONS, default='gamma',
                        help='standardized entry distribution (default %(default)s)')
    parser.add_argument('--alternative', choices=ALTERNATIVES, default='two-sided',
                        help='ML rejection rule (default %(default)s)')


def _add_sizes(parser):
    parser.add_argument('--n1', type=int, required=True, help='degrees of freedom of sample 1')
    parser.add_argument('--n2', type=int, required=True, help='degrees of freedom of sample 2')
    parser.add_argument('--p', type=int, required=True, help='dimension')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='techlab_simultaneous_test',
        description='Simultaneous test of mean vectors and covariance matrices for high-dimensional data')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('-q', '--quiet', action='store_true', help='errors only')
    commands = parser.add_subparsers(dest='command', required=True)

    test = commands.add_parser('test', help='test two CSV samples')
    test.add_argument('sample1', help='CSV file of sample 1 (rows are observations)')
    test.add_argument('sample2', help='CSV file of sample 2')
    test.add_argument('--alpha', type=float, default=DEFAULT_ALPHA, help='significance level')
    test.add_argument('--estimate-moments', action='store_true', help='estimate fourth cumulants from the data')
    test.add_argument('--beta1', type=float, help='known fourth cumulant of sample 1')
    test.add_argument('--beta2', type=float, help='known fourth cumulant of sample 2')
    test.add_argument('--test', choices=('ml', 'hn', 'both'), default='both')
    test.add_argument('--alternative', choices=ALTERNATIVES, default='two-sided',
                      help='ML rejection rule; HN is always upper-tailed (default %(default)s)')
    test.add_argument('--json', help='write the JSON report here')
    test.add_argument('--csv', help='write a one-row-per-test CSV summary here')
    test.set_defaults(handler=cmd_test)

    simulate = commands.add_parser('simulate', help='Monte Carlo size/power of one scenario')
    simulate.add_argument('--model', choices=('I', 'II'), required=True)
    _add_sizes(simulate)
    simulate.add_argument('--a', type=float, default=0.0, help='Model I covariance scale parameter')
    simulate.add_argument('--test', choices=('ml', 'hn', 'both'), default='both')
    _add_run_options(simulate)
    simulate.add_argument('--out', help='output file, .json or .csv (default: CSV on stdout)')
    simulate.set_defaults(handler=cmd_simulate)

    reproduce = commands.add_parser('reproduce', help='reproduce a size/power table')
    reproduce.add_argument('--table', type=int, choices=TABLES, required=True)
    _add_run_options(reproduce)
    reproduce.add_argument('--out', required=True, help='output directory')
    reproduce.set_defaults(alternative=TABLE_ALTERNATIVE)
    reproduce.set_defaults(handler=cmd_reproduce)

    nulldist = commands.add_parser('nulldist', help='null distribution of the ML score')
    _add_sizes(nulldist)
    _add_run_options(nulldist)
    nulldist.add_argument('--out', required=True, help='CSV file of z-scores')
    nulldist.set_defaults(handler=cmd_nulldist)

    power = commands.add_parser('power', help='power curve over Model I scales a')
    _add_sizes(power)
    power.add_argument('--a-values', type=_a_values, default=[0.0, 5.0, 10.0, 15.0, 20.0],
                       help='comma-separated values of a')
    _add_run_options(power)
    power.add_argument('--out', help='CSV output file (default: stdout)')
    power.set_defaults(handler=cmd_power)
    return parser


def main(argv=None):
    """Entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        return args.handler(args)
    except SimultaneousTestError as e:
        _logger.error('%s', str(e))
        return e.exit_code
