import argparse
import csv
import io
import sys

from motive_periods import constants as c
from motive_periods.errors import MotivePeriodsError, InputError
from motive_periods.galois.dimension import dim_galois, is_deficient, case_table, CASE_TABLE_HEADER
from motive_periods.galois.profile import DependenceProfile
from motive_periods.galois.report import conjecture_report, validate_profile
from motive_periods.one_motive import OneMotiveSpec, full_period_matrix, period_generators, generator_count
from motive_periods.utils import setup_logger, load_json, dumps_json, write_text, complex_to_json
from motive_periods.verification import VerificationRunner

"""
Command line entry point:

    motive-periods periods --input motive.json [--format csv]
    motive-periods verify [--input motive.json] [--num-curves 10]
    motive-periods galois-dim --input motive.json [--profile profile.json]
    motive-periods case-table [--format csv]
    motive-periods conjecture --input motive.json [--profile profile.json]
    motive-periods validate-profile --input motive.json [--profile profile.json]

Exit status 0 on success, 2 on schema errors, 3 on numeric failures or failed checks.
"""

logger = setup_logger('motive-periods')

COMMANDS = ['periods', 'verify', 'galois-dim', 'case-table', 'conjecture', 'validate-profile']
CSV_COMMANDS = ['periods', 'case-table']

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class CommandRequest:
    def __init__(self, command, input_path=None, output_path=None, profile_path=None, output_format='json',
                 tol_analytic=c.TOL_ANALYTIC, tol_quadrature=c.TOL_QUADRATURE, num_curves=10, seed=None):
        self.command = command
        self.input_path = input_path
        self.output_path = output_path
        self.profile_path = profile_path
        self.output_format = output_format
        self.tol_analytic = tol_analytic
        self.tol_quadrature = tol_quadrature
        self.num_curves = num_curves
        self.seed = seed

    @staticmethod
    def from_args(args):
        return CommandRequest(args.command, args.input, args.output, args.profile, args.format,
                              args.tol_analytic, args.tol_quadrature, args.num_curves, args.seed)

    def __repr__(self):
        return 'CommandRequest({}, input={}, format={})'.format(self.command, self.input_path, self.output_format)


def _load_input(request, required=True):
    if request.input_path is None:
        if required:
            raise InputError('{} needs a motive file'.format(request.command), '--input')
        return None, None
    data = load_json(request.input_path)
    if not isinstance(data, dict):
        raise InputError('expected a JSON object', request.input_path)
    motive_data = data.get('motive', data)
    return OneMotiveSpec.from_json(motive_data), data


def _load_profile(request, data):
    if request.profile_path is not None:
        return DependenceProfile.from_json(load_json(request.profile_path))
    if data is not None and 'profile' in data:
        return DependenceProfile.from_json(data['profile'])
    return DependenceProfile.generic()


def _csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(['{:.17g}'.format(x) if isinstance(x, float) else x for x in row])
    return buffer.getvalue()


def _periods(request):
    motive, _ = _load_input(request)
    matrix = full_period_matrix(motive)
    if request.output_format == 'csv':
        header = ['row'] + [part for label in matrix.col_labels for part in (label + '.re', label + '.im')]
        rows = [[label] + values for label, values in zip(matrix.row_labels, matrix.to_rows())]
        return _csv_text(header, rows), EXIT_OK
    result = {}
    result['motive'] = {'r': motive.r, 's': motive.s, 'n': motive.n}
    result['curves'] = [curve.describe() for curve in motive.curves]
    result['matrix'] = matrix.to_json()
    result['generator_count'] = generator_count(motive.r, motive.s, motive.n) if motive.n else None
    result['generators'] = [{'label': label, 'value': complex_to_json(value)}
                            for label, value in period_generators(motive)]
    return dumps_json(result), EXIT_OK


def _verify(request):
    motive, _ = _load_input(request, required=False)
    runner = VerificationRunner(motive, tol_analytic=request.tol_analytic, tol_quadrature=request.tol_quadrature,
                                num_curves=request.num_curves, seed=request.seed)
    results = runner.run()
    for result in results:
        print(result.summary_line(), file=sys.stderr)
    passed = all(result.passed for result in results)
    report = {}
    report['seed'] = runner.seed
    report['passed'] = passed
    report['suites'] = [result.to_json() for result in results]
    return dumps_json(report), EXIT_OK if passed else EXIT_NUMERIC


def _galois_dim(request):
    motive, data = _load_input(request)
    profile = _load_profile(request, data)
    result = dim_galois(motive, profile).to_json()
    result['deficient'] = is_deficient(motive, profile)
    return dumps_json(result), EXIT_OK


def _case_table(request):
    rows = case_table()
    if request.output_format == 'csv':
        return _csv_text(CASE_TABLE_HEADER, [row.to_row() for row in rows]), EXIT_OK
    return dumps_json({'rows': [row.to_json() for row in rows]}), EXIT_OK


def _conjecture(request):
    motive, data = _load_input(request)
    return dumps_json(conjecture_report(motive, _load_profile(request, data))), EXIT_OK


def _validate_profile(request):
    motive, data = _load_input(request)
    entries = validate_profile(motive, _load_profile(request, data))
    flagged = sum(1 for entry in entries if entry['flagged'])
    result = {}
    result['relations'] = entries
    result['flagged'] = flagged
    return dumps_json(result), EXIT_OK if flagged == 0 else EXIT_NUMERIC


HANDLERS = {
    'periods': _periods,
    'verify': _verify,
    'galois-dim': _galois_dim,
    'case-table': _case_table,
    'conjecture': _conjecture,
    'validate-profile': _validate_profile,
}


def run(request):
    """ Runs one command, writes its output and returns the exit status """
    try:
        if request.output_format == 'csv' and request.command not in CSV_COMMANDS:
            raise InputError('csv output is only available for {}'.format(', '.join(CSV_COMMANDS)), '--format')
        text, status = HANDLERS[request.command](request)
    except InputError as e:
        logger.error('Invalid input: {}'.format(e))
        return EXIT_INPUT
    except MotivePeriodsError as e:
        logger.error('{} failed with {}: {}'.format(request.command, type(e).__name__, e))
        return EXIT_NUMERIC
    write_text(text, request.output_path)
    return status


def build_parser():
    parser = argparse.ArgumentParser(prog='motive-periods',
                                     description='Period matrices and motivic Galois dimensions of 1-motives')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--input', type=str, default=None, help='Motive JSON, optionally with a "profile" key')
    parser.add_argument('--profile', type=str, default=None, help='Dependence profile JSON')
    parser.add_argument('--output', type=str, default=None, help='Output file, stdout when omitted')
    parser.add_argument('--format', type=str, choices=['json', 'csv'], default='json')
    parser.add_argument('--tol-analytic', type=float, default=c.TOL_ANALYTIC)
    parser.add_argument('--tol-quadrature', type=float, default=c.TOL_QUADRATURE)
    parser.add_argument('--num-curves', type=int, default=10, help='Random curves per verification suite')
    parser.add_argument('--seed', type=int, default=None,
                        help='Seed for random verification points, defaults to ${}'.format(c.SEED_ENV_VAR))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(CommandRequest.from_args(args))


if __name__ == '__main__':
    sys.exit(main())
