import json
import os

import pytest

from motive_periods.cli import main, build_parser, CommandRequest, EXIT_OK, EXIT_INPUT, EXIT_NUMERIC


def _run(tmpdir, argv):
    output = os.path.join(str(tmpdir), 'out.txt')
    status = main(argv + ['--output', output])
    text = None
    if os.path.exists(output):
        with open(output) as f:
            text = f.read()
    return status, text


def test_parser_defaults():
    args = build_parser().parse_args(['case-table'])
    request = CommandRequest.from_args(args)
    assert request.output_format == 'json'
    assert request.input_path is None and request.seed is None


def test_case_table(tmpdir):
    status, text = _run(tmpdir, ['case-table'])
    assert status == EXIT_OK
    rows = json.loads(text)['rows']
    assert len(rows) == 6
    assert rows[-1]['dim_galois_non_cm'] == 9
    status, text = _run(tmpdir, ['case-table', '--format', 'csv'])
    lines = text.strip().split('\n')
    assert lines[0] == 'case,dim_UR,dim_galois_cm,dim_galois_non_cm,count_cm,count_non_cm'
    assert len(lines) == 7


def test_periods(tmpdir, sample_path):
    status, text = _run(tmpdir, ['periods', '--input', sample_path('motive_r1n1s1.json')])
    assert status == EXIT_OK
    result = json.loads(text)
    assert result['motive'] == {'r': 1, 's': 1, 'n': 1}
    assert len(result['matrix']['entries']) == 4
    assert result['matrix']['row_labels'][0] == 'beta_11'
    assert result['generator_count'] == 11


def test_periods_csv(tmpdir, sample_path):
    status, text = _run(tmpdir, ['periods', '--input', sample_path('motive_r1n1s1.json'), '--format', 'csv'])
    assert status == EXIT_OK
    lines = text.strip().split('\n')
    assert lines[0].startswith('row,df_11.re,df_11.im,omega_1.re')
    assert len(lines) == 5
    assert lines[-1].split(',')[0] == 'delta_1'
    assert len(lines[1].split(',')) == 9


def test_galois_dim_uses_the_embedded_profile(tmpdir, sample_path):
    status, text = _run(tmpdir, ['galois-dim', '--input', sample_path('motive_r1n1s1.json')])
    assert status == EXIT_OK
    result = json.loads(text)
    assert result['dim_total'] == 9
    assert result['deficient'] is False
    status, text = _run(tmpdir, ['galois-dim', '--input', sample_path('motive_r1n1s1.json'),
                                 '--profile', sample_path('profile_p_torsion.json')])
    assert json.loads(text)['dim_total'] == 7


def test_conjecture(tmpdir, sample_path):
    status, text = _run(tmpdir, ['conjecture', '--input', sample_path('motive_r1n1s1.json')])
    assert status == EXIT_OK
    report = json.loads(text)
    assert report['lhs_count'] == 15
    assert report['rhs'] == 9
    assert report['shape'] == '1-motivic-elliptic'


def test_validate_profile(tmpdir, sample_path):
    status, text = _run(tmpdir, ['validate-profile', '--input', sample_path('motive_r1n1s1.json')])
    assert status == EXIT_OK
    assert json.loads(text)['flagged'] == 0
    status, text = _run(tmpdir, ['validate-profile', '--input', sample_path('motive_r1n1s1.json'),
                                 '--profile', sample_path('profile_p_torsion.json')])
    assert status == EXIT_NUMERIC
    assert json.loads(text)['flagged'] == 1


def test_schema_errors(tmpdir, sample_path):
    broken = tmpdir.join('broken.json')
    broken.write('{"curves": [')
    assert main(['periods', '--input', str(broken)]) == EXIT_INPUT
    assert main(['periods', '--input', str(tmpdir.join('missing.json'))]) == EXIT_INPUT
    assert main(['galois-dim']) == EXIT_INPUT
    assert main(['conjecture', '--input', sample_path('motive_r1n1s1.json'), '--format', 'csv']) == EXIT_INPUT
    singular = tmpdir.join('singular.json')
    singular.write(json.dumps({'curves': [{'g2': 3, 'g3': 1}], 'q_logs': [[]], 'p_logs': [[]], 'l_logs': [[]]}))
    assert main(['periods', '--input', str(singular)]) == EXIT_INPUT


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(['fold'])
