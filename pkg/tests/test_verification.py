import json

import pytest

from motive_periods.errors import PathError
from motive_periods.utils import dumps_json
from motive_periods.verification import VerificationRunner, SuiteResult, SUITES, random_curve, random_point


@pytest.fixture
def runner():
    return VerificationRunner(num_curves=2, legendre_curves=3, points_per_curve=4, q_per_curve=1,
                              rank_instances=25, seed=11)


def test_suite_result():
    result = SuiteResult.from_residuals('legendre', [1e-12, 3e-10], 1e-9)
    assert result.passed and result.checks == 2
    assert result.max_residual == 3e-10
    assert 'PASS' in result.summary_line()
    failed = SuiteResult.from_residuals('legendre', [1e-3], 1e-9)
    assert not failed.passed and 'FAIL' in failed.summary_line()
    assert json.loads(dumps_json(failed.to_json()))['name'] == 'legendre'
    assert SuiteResult.from_residuals('empty', [], 0.0).passed


def test_random_points_keep_their_distance(rng):
    curve = random_curve(rng)
    q = random_point(rng, curve)
    for _ in range(10):
        z = random_point(rng, curve, avoid=[q, -q], clearance=0.1)
        assert curve.distance_to_lattice(z - q) > 0
        assert curve.distance_to_lattice(z) > 0


@pytest.mark.parametrize('name', ['legendre', 'functional_equations', 'ode_residual', 'residues',
                                  'matrix_structure', 'oracle_coherence', 'case_table', 'rank_engine',
                                  'degenerations'])
def test_suites_pass(runner, name):
    result = getattr(runner, 'check_' + name)()
    assert result.name == name
    assert result.checks > 0
    assert result.passed, result.summary_line()


def test_quadrature_cycles():
    runner = VerificationRunner(num_curves=1, q_per_curve=1, seed=5)
    result = runner.check_quadrature_cycles()
    assert result.checks == 6
    assert result.passed, result.summary_line()


def test_runner_on_a_given_motive(generic_motive):
    runner = VerificationRunner(generic_motive, points_per_curve=3, seed=2)
    assert runner.curves() == generic_motive.curves
    assert runner.sample_motive(r=2, s=3, n=2) is generic_motive
    results = runner.run(['legendre', 'matrix_structure'])
    assert [result.name for result in results] == ['legendre', 'matrix_structure']
    assert all(result.passed for result in results)


def test_run_turns_errors_into_failed_suites(runner, monkeypatch):
    def broken():
        raise PathError('no room')
    monkeypatch.setattr(runner, 'check_rank_engine', broken)
    results = runner.run(['case_table', 'rank_engine'])
    assert results[0].passed
    assert not results[1].passed
    assert results[1].detail == 'no room'


def test_seed_comes_from_the_environment(monkeypatch):
    monkeypatch.setenv('MOTIVE_PERIODS_SEED', '123')
    assert VerificationRunner().seed == 123
    assert VerificationRunner(seed=4).seed == 4
    assert len(SUITES) == 10


def test_degenerations_cover_the_torus_and_split_extensions(runner):
    result = runner.check_degenerations()
    assert result.checks == 10
    assert result.passed, result.summary_line()
    assert result.detail is None
