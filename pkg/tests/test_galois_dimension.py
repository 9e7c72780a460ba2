import itertools
from fractions import Fraction

import pytest

from motive_periods.errors import InputError
from motive_periods.galois.dimension import (GaloisDims, dim_reductive, dim_unipotent, dim_galois, is_deficient,
                                             case_table, case_motive, reference_curves, P_TORSION, CASE_PROFILES)
from motive_periods.galois.profile import DependenceProfile, AbelianRelation
from motive_periods.galois.quadratic_field import QuadraticFieldScalar
from motive_periods.galois.rank import rank_over_field, quotient_dimension
from motive_periods.galois.report import motive_shape, conjecture_lhs, conjecture_report, validate_profile
from motive_periods.one_motive import OneMotiveSpec
from motive_periods.utils import load_json


def _gaussian(a, b=0):
    return QuadraticFieldScalar(a, b, -4)


def test_quadratic_field_arithmetic():
    gamma = _gaussian(0, 1)
    assert gamma * gamma == _gaussian(-5, -4)
    assert gamma.numeric(complex(-2, 1)) == complex(-2, 1)
    x = _gaussian(Fraction(1, 2), 3)
    assert x * x.inverse() == 1
    assert (x / x) == _gaussian(1)
    assert x.norm() == x * x.conjugate()
    assert x - x == 0 and not (x - x)
    with pytest.raises(ZeroDivisionError):
        _gaussian(0).inverse()
    with pytest.raises(ValueError):
        QuadraticFieldScalar(1, 1)
    with pytest.raises(ValueError):
        QuadraticFieldScalar(1, 0, -5)
    with pytest.raises(ValueError):
        x + QuadraticFieldScalar(1, 0, -3)


def test_rank_over_q():
    assert rank_over_field([], 3) == 0
    assert rank_over_field([[1, 2], [2, 4]], 2) == 1
    assert rank_over_field([[1, 0, 0], [0, 1, 0], [1, 1, 0]], 3) == 2
    assert rank_over_field([[Fraction(1, 3), 1], [1, 3], [0, 1]], 2) == 2
    assert quotient_dimension([[1, -1, 0]], 3) == 2


def test_rank_over_quadratic_field():
    gamma = _gaussian(0, 1)
    one = _gaussian(1)
    assert rank_over_field([[one, gamma], [gamma, gamma * gamma]], 2) == 1
    assert rank_over_field([[one, gamma], [one, one]], 2) == 2


def test_rank_rejects_bad_relations():
    with pytest.raises(InputError):
        rank_over_field([[1, 2, 3]], 2)
    with pytest.raises(InputError):
        rank_over_field([[0.5, 1]], 2)


def test_dim_reductive(generic_motive, cm_motive, sample_path):
    assert dim_reductive(generic_motive) == 4
    assert dim_reductive(cm_motive) == 2
    wide = OneMotiveSpec.from_json(load_json(sample_path('motive_r2n2s3.json')))
    assert dim_reductive(wide) == 5
    torus = OneMotiveSpec.from_json(load_json(sample_path('torus_r2s1.json')))
    assert dim_reductive(torus) == 1


@pytest.mark.parametrize('n', range(1, 7))
def test_dim_reductive_over_every_cm_pattern(n, square_curve, generic_curve):
    for flags in itertools.product((True, False), repeat=n):
        curves = [square_curve if cm else generic_curve for cm in flags]
        motive = OneMotiveSpec(curves, [[]] * n, [[]] * n, [[]] * n, r=0, s=0)
        n2 = sum(flags)
        n1 = n - n2
        inverse_degrees = sum(Fraction(1, curve.endomorphism_degree) for curve in curves)
        assert 4 * inverse_degrees - n + 1 == 3 * n1 + n2 + 1
        assert dim_reductive(motive) == 3 * n1 + n2 + 1


def test_generic_dimensions(generic_motive, cm_motive):
    dims = dim_galois(generic_motive)
    assert (dims.dim_B, dims.dim_Z1, dims.dim_Z_over_Z1) == (2, 1, 0)
    assert dims.dim_UR == 5
    assert dims.dim_total == 9
    assert dim_galois(cm_motive).dim_total == 7
    assert dim_unipotent(cm_motive) == dim_unipotent(generic_motive)


def test_declared_relations(sample_path):
    wide = OneMotiveSpec.from_json(load_json(sample_path('motive_r2n2s3.json')))
    generic = dim_galois(wide)
    assert (generic.dim_B, generic.dim_Z1, generic.dim_Z_over_Z1) == (10, 6, 0)
    profile = DependenceProfile.from_json(load_json(sample_path('profile_cm_relation.json')))
    dims = dim_galois(wide, profile)
    assert (dims.dim_B, dims.dim_Z1, dims.dim_Z_over_Z1) == (9, 5, 0)
    assert dims.dim_total == 28


def test_gamma_coefficients_need_complex_multiplication(generic_motive):
    profile = DependenceProfile([AbelianRelation(0, [(0, 1), (1, 0)])])
    with pytest.raises(InputError):
        dim_galois(generic_motive, profile)
    with pytest.raises(InputError):
        dim_galois(generic_motive, DependenceProfile([AbelianRelation(2, [(1, 0), (0, 0)])]))
    with pytest.raises(InputError):
        dim_galois(generic_motive, DependenceProfile([AbelianRelation(0, [(1, 0)])]))


def test_pairing_relations_must_fit_the_pairs(generic_motive):
    with pytest.raises(InputError) as excinfo:
        dim_galois(generic_motive, DependenceProfile(pairing_relations=[[1, 1]]))
    assert excinfo.value.field_path == 'pairing_relations'
    with pytest.raises(InputError):
        dim_galois(generic_motive, DependenceProfile(pairing_kernel=[[True, False]]))


def test_torus_dimensions(sample_path):
    torus = OneMotiveSpec.from_json(load_json(sample_path('torus_r2s1.json')))
    dims = dim_galois(torus)
    assert (dims.dim_B, dims.dim_Z1, dims.dim_Z_over_Z1) == (0, 0, 2)
    assert dims.dim_total == 3
    with pytest.raises(InputError):
        dim_galois(torus, DependenceProfile(pairing_kernel=[[True], [False]]))
    assert dim_galois(torus, DependenceProfile(psi_relations=[[1, 1]])).dim_total == 2


def test_is_deficient(generic_motive, sample_path):
    assert not is_deficient(generic_motive)
    torsion = DependenceProfile(pairing_kernel=[[True]], psi_relations=[[1]])
    assert is_deficient(generic_motive, torsion)
    assert not is_deficient(generic_motive, DependenceProfile(pairing_kernel=[[True]]))
    torus = OneMotiveSpec.from_json(load_json(sample_path('torus_r2s1.json')))
    assert not is_deficient(torus)


def test_dims_check():
    with pytest.raises(InputError):
        GaloisDims(3, 0, 0).check(1, 1, 1)
    with pytest.raises(InputError):
        GaloisDims(0, 1, 1).check(1, 1, 1)
    assert GaloisDims(2, 1, 0).check(1, 1, 1)
    assert GaloisDims(2, 1, 0).dim_total is None


def test_case_table():
    rows = case_table()
    assert [row.name for row in rows] == [name for name, _ in CASE_PROFILES]
    got = [(row.dim_UR, row.cm_total, row.noncm_total) for row in rows]
    assert got == [(0, 2, 4), (1, 3, 5), (2, 4, 6), (3, 5, 7), (3, 5, 7), (5, 7, 9)]
    last = rows[-1].to_json()
    assert last['count_non_cm'] == 15 and last['count_cm'] == 13
    assert 'omega2' not in last['generators_cm']
    assert rows[0].to_row() == ['Q, R torsion', 0, 2, 4, 4, 6]


def test_case_motives_satisfy_their_relations():
    for curve in reference_curves():
        for _, profile in CASE_PROFILES:
            entries = validate_profile(case_motive(curve, profile), profile)
            assert not any(entry['flagged'] for entry in entries)


def test_profile_json():
    assert DependenceProfile.from_json(None).abelian_relations == []
    profile = DependenceProfile.from_json({'abelian_relations': [{'curve': 0, 'coeffs': [['1/2', 1], [3]]}],
                                           'pairing_kernel': [[False]], 'psi_relations': [[2]]})
    assert profile.abelian_relations[0].coeffs == [(Fraction(1, 2), Fraction(1)), (Fraction(3), 0)]
    again = DependenceProfile.from_json(profile.to_json())
    assert again.abelian_relations[0].coeffs == profile.abelian_relations[0].coeffs
    assert again.pairing_kernel == [[False]]


@pytest.mark.parametrize('data', [
    [],
    {'abelian_relations': [{'curve': True, 'coeffs': []}]},
    {'abelian_relations': [{'curve': 0, 'coeffs': [[1, 2, 3]]}]},
    {'abelian_relations': [{'curve': 0, 'coeffs': [['one', 0]]}]},
    {'pairing_kernel': [[1]]},
    {'pairing_relations': [['x']]},
    {'psi_relations': 'none'},
])
def test_profile_json_errors(data):
    with pytest.raises(InputError):
        DependenceProfile.from_json(data)


def test_motive_shapes(generic_motive, generic_curve, sample_path):
    assert motive_shape(generic_motive) == '1-motivic-elliptic'
    split = OneMotiveSpec([generic_curve], [[generic_curve.omega1]], [[0.3 + 0.2j]], [[[0.1j]]])
    assert motive_shape(split) == 'elliptico-toric'
    bare = OneMotiveSpec([generic_curve], [[]], [[0.3 + 0.2j]], [[]], s=0)
    assert motive_shape(bare) == '1-motivic-elliptic'
    assert motive_shape(OneMotiveSpec.from_json(load_json(sample_path('torus_r2s1.json')))) == 'schanuel'


def test_conjecture_report(generic_motive, cm_motive):
    report = conjecture_report(generic_motive)
    assert report['lhs_count'] == 15
    assert report['rhs'] == 9
    assert report['inequality_text'] == 'tran.deg_Q Q(lhs) >= 9'
    assert not report['deficient']
    labels = [entry['label'] for entry in report['lhs']]
    assert 'omega_12' in labels and '2*pi*i' not in labels
    cm_report = conjecture_report(cm_motive)
    assert cm_report['lhs_count'] == 13
    assert cm_report['rhs'] == 7
    assert 'omega_12' not in [entry['label'] for entry in cm_report['lhs']]


def test_split_components_contribute_their_toric_logarithm(generic_curve):
    split = OneMotiveSpec([generic_curve], [[generic_curve.omega1]], [[0.3 + 0.2j]], [[[0.1j]]])
    labels = [label for label, _ in conjecture_lhs(split)]
    assert 'l_111' in labels
    assert 'q_11' not in labels and 'x(Q_11)' not in labels


def test_schanuel_report(sample_path):
    torus = OneMotiveSpec.from_json(load_json(sample_path('torus_r2s1.json')))
    report = conjecture_report(torus)
    assert report['shape'] == 'schanuel'
    assert report['lhs_count'] == 5
    assert report['rhs'] == 3
    assert [entry['label'] for entry in report['lhs']] == ['R_11', 'R_12', '2*pi*i', 'l_11', 'l_12']


def test_validate_profile(generic_curve, generic_motive):
    assert validate_profile(generic_motive) == []
    profile = DependenceProfile([P_TORSION], [[True]])
    half = OneMotiveSpec([generic_curve], [[generic_motive.q_logs[0, 0]]], [[generic_curve.omega1 / 2]],
                         [[[0.4 + 0.3j]]])
    entries = validate_profile(half, profile)
    assert len(entries) == 1 and not entries[0]['flagged']
    assert entries[0]['residual'] <= 1e-12
    entries = validate_profile(generic_motive, profile)
    assert entries[0]['flagged']
    with pytest.raises(InputError):
        validate_profile(generic_motive, DependenceProfile([AbelianRelation(0, [(1, 0)])]))


def test_validate_profile_uses_complex_multiplication(cm_motive, square_curve):
    # p + gamma q vanishes for p = -gamma q
    gamma = square_curve.cm.gamma
    q = square_curve.lattice.point(0.57, 0.19)
    motive = OneMotiveSpec([square_curve], [[q]], [[-gamma * q]], [[[0.4 + 0.3j]]])
    profile = DependenceProfile([AbelianRelation(0, [(1, 0), (0, 1)])])
    entries = validate_profile(motive, profile)
    assert not entries[0]['flagged']
    assert validate_profile(cm_motive, profile)[0]['flagged']
