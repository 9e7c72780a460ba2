from motive_periods.errors import InputError
from motive_periods.galois.profile import DependenceProfile, AbelianRelation
from motive_periods.galois.rank import rank_over_field
from motive_periods.lattice_core import CMDescriptor, curve_from_periods
from motive_periods.one_motive import OneMotiveSpec
from motive_periods.utils import setup_logger

"""
Dimension of the motivic Galois group of a 1-motive, split as

    dim Gal = dim reductive part + dim unipotent radical
    dim UR  = 2 dim B + dim Z1 + dim Z/Z1

with B the abelian part of the radical and Z its toric part, Z1 the piece coming from non-trivial
Weil pairings. All ranks are exact.
"""

logger = setup_logger('galois-dimension')


class GaloisDims:
    def __init__(self, dim_B, dim_Z1, dim_Z_over_Z1, dim_reductive=None):
        self.dim_B = int(dim_B)
        self.dim_Z1 = int(dim_Z1)
        self.dim_Z_over_Z1 = int(dim_Z_over_Z1)
        self.dim_reductive = None if dim_reductive is None else int(dim_reductive)

    def __repr__(self):
        return 'GaloisDims(B={}, Z1={}, Z/Z1={}, reductive={})'.format(
            self.dim_B, self.dim_Z1, self.dim_Z_over_Z1, self.dim_reductive)

    def __eq__(self, other):
        return isinstance(other, GaloisDims) and self.to_json() == other.to_json()

    @property
    def dim_UR(self):
        return 2 * self.dim_B + self.dim_Z1 + self.dim_Z_over_Z1

    @property
    def dim_total(self):
        if self.dim_reductive is None:
            return None
        return self.dim_reductive + self.dim_UR

    def check(self, r, s, n):
        if not 0 <= self.dim_B <= n * (r + s):
            raise InputError('dim B = {} outside [0, {}]'.format(self.dim_B, n * (r + s)), 'profile')
        if self.dim_Z1 < 0 or self.dim_Z_over_Z1 < 0 or self.dim_Z1 + self.dim_Z_over_Z1 > r * s:
            raise InputError('dim Z = {} + {} outside [0, {}]'.format(self.dim_Z1, self.dim_Z_over_Z1, r * s),
                             'profile')
        return True

    def to_json(self):
        data = {}
        data['dim_B'] = self.dim_B
        data['dim_Z1'] = self.dim_Z1
        data['dim_Z_over_Z1'] = self.dim_Z_over_Z1
        data['dim_UR'] = self.dim_UR
        data['dim_reductive'] = self.dim_reductive
        data['dim_total'] = self.dim_total
        return data


def dim_reductive(motive):
    """ 4 sum_j 1/dim_Q k_j - n + 1 for n >= 1; a bare torus gives G_m (1), the zero motive 0 """
    if motive.n == 0:
        return 1 if motive.s >= 1 else 0
    total = sum(4 // curve.endomorphism_degree for curve in motive.curves) - motive.n + 1
    non_cm = sum(1 for curve in motive.curves if not curve.is_cm)
    cm = motive.n - non_cm
    if total != 3 * non_cm + cm + 1:
        raise ValueError('reductive dimension {} disagrees with 3 n1 + n2 + 1'.format(total))
    return total


def _abelian_dimension(motive, profile):
    profile.check_curves(motive)
    width = motive.r + motive.s
    dim_B = 0
    for j, curve in enumerate(motive.curves):
        relations = profile.relations_for_curve(j, curve)
        try:
            rank = rank_over_field(relations, width)
        except InputError as e:
            raise InputError('curve {} has {} abelian symbols ({})'.format(j, width, e), 'abelian_relations')
        logger.debug('Curve {}: {} abelian relations of rank {}'.format(j, len(relations), rank))
        dim_B += width - rank
    return dim_B


def _toric_dimensions(motive, profile):
    inside, outside = profile.pair_symbols(motive)
    try:
        pairing_rank = rank_over_field(profile.pairing_relations, len(outside))
    except InputError as e:
        raise InputError('{} non kernel pairs ({})'.format(len(outside), e), 'pairing_relations')
    try:
        psi_rank = rank_over_field(profile.psi_relations, len(inside))
    except InputError as e:
        raise InputError('{} kernel pairs ({})'.format(len(inside), e), 'psi_relations')
    return len(outside) - pairing_rank, len(inside) - psi_rank


def dim_unipotent(motive, profile=None):
    """ GaloisDims of the unipotent radical, without the reductive part """
    profile = profile if profile is not None else DependenceProfile.generic()
    dim_B = _abelian_dimension(motive, profile)
    dim_Z1, dim_Z_over_Z1 = _toric_dimensions(motive, profile)
    dims = GaloisDims(dim_B, dim_Z1, dim_Z_over_Z1)
    dims.check(motive.r, motive.s, motive.n)
    return dims


def dim_galois(motive, profile=None):
    dims = dim_unipotent(motive, profile)
    dims.dim_reductive = dim_reductive(motive)
    logger.info('{}: {}'.format(motive, dims))
    return dims


def is_deficient(motive, profile=None):
    """ Every pairing trivial and no toric contribution left, i.e. the toric part Z vanishes """
    profile = profile if profile is not None else DependenceProfile.generic()
    kernel = profile.kernel_matrix(motive)
    if not all(all(row) for row in kernel):
        return False
    dims = dim_unipotent(motive, profile)
    return dims.dim_Z1 == 0 and dims.dim_Z_over_Z1 == 0


P_TORSION = AbelianRelation(0, [(2, 0), (0, 0)])
Q_TORSION = AbelianRelation(0, [(0, 0), (3, 0)])

CASE_PROFILES = [
    ('Q, R torsion', DependenceProfile([P_TORSION, Q_TORSION], [[True]], psi_relations=[[1]])),
    ('P, Q torsion', DependenceProfile([P_TORSION, Q_TORSION], [[True]])),
    ('R torsion', DependenceProfile([P_TORSION], [[True]], psi_relations=[[1]])),
    ('Q torsion', DependenceProfile([Q_TORSION], [[True]])),
    ('P torsion', DependenceProfile([P_TORSION], [[True]])),
    ('P, Q independent', DependenceProfile([], [[False]])),
]

CASE_GENERATORS = {
    'Q, R torsion': ['g2', 'g3', 'omega1', 'omega2', 'eta1', 'eta2'],
    'P, Q torsion': ['g2', 'g3', 'omega1', 'omega2', 'eta1', 'eta2', 'R', 'log R'],
    'R torsion': ['g2', 'g3', 'omega1', 'omega2', 'eta1', 'eta2', 'Q', 'q', 'zeta(q)'],
    'Q torsion': ['g2', 'g3', 'omega1', 'omega2', 'eta1', 'eta2', 'P', 'R', 'p', 'zeta(p)', 'log R'],
    'P torsion': ['g2', 'g3', 'omega1', 'omega2', 'eta1', 'eta2', 'Q', 'R', 'q', 'zeta(q)', 'log R'],
    'P, Q independent': ['g2', 'g3', 'Q', 'R', 'omega1', 'omega2', 'eta1', 'eta2', 'p', 'zeta(p)', 'q',
                         'zeta(q)', 'eta1*q - omega1*zeta(q)', 'eta2*q - omega2*zeta(q)', 'log f_q(p) + l'],
}

# omega2 and eta2 are algebraic over the rest when E has complex multiplication
CM_REDUNDANT = ('omega2', 'eta2')


class CaseRow:
    def __init__(self, name, cm_dims, noncm_dims, generators):
        if cm_dims.dim_UR != noncm_dims.dim_UR:
            raise ValueError('{}: unipotent radical depends on CM ({} vs {})'.format(name, cm_dims, noncm_dims))
        self.name = name
        self.cm_dims = cm_dims
        self.noncm_dims = noncm_dims
        self.noncm_generators = list(generators)
        self.cm_generators = [g for g in generators if g not in CM_REDUNDANT]

    def __repr__(self):
        return 'CaseRow({}, UR={}, CM={}, non-CM={})'.format(self.name, self.dim_UR, self.cm_total, self.noncm_total)

    @property
    def dim_UR(self):
        return self.noncm_dims.dim_UR

    @property
    def cm_total(self):
        return self.cm_dims.dim_total

    @property
    def noncm_total(self):
        return self.noncm_dims.dim_total

    def to_json(self):
        data = {}
        data['name'] = self.name
        data['dim_UR'] = self.dim_UR
        data['dim_galois_cm'] = self.cm_total
        data['dim_galois_non_cm'] = self.noncm_total
        data['generators_cm'] = self.cm_generators
        data['generators_non_cm'] = self.noncm_generators
        data['count_cm'] = len(self.cm_generators)
        data['count_non_cm'] = len(self.noncm_generators)
        return data

    def to_row(self):
        return [self.name, self.dim_UR, self.cm_total, self.noncm_total,
                len(self.cm_generators), len(self.noncm_generators)]


CASE_TABLE_HEADER = ['case', 'dim_UR', 'dim_galois_cm', 'dim_galois_non_cm', 'count_cm', 'count_non_cm']


def reference_curves():
    """ A CM curve (square lattice, d = -4) and a curve without CM """
    cm_curve = curve_from_periods(1.0, 1j, cm=CMDescriptor(-4))
    noncm_curve = curve_from_periods(1.0, 0.3 + 1.1j)
    return cm_curve, noncm_curve


def case_motive(curve, profile):
    """ A motive with r = n = s = 1 on curve whose points satisfy the abelian relations of profile """
    p = curve.lattice.point(0.23, 0.41)
    q = curve.lattice.point(0.57, 0.19)
    for relation in profile.abelian_relations:
        if relation.coeffs[0][0] != 0:
            p = curve.omega1 / relation.coeffs[0][0]
        if relation.coeffs[1][0] != 0:
            q = curve.omega2 / relation.coeffs[1][0]
    return OneMotiveSpec([curve], [[q]], [[p]], [[[0.4 + 0.3j]]])


def case_table():
    """ The rows of the r = n = s = 1 table: how torsion and dependence of P, Q, R cut down dim Gal """
    cm_curve, noncm_curve = reference_curves()
    rows = []
    for name, profile in CASE_PROFILES:
        cm_dims = dim_galois(case_motive(cm_curve, profile), profile)
        noncm_dims = dim_galois(case_motive(noncm_curve, profile), profile)
        rows.append(CaseRow(name, cm_dims, noncm_dims, CASE_GENERATORS[name]))
    return rows
