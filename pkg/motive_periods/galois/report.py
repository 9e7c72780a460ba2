from motive_periods import constants as c
from motive_periods.errors import InputError
from motive_periods.galois.dimension import dim_galois, is_deficient
from motive_periods.galois.profile import DependenceProfile
from motive_periods.one_motive import decompose, field_generators, ComponentMotive
from motive_periods.serre_third_kind import TWO_PI_I, log_f_q, third_kind_quasi_period
from motive_periods.utils import setup_logger, complex_to_json
from motive_periods.weierstrass_functions import zeta

logger = setup_logger('galois-report')

SHAPES = ('1-motivic-elliptic', 'elliptico-toric', 'schanuel')


def motive_shape(motive):
    if motive.n == 0:
        return 'schanuel'
    degenerate = [motive.is_degenerate(j, i) for j in range(motive.n) for i in range(motive.s)]
    if degenerate and all(degenerate):
        return 'elliptico-toric'
    return '1-motivic-elliptic'


def _elliptic_numbers(motive):
    labelled = []
    for j, curve in enumerate(motive.curves):
        tag = j + 1
        labelled += [('omega_{}1'.format(tag), curve.omega1)]
        if not curve.is_cm:
            labelled += [('omega_{}2'.format(tag), curve.omega2)]
        labelled += [('eta_{}1'.format(tag), curve.eta1)]
        if not curve.is_cm:
            labelled += [('eta_{}2'.format(tag), curve.eta2)]
    for j, curve in enumerate(motive.curves):
        for k in range(motive.r):
            p = motive.p_logs[j, k]
            labelled += [('p_{}{}'.format(j + 1, k + 1), p), ('zeta_{}(p_{}{})'.format(j + 1, j + 1, k + 1), zeta(p, curve))]
    for j, curve in enumerate(motive.curves):
        for i in range(motive.s):
            if motive.is_degenerate(j, i):
                continue
            q = motive.q_logs[j, i]
            labelled += [('q_{}{}'.format(j + 1, i + 1), q), ('zeta_{}(q_{}{})'.format(j + 1, j + 1, i + 1), zeta(q, curve))]
            ctx = ComponentMotive(j, i, None, curve, q, 0j, 0j).ctx
            for cycle in (1, 2):
                labelled.append(('eta_{0}{2}*q_{0}{1} - omega_{0}{2}*zeta_{0}(q_{0}{1})'.format(j + 1, i + 1, cycle),
                                 third_kind_quasi_period(cycle, ctx)))
    for component in decompose(motive):
        j, i, k = [idx + 1 for idx in component.index]
        if component.split:
            labelled.append(('l_{}{}{}'.format(j, i, k), component.l))
        else:
            labelled.append(('log f_q{}{}(p_{}{}) + l_{}{}{}'.format(j, i, j, k, j, i, k),
                             log_f_q(component.p, component.ctx) + component.l))
    return labelled


def conjecture_lhs(motive):
    """ The numbers whose transcendence degree the period conjecture bounds from below.
    1 is dropped, 2 pi i too when a curve is present (Legendre makes it algebraic over omega, eta).
    """
    labelled = field_generators(motive)
    if motive.n == 0:
        labelled.append(('2*pi*i', TWO_PI_I))
        for i in range(motive.s):
            for k in range(motive.r):
                labelled.append(('l_{}{}'.format(i + 1, k + 1), motive.toric_log(i, k)))
        return labelled
    return labelled + _elliptic_numbers(motive)


def conjecture_report(motive, profile=None):
    """ Both sides of tran.deg_Q Q(periods, field of definition) >= dim Gal(M). No judgment on the lhs """
    profile = profile if profile is not None else DependenceProfile.generic()
    dims = dim_galois(motive, profile)
    lhs = conjecture_lhs(motive)
    report = {}
    report['shape'] = motive_shape(motive)
    report['r'] = motive.r
    report['s'] = motive.s
    report['n'] = motive.n
    report['lhs'] = [{'label': label, 'value': complex_to_json(value)} for label, value in lhs]
    report['lhs_count'] = len(lhs)
    report['rhs'] = dims.dim_total
    report['dims'] = dims.to_json()
    report['deficient'] = is_deficient(motive, profile)
    report['inequality_text'] = 'tran.deg_Q Q(lhs) >= {}'.format(dims.dim_total)
    logger.info('{} numbers against dimension {} ({})'.format(len(lhs), dims.dim_total, report['shape']))
    return report


def _relation_values(motive, j):
    return list(motive.p_logs[j]) + list(motive.q_logs[j])


def validate_profile(motive, profile=None):
    """ Evaluates every declared abelian relation on the motive's logarithms and reports how far the
    combination sum c_t sym_t lands from the lattice
    """
    profile = profile if profile is not None else DependenceProfile.generic()
    profile.check_curves(motive)
    entries = []
    for idx, relation in enumerate(profile.abelian_relations):
        path = 'abelian_relations[{}]'.format(idx)
        curve = motive.curves[relation.curve]
        discriminant = curve.cm.discriminant if curve.cm is not None else None
        scalars = relation.scalars(discriminant, path)
        values = _relation_values(motive, relation.curve)
        if len(scalars) != len(values):
            raise InputError('expected {} coefficients, got {}'.format(len(values), len(scalars)), path + '.coeffs')
        gamma = curve.cm.gamma if curve.cm is not None else 0j
        combination = sum(scalar.numeric(gamma) * value for scalar, value in zip(scalars, values))
        residual = curve.distance_to_lattice(combination)
        flagged = residual > c.PROFILE_RESIDUAL_TOL
        if flagged:
            logger.warning('Relation {} on curve {} misses the lattice by {}'.format(idx, relation.curve, residual))
        entry = {}
        entry['index'] = idx
        entry['curve'] = relation.curve
        entry['combination'] = complex_to_json(combination)
        entry['residual'] = residual
        entry['flagged'] = flagged
        entries.append(entry)
    return entries
