import cmath

import numpy as np

from motive_periods import constants as c
from motive_periods.errors import PoleError, InputError, ContextError
from motive_periods.lattice_core import CurveData
from motive_periods.serre_third_kind import (ThirdKindContext, f_q, log_f_q, third_kind_quasi_period,
                                             reduce_mod_2pi_i, TWO_PI_I)
from motive_periods.utils import setup_logger, complex_array_from_json, complex_array_to_json
from motive_periods.weierstrass_functions import zeta, sigma, wp_and_prime
from motive_periods.quadrature_oracle import FormKind, PathSpec, integrate

"""
1-motives M = [u: Z^r -> G] with G an extension of E_1 x ... x E_n by G_m^s, given in
logarithm-first form: elliptic logarithms p_jk of the points P_jk = v(z_k), q_ji of the points
Q_ji defining the extension, and toric logarithms l_jik.

Indices follow one convention throughout: k runs over the lattice Z^r, j over the curves and
i over the torus factors. JSON carries 0-based indices, matrix labels are 1-based.
"""

logger = setup_logger('one-motive')

COMPONENT_ROWS = ['beta_R', 'gamma_1', 'gamma_2', 'delta_Q']
COMPONENT_COLUMNS = ['df', 'omega', 'eta', 'xi_Q']


class OneMotiveSpec:
    def __init__(self, curves, q_logs, p_logs, l_logs, r=None, s=None, torus_logs=None):
        self.curves = list(curves)
        self.n = len(self.curves)
        if self.n == 0 and torus_logs is not None:
            torus_logs = np.asarray(torus_logs, dtype=complex)
        if s is None:
            s = np.shape(q_logs)[1] if self.n else torus_logs.shape[0]
        if r is None:
            r = np.shape(p_logs)[1] if self.n else torus_logs.shape[1]
        self.r, self.s = int(r), int(s)
        if self.r < 0 or self.s < 0:
            raise InputError('r and s must be non negative')
        self.q_logs = np.asarray(q_logs, dtype=complex).reshape(self.n, self.s)
        self.p_logs = np.asarray(p_logs, dtype=complex).reshape(self.n, self.r)
        self.l_logs = np.asarray(l_logs, dtype=complex).reshape(self.n, self.s, self.r)
        if self.n == 0:
            if torus_logs is None:
                torus_logs = np.zeros((self.s, self.r), dtype=complex)
            self.torus_logs = np.asarray(torus_logs, dtype=complex).reshape(self.s, self.r)
        else:
            self.torus_logs = None

    def __repr__(self):
        return 'OneMotiveSpec(r={}, s={}, n={})'.format(self.r, self.s, self.n)

    def is_degenerate(self, j, i):
        """ q_ji on the lattice of E_j: the extension splits in this coordinate """
        return self.curves[j].distance_to_lattice(self.q_logs[j, i]) < c.POLE_TOL

    def toric_log(self, i, k):
        """ Logarithm of the torus coordinate of R_k in G_m factor i when there are no curves """
        return self.torus_logs[i, k]

    def to_json(self):
        data = {}
        data['r'] = self.r
        data['s'] = self.s
        data['curves'] = [curve.to_json() for curve in self.curves]
        data['q_logs'] = complex_array_to_json(self.q_logs)
        data['p_logs'] = complex_array_to_json(self.p_logs)
        data['l_logs'] = complex_array_to_json(self.l_logs)
        if self.torus_logs is not None:
            data['torus_logs'] = complex_array_to_json(self.torus_logs)
        return data

    @staticmethod
    def from_json(data):
        if not isinstance(data, dict):
            raise InputError('expected an object', 'motive')
        curves_data = data.get('curves', [])
        if not isinstance(curves_data, list):
            raise InputError('expected a list', 'curves')
        curves = [CurveData.from_json(item, 'curves[{}]'.format(j)) for j, item in enumerate(curves_data)]
        n = len(curves)
        r, s = _shape_from_json(data, n)
        torus_logs = None
        if n and data.get('l_logs') is None:
            raise InputError('required, an {} x {} x {} array, when the motive has curves'.format(n, s, r), 'l_logs')
        if n == 0:
            torus_logs = complex_array_from_json(data.get('torus_logs'), (s, r), 'torus_logs')
        q_logs = complex_array_from_json(data.get('q_logs') if n else None, (n, s), 'q_logs')
        p_logs = complex_array_from_json(data.get('p_logs') if n else None, (n, r), 'p_logs')
        l_logs = complex_array_from_json(data.get('l_logs') if n else None, (n, s, r), 'l_logs')
        return OneMotiveSpec(curves, q_logs, p_logs, l_logs, r=r, s=s, torus_logs=torus_logs)


def _shape_from_json(data, n):
    def explicit(key):
        value = data.get(key)
        if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
            raise InputError('expected a non negative integer', key)
        return value
    r, s = explicit('r'), explicit('s')
    if n:
        q_logs, p_logs = data.get('q_logs'), data.get('p_logs')
        if not isinstance(q_logs, list) or len(q_logs) != n or not isinstance(q_logs[0], list):
            raise InputError('expected {} rows'.format(n), 'q_logs')
        if not isinstance(p_logs, list) or len(p_logs) != n or not isinstance(p_logs[0], list):
            raise InputError('expected {} rows'.format(n), 'p_logs')
        s = len(q_logs[0]) if s is None else s
        r = len(p_logs[0]) if r is None else r
    else:
        torus_logs = data.get('torus_logs')
        if s is None:
            s = len(torus_logs) if isinstance(torus_logs, list) else 0
        if r is None:
            r = len(torus_logs[0]) if isinstance(torus_logs, list) and torus_logs else 0
    return r, s


class ComponentMotive:
    """ M_jik = [z_k Z -> G_ji], the piece of M seen by curve j, torus factor i and generator k.
    ctx is None when q lies on the lattice (split extension).
    """

    def __init__(self, j, i, k, curve, q, p, l):
        self.j, self.i, self.k = j, i, k
        self.curve = curve
        self.q = complex(q)
        self.p = complex(p)
        self.l = complex(l)
        try:
            self.ctx = ThirdKindContext(curve, self.q)
        except ContextError:
            self.ctx = None

    @property
    def index(self):
        return (self.j, self.i, self.k)

    @property
    def split(self):
        return self.ctx is None

    def __repr__(self):
        return 'ComponentMotive(j={}, i={}, k={}, q={}, p={}, l={})'.format(self.j, self.i, self.k, self.q, self.p, self.l)


class PeriodMatrix:
    def __init__(self, entries, row_labels, col_labels):
        self.entries = np.asarray(entries, dtype=complex)
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        if self.entries.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError('labels do not match a matrix of shape {}'.format(self.entries.shape))

    @property
    def shape(self):
        return self.entries.shape

    def entry(self, row_label, col_label):
        return self.entries[self.row_labels.index(row_label), self.col_labels.index(col_label)]

    def determinant(self):
        return complex(np.linalg.det(self.entries))

    def to_json(self):
        data = {}
        data['row_labels'] = self.row_labels
        data['col_labels'] = self.col_labels
        data['entries'] = complex_array_to_json(self.entries)
        return data

    def to_rows(self):
        """ Rows of raw complex pairs re, im, re, im, ... for CSV output """
        return [[part for z in row for part in (z.real, z.imag)] for row in self.entries]


def decompose(motive):
    """ The r s n components M_jik, ordered by (j, i, k) """
    components = []
    for j, curve in enumerate(motive.curves):
        for i in range(motive.s):
            for k in range(motive.r):
                components.append(ComponentMotive(j, i, k, curve, motive.q_logs[j, i], motive.p_logs[j, k],
                                                  motive.l_logs[j, i, k]))
    return components


def _abelian_entries(curve, p, component):
    try:
        return p, zeta(p, curve)
    except PoleError as e:
        raise PoleError('component {}: {}'.format(component, e), component)


def _toric_entry(component):
    """ log f_q(p) + l, or l alone for a split extension """
    if component.split:
        return component.l
    try:
        return log_f_q(component.p, component.ctx) + component.l
    except PoleError as e:
        raise PoleError('component {}: {}'.format(component.index, e), component.index)


def _third_kind_entries(component):
    if component.split:
        return 0j, 0j
    return third_kind_quasi_period(1, component.ctx), third_kind_quasi_period(2, component.ctx)


def component_period_matrix(component):
    """ The 4 x 4 period matrix of M_jik:
        [[1, p, zeta(p), log f_q(p) + l],
         [0, omega1, eta1, eta1 q - omega1 zeta(q)],
         [0, omega2, eta2, eta2 q - omega2 zeta(q)],
         [0, 0, 0, 2 pi i]]
    """
    curve = component.curve
    p, zeta_p = _abelian_entries(curve, component.p, component.index)
    xi1, xi2 = _third_kind_entries(component)
    entries = np.zeros((4, 4), dtype=complex)
    entries[0] = [1, p, zeta_p, _toric_entry(component)]
    entries[1] = [0, curve.omega1, curve.eta1, xi1]
    entries[2] = [0, curve.omega2, curve.eta2, xi2]
    entries[3, 3] = TWO_PI_I
    suffix = '_{}{}{}'.format(component.j + 1, component.i + 1, component.k + 1)
    return PeriodMatrix(entries, [label + suffix for label in COMPONENT_ROWS],
                        [label + suffix for label in COMPONENT_COLUMNS])


def full_period_matrix(motive):
    """ The (rn + 2n + s) square block matrix [[A, B, C], [0, D, E], [0, 0, F]] """
    r, s, n = motive.r, motive.s, motive.n
    if n == 0:
        return _torus_period_matrix(motive)
    size = r * n + 2 * n + s
    entries = np.zeros((size, size), dtype=complex)
    row_labels, col_labels = [], []
    for j in range(n):
        for k in range(r):
            row_labels.append('beta_{}{}'.format(j + 1, k + 1))
            col_labels.append('df_{}{}'.format(j + 1, k + 1))
    for j in range(n):
        row_labels += ['gamma_{}1'.format(j + 1), 'gamma_{}2'.format(j + 1)]
        col_labels += ['omega_{}'.format(j + 1), 'eta_{}'.format(j + 1)]
    for i in range(s):
        row_labels.append('delta_{}'.format(i + 1))
        col_labels.append('xi_{}'.format(i + 1))

    abelian_offset = r * n
    toric_offset = r * n + 2 * n
    entries[:abelian_offset, :abelian_offset] = np.eye(abelian_offset)
    entries[toric_offset:, toric_offset:] = TWO_PI_I * np.eye(s)
    for j, curve in enumerate(motive.curves):
        col = abelian_offset + 2 * j
        entries[col, col:col + 2] = [curve.omega1, curve.eta1]
        entries[col + 1, col:col + 2] = [curve.omega2, curve.eta2]
        for k in range(r):
            row = j * r + k
            entries[row, col:col + 2] = _abelian_entries(curve, motive.p_logs[j, k], (j, None, k))
    for component in decompose(motive):
        j, i, k = component.index
        entries[j * r + k, toric_offset + i] = _toric_entry(component)
        if k == 0:
            xi1, xi2 = _third_kind_entries(component)
            entries[abelian_offset + 2 * j, toric_offset + i] = xi1
            entries[abelian_offset + 2 * j + 1, toric_offset + i] = xi2
    if r == 0:
        for j in range(n):
            for i in range(s):
                component = ComponentMotive(j, i, None, motive.curves[j], motive.q_logs[j, i], 0j, 0j)
                xi1, xi2 = _third_kind_entries(component)
                entries[abelian_offset + 2 * j, toric_offset + i] = xi1
                entries[abelian_offset + 2 * j + 1, toric_offset + i] = xi2
    logger.debug('Assembled the {} x {} period matrix of {}'.format(size, size, motive))
    return PeriodMatrix(entries, row_labels, col_labels)


def _torus_period_matrix(motive):
    """ [[Id_r, L], [0, 2 pi i Id_s]] with L[k, i] = l_ik """
    r, s = motive.r, motive.s
    entries = np.zeros((r + s, r + s), dtype=complex)
    entries[:r, :r] = np.eye(r)
    entries[:r, r:] = motive.torus_logs.T
    entries[r:, r:] = TWO_PI_I * np.eye(s)
    row_labels = ['beta_{}'.format(k + 1) for k in range(r)] + ['delta_{}'.format(i + 1) for i in range(s)]
    col_labels = ['df_{}'.format(k + 1) for k in range(r)] + ['xi_{}'.format(i + 1) for i in range(s)]
    return PeriodMatrix(entries, row_labels, col_labels)


def generator_count(r, s, n):
    """ Number of period generators before deduplication """
    return 2 + 4 * n + 2 * r * n + 2 * s * n + r * s * n


def _labelled_periods(motive):
    """ Every period generator with its label, duplicates included """
    labelled = [('1', 1 + 0j), ('2*pi*i', TWO_PI_I)]
    if motive.n == 0:
        for i in range(motive.s):
            for k in range(motive.r):
                labelled.append(('l_{}{}'.format(i + 1, k + 1), motive.toric_log(i, k)))
        return labelled
    for j, curve in enumerate(motive.curves):
        tag = j + 1
        labelled += [('omega_{}1'.format(tag), curve.omega1), ('omega_{}2'.format(tag), curve.omega2),
                     ('eta_{}1'.format(tag), curve.eta1), ('eta_{}2'.format(tag), curve.eta2)]
    for j, curve in enumerate(motive.curves):
        for k in range(motive.r):
            p, zeta_p = _abelian_entries(curve, motive.p_logs[j, k], (j, None, k))
            labelled += [('p_{}{}'.format(j + 1, k + 1), p), ('zeta_{}(p_{}{})'.format(j + 1, j + 1, k + 1), zeta_p)]
    for j, curve in enumerate(motive.curves):
        for i in range(motive.s):
            component = ComponentMotive(j, i, None, curve, motive.q_logs[j, i], 0j, 0j)
            xi1, xi2 = _third_kind_entries(component)
            for cycle, value in ((1, xi1), (2, xi2)):
                labelled.append(('eta_{0}{2}*q_{0}{1} - omega_{0}{2}*zeta_{0}(q_{0}{1})'.format(j + 1, i + 1, cycle), value))
    for component in decompose(motive):
        j, i, k = [idx + 1 for idx in component.index]
        labelled.append(('log f_q{}{}(p_{}{}) + l_{}{}{}'.format(j, i, j, k, j, i, k), _toric_entry(component)))
    return labelled


def deduplicate(labelled, tol=1e-12):
    """ Keeps the first label of every value, values equal up to tol * (1 + |value|) collapse """
    kept = []
    for label, value in labelled:
        value = complex(value)
        if any(abs(value - other) <= tol * (1 + abs(other)) for _, other in kept):
            continue
        kept.append((label, value))
    return kept


def period_generators(motive):
    """ The labelled generators of the field of periods of M over its field of definition """
    return deduplicate(_labelled_periods(motive))


def field_generators(motive):
    """ Generators of the field of definition K: g2_j, g3_j, x(Q_ji) and the torus coordinate
    e^l f_q(p) of R_jik in the affine chart of G_ji (e^l for a split extension or a bare torus)
    """
    labelled = []
    if motive.n == 0:
        for i in range(motive.s):
            for k in range(motive.r):
                labelled.append(('R_{}{}'.format(i + 1, k + 1), cmath.exp(motive.toric_log(i, k))))
        return labelled
    for j, curve in enumerate(motive.curves):
        labelled += [('g2_{}'.format(j + 1), curve.g2), ('g3_{}'.format(j + 1), curve.g3)]
    for j, curve in enumerate(motive.curves):
        for i in range(motive.s):
            if not motive.is_degenerate(j, i):
                labelled.append(('x(Q_{}{})'.format(j + 1, i + 1), wp_and_prime(motive.q_logs[j, i], curve)[0]))
    for component in decompose(motive):
        j, i, k = [idx + 1 for idx in component.index]
        if component.split:
            value = cmath.exp(component.l)
        else:
            value = cmath.exp(component.l) * f_q(component.p, component.ctx)
        labelled.append(('R_{}{}{}'.format(j, i, k), value))
    return labelled


def oracle_entries(component, base=None):
    """ The top row entries zeta(p) and log f_q(p) + l recomputed from path integrals along
    beta_R = [p1, p1 + p], each corrected by the exact rational function term:
        zeta(p) = int -wp dz - 1/2 (wp'(p) - wp'(p1)) / (wp(p) - wp(p1))
        log f_q(p) + l = l + int xi dz - log sigma-quotient(p, p1)   (mod 2 pi i)
    Returns the two values; the second is None for a split extension.
    """
    curve = component.curve
    p = component.p
    p1 = curve.lattice.point(0.21, 0.13) if base is None else complex(base)
    path = PathSpec.segment(p1, p1 + p)
    second = integrate(FormKind.second(), path, curve).value
    wp_p, wp_prime_p = wp_and_prime(p, curve)
    wp_1, wp_prime_1 = wp_and_prime(p1, curve)
    zeta_p = second - 0.5 * (wp_prime_p - wp_prime_1) / (wp_p - wp_1)
    if component.split:
        return zeta_p, None
    ctx = component.ctx
    q = ctx.q
    xi = integrate(FormKind.semiabelian(ctx), PathSpec.segment(p1, p1 + p, lifted_w=(0, component.l))).value
    quotient = (sigma(q + p + p1, curve) * ctx.sigma_q * sigma(p, curve) * sigma(p1, curve) /
                (sigma(q + p, curve) * sigma(q + p1, curve) * sigma(p + p1, curve)))
    return zeta_p, reduce_mod_2pi_i(xi - cmath.log(quotient))
