from motive_periods.errors import InputError
from motive_periods.galois.quadratic_field import QuadraticFieldScalar
from motive_periods.utils import fraction_from_json

"""
Declared dependence data of a 1-motive. Transcendence ranks cannot be decided numerically, so
they are stated as exact linear relations:

  abelian relations    per curve j, k_j-linear relations among the symbols p_j1..p_jr, q_j1..q_js
                       modulo the lattice (torsion of a point is the singleton relation on it)
  pairing_kernel       r x s booleans, true when the Weil pairing of (P_k, Q_i) is a root of unity
  pairing relations    Q-relations modulo 2 pi i Q among the pairing logarithms of non-kernel pairs
  psi relations        Q-relations modulo 2 pi i Q among the psi logarithms of kernel pairs

Pair symbols are ordered row-major over (k, i).
"""


class AbelianRelation:
    """ coeffs are (a, b) rational pairs standing for a + b gamma in k_j """

    def __init__(self, curve, coeffs):
        self.curve = int(curve)
        self.coeffs = [tuple(pair) for pair in coeffs]

    def scalars(self, discriminant, field_path='relation'):
        scalars = []
        for idx, (a, b) in enumerate(self.coeffs):
            if discriminant is None and b != 0:
                raise InputError('curve {} has no complex multiplication, gamma coefficients must vanish'.format(self.curve),
                                 '{}.coeffs[{}]'.format(field_path, idx))
            scalars.append(QuadraticFieldScalar(a, b, discriminant))
        return scalars

    def to_json(self):
        data = {}
        data['curve'] = self.curve
        data['coeffs'] = [[str(a), str(b)] for a, b in self.coeffs]
        return data


class DependenceProfile:
    def __init__(self, abelian_relations=(), pairing_kernel=None, pairing_relations=(), psi_relations=()):
        self.abelian_relations = list(abelian_relations)
        self.pairing_kernel = None if pairing_kernel is None else [[bool(x) for x in row] for row in pairing_kernel]
        self.pairing_relations = [list(rel) for rel in pairing_relations]
        self.psi_relations = [list(rel) for rel in psi_relations]

    @staticmethod
    def generic():
        """ No relations at all """
        return DependenceProfile()

    def __repr__(self):
        return 'DependenceProfile(abelian={}, pairing={}, psi={})'.format(
            len(self.abelian_relations), len(self.pairing_relations), len(self.psi_relations))

    def kernel_matrix(self, motive):
        """ Declared kernel flags, defaulting to all false, or all true when there are no curves """
        r, s = motive.r, motive.s
        if self.pairing_kernel is None:
            return [[motive.n == 0] * s for _ in range(r)]
        if len(self.pairing_kernel) != r or any(len(row) != s for row in self.pairing_kernel):
            raise InputError('expected an {} x {} boolean matrix'.format(r, s), 'pairing_kernel')
        if motive.n == 0 and not all(all(row) for row in self.pairing_kernel):
            raise InputError('without curves every pairing is trivial', 'pairing_kernel')
        return self.pairing_kernel

    def pair_symbols(self, motive):
        """ (kernel pairs, non-kernel pairs), each a row-major list of (k, i) """
        kernel = self.kernel_matrix(motive)
        inside, outside = [], []
        for k in range(motive.r):
            for i in range(motive.s):
                (inside if kernel[k][i] else outside).append((k, i))
        return inside, outside

    def relations_for_curve(self, j, curve):
        discriminant = curve.cm.discriminant if curve.cm is not None else None
        return [relation.scalars(discriminant, 'abelian_relations[{}]'.format(idx))
                for idx, relation in enumerate(self.abelian_relations) if relation.curve == j]

    def check_curves(self, motive):
        for idx, relation in enumerate(self.abelian_relations):
            if not 0 <= relation.curve < motive.n:
                raise InputError('no curve with index {}'.format(relation.curve),
                                 'abelian_relations[{}].curve'.format(idx))

    def to_json(self):
        data = {}
        data['abelian_relations'] = [relation.to_json() for relation in self.abelian_relations]
        data['pairing_kernel'] = self.pairing_kernel
        data['pairing_relations'] = [[str(x) for x in rel] for rel in self.pairing_relations]
        data['psi_relations'] = [[str(x) for x in rel] for rel in self.psi_relations]
        return data

    @staticmethod
    def from_json(data):
        if data is None:
            return DependenceProfile.generic()
        if not isinstance(data, dict):
            raise InputError('expected an object', 'profile')
        abelian = []
        for idx, item in enumerate(_list(data, 'abelian_relations')):
            path = 'abelian_relations[{}]'.format(idx)
            if not isinstance(item, dict) or isinstance(item.get('curve'), bool) or not isinstance(item.get('curve'), int):
                raise InputError('expected {"curve": j, "coeffs": [[a, b], ...]}', path)
            coeffs = []
            for c_idx, pair in enumerate(_list(item, 'coeffs', path)):
                pair_path = '{}.coeffs[{}]'.format(path, c_idx)
                if not isinstance(pair, list) or len(pair) not in (1, 2):
                    raise InputError('expected [a, b]', pair_path)
                a = fraction_from_json(pair[0], pair_path)
                b = fraction_from_json(pair[1], pair_path) if len(pair) == 2 else 0
                coeffs.append((a, b))
            abelian.append(AbelianRelation(item['curve'], coeffs))
        kernel = data.get('pairing_kernel')
        if kernel is not None:
            if not isinstance(kernel, list) or not all(isinstance(row, list) and all(isinstance(x, bool) for x in row)
                                                       for row in kernel):
                raise InputError('expected a matrix of booleans', 'pairing_kernel')
        return DependenceProfile(abelian, kernel, _rational_rows(data, 'pairing_relations'),
                                 _rational_rows(data, 'psi_relations'))


def _list(data, key, parent=None):
    value = data.get(key, [])
    path = key if parent is None else '{}.{}'.format(parent, key)
    if not isinstance(value, list):
        raise InputError('expected a list', path)
    return value


def _rational_rows(data, key):
    rows = []
    for idx, row in enumerate(_list(data, key)):
        path = '{}[{}]'.format(key, idx)
        if not isinstance(row, list):
            raise InputError('expected a list of rationals', path)
        rows.append([fraction_from_json(x, '{}[{}]'.format(path, c_idx)) for c_idx, x in enumerate(row)])
    return rows
