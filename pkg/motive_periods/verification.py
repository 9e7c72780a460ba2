import cmath
import math
from fractions import Fraction

import numpy as np
import progressbar

from motive_periods import constants as c
from motive_periods.errors import MotivePeriodsError, PathError
from motive_periods.galois.dimension import case_table, dim_galois, reference_curves, P_TORSION
from motive_periods.galois.profile import DependenceProfile, AbelianRelation
from motive_periods.galois.rank import rank_over_field, quotient_dimension
from motive_periods.galois.report import motive_shape
from motive_periods.lattice_core import curve_from_periods, curve_from_invariants
from motive_periods.one_motive import (OneMotiveSpec, decompose, component_period_matrix, full_period_matrix,
                                       oracle_entries)
from motive_periods.quadrature_oracle import FormKind, cycle_integral, residue_loop
from motive_periods.serre_third_kind import (ThirdKindContext, TWO_PI_I, f_q, third_kind_quasi_period,
                                             distance_mod_2pi_i, sigma_quotient)
from motive_periods.utils import setup_logger, random_seed, Notify
from motive_periods.weierstrass_functions import (wp_and_prime, zeta, sigma, quasi_periods, legendre_defect,
                                                  elliptic_exp, elliptic_log)

"""
Self-verification of the period machinery. Each suite checks one family of laws on seeded random
curves and points (or on the curves of a given motive) and records its largest residual.
"""

SUITES = ['legendre', 'functional_equations', 'ode_residual', 'quadrature_cycles', 'residues',
          'matrix_structure', 'oracle_coherence', 'case_table', 'rank_engine', 'degenerations']

EXPECTED_CASE_TABLE = {
    'Q, R torsion': (0, 2, 4),
    'P, Q torsion': (1, 3, 5),
    'R torsion': (2, 4, 6),
    'Q torsion': (3, 5, 7),
    'P torsion': (3, 5, 7),
    'P, Q independent': (5, 7, 9),
}

# q on the lattice of the first curve: the extension splits
SPLIT_Q = AbelianRelation(0, [(0, 0), (1, 0)])


class SuiteResult:
    def __init__(self, name, passed, max_residual, checks, tolerance, detail=None):
        self.name = name
        self.passed = bool(passed)
        self.max_residual = float(max_residual)
        self.checks = int(checks)
        self.tolerance = tolerance
        self.detail = detail

    @staticmethod
    def from_residuals(name, residuals, tolerance):
        residuals = [float(x) for x in residuals]
        worst = max(residuals) if residuals else 0.0
        return SuiteResult(name, worst <= tolerance, worst, len(residuals), tolerance)

    def __repr__(self):
        return 'SuiteResult({}, passed={}, max_residual={:.3e})'.format(self.name, self.passed, self.max_residual)

    def summary_line(self):
        prefix = Notify.info() if self.passed else Notify.fail()
        line = '{} {:<22} checks={:<5} max_residual={:.3e} tol={:.1e}'.format(
            prefix, self.name, self.checks, self.max_residual, self.tolerance)
        if self.detail:
            line += ' ({})'.format(self.detail)
        return line + Notify.ENDC

    def to_json(self):
        data = {}
        data['name'] = self.name
        data['passed'] = self.passed
        data['max_residual'] = self.max_residual
        data['checks'] = self.checks
        data['tolerance'] = self.tolerance
        data['detail'] = self.detail
        return data


def _relative(a, b):
    return abs(complex(a) - complex(b)) / max(1.0, abs(complex(b)))


def random_curve(rng):
    """ A curve with tau drawn from the fundamental domain and a random rotation and scale """
    while True:
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 2.0))
        if abs(tau) >= 1:
            break
    omega1 = rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
    return curve_from_periods(omega1, omega1 * tau)


def random_point(rng, curve, avoid=(), clearance=0.05):
    """ A point of the fundamental parallelogram at least clearance (relative) from every avoided coset """
    scale = min(abs(curve.frame.basis.omega1), abs(curve.frame.basis.omega2))
    for _ in range(100):
        z = curve.lattice.point(*rng.uniform(0.05, 0.95, size=2))
        if all(curve.distance_to_lattice(z - a) > clearance * scale for a in [0j] + list(avoid)):
            return z
    raise PathError('could not draw a point away from {}'.format(list(avoid)))


def mixed_rows(rows, rng, steps=None):
    """ rows after random elementary operations over Q: swaps, non zero scalings and row additions """
    rows = [[Fraction(x) for x in row] for row in rows]
    steps = 3 * len(rows) if steps is None else steps
    for _ in range(steps):
        i, j = [int(x) for x in rng.randint(len(rows), size=2)]
        kind = rng.randint(3)
        if kind == 0:
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 1:
            scale = Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.randint(1, 4)))
            rows[i] = [scale * x for x in rows[i]]
        elif i != j:
            factor = int(rng.randint(-3, 4))
            rows[i] = [x + factor * y for x, y in zip(rows[i], rows[j])]
    return rows


class VerificationRunner:
    def __init__(self, motive=None, tol_analytic=c.TOL_ANALYTIC, tol_quadrature=c.TOL_QUADRATURE,
                 tol_residue=c.TOL_RESIDUE, num_curves=10, legendre_curves=25, points_per_curve=100,
                 q_per_curve=5, rank_instances=200, seed=None):
        self.logger = setup_logger('verification')
        self.motive = motive
        self.tol_analytic = tol_analytic
        self.tol_quadrature = tol_quadrature
        self.tol_residue = tol_residue
        self.num_curves = num_curves
        self.legendre_curves = legendre_curves
        self.points_per_curve = points_per_curve
        self.q_per_curve = q_per_curve
        self.rank_instances = rank_instances
        self.seed = random_seed() if seed is None else seed
        self.rng = np.random.RandomState(self.seed)
        self._curves = None

    def curves(self, count=None):
        """ The motive's curves when one was given, else count seeded random curves """
        if self.motive is not None and self.motive.n:
            return self.motive.curves
        count = self.num_curves if count is None else count
        if self._curves is None or len(self._curves) < count:
            self._curves = [random_curve(self.rng) for _ in range(count)]
        return self._curves[:count]

    def sample_motive(self, r=1, s=1, n=1):
        """ The given motive, or a random one of shape (r, s, n) on the runner's curves """
        if self.motive is not None and self.motive.n:
            return self.motive
        curves = [random_curve(self.rng) for _ in range(n)]
        q_logs = [[random_point(self.rng, curve) for _ in range(s)] for curve in curves]
        p_logs = [[random_point(self.rng, curve, avoid=[-q for q in q_logs[j]]) for _ in range(r)]
                  for j, curve in enumerate(curves)]
        l_logs = [[[complex(*self.rng.uniform(-1, 1, size=2)) for _ in range(r)] for _ in range(s)] for _ in curves]
        return OneMotiveSpec(curves, q_logs, p_logs, l_logs)

    def run(self, suites=None):
        suites = SUITES if suites is None else suites
        results = []
        bar = progressbar.ProgressBar(max_value=len(suites))
        for idx, name in enumerate(suites):
            self.logger.debug('Running suite {}'.format(name))
            try:
                result = getattr(self, 'check_' + name)()
            except MotivePeriodsError as e:
                self.logger.error('Suite {} failed with exception {}'.format(name, e))
                result = SuiteResult(name, False, float('inf'), 0, 0.0, detail=str(e))
            results.append(result)
            bar.update(idx + 1)
        bar.finish()
        return results

    def check_legendre(self):
        residuals = []
        for curve in self.curves(max(self.num_curves, self.legendre_curves)):
            residuals.append(abs(legendre_defect(curve)))
            residuals.append(abs(legendre_defect(curve, quasi_periods(curve))))
            recovered = curve_from_invariants(curve.g2, curve.g3)
            residuals.append(abs(legendre_defect(recovered)))
        return SuiteResult.from_residuals('legendre', residuals, self.tol_analytic)

    def check_functional_equations(self):
        residuals = []
        for curve in self.curves():
            for _ in range(self.points_per_curve):
                q = random_point(self.rng, curve)
                ctx = ThirdKindContext(curve, q)
                z = random_point(self.rng, curve, avoid=[-q])
                y = random_point(self.rng, curve, avoid=[z, -z, -q, -q - z])
                wp_z, wp_prime_z = wp_and_prime(z, curve)
                for i in (1, 2):
                    omega, eta = curve.period(i), curve.quasi_period(i)
                    residuals.append(_relative(wp_and_prime(z + omega, curve)[0], wp_z))
                    residuals.append(_relative(zeta(z + omega, curve), zeta(z, curve) + eta))
                    residuals.append(_relative(sigma(z + omega, curve),
                                               -sigma(z, curve) * cmath.exp(eta * (z + omega / 2))))
                    residuals.append(_relative(f_q(z + omega, ctx),
                                               f_q(z, ctx) * cmath.exp(third_kind_quasi_period(i, ctx))))
                residuals.append(_relative(f_q(z + y, ctx) / (f_q(z, ctx) * f_q(y, ctx)), sigma_quotient(z, y, ctx)))
                residuals.append(_relative(wp_and_prime(-z, curve)[0], wp_z))
                residuals.append(_relative(zeta(-z, curve), -zeta(z, curve)))
                wp_y, wp_prime_y = wp_and_prime(y, curve)
                residuals.append(_relative(zeta(z + y, curve) - zeta(z, curve) - zeta(y, curve),
                                           0.5 * (wp_prime_z - wp_prime_y) / (wp_z - wp_y)))
                residuals.append(elliptic_exp(elliptic_log(elliptic_exp(z, curve), curve), curve)
                                 .distance(elliptic_exp(z, curve)))
        return SuiteResult.from_residuals('functional_equations', residuals, self.tol_analytic)

    def check_ode_residual(self):
        residuals = []
        for curve in self.curves():
            for _ in range(self.points_per_curve):
                x, y = wp_and_prime(random_point(self.rng, curve), curve)
                rhs = 4 * x ** 3 - curve.g2 * x - curve.g3
                residuals.append(abs(y * y - rhs) / max(1.0, abs(y) ** 2))
        return SuiteResult.from_residuals('ode_residual', residuals, 1e-8)

    def check_quadrature_cycles(self):
        residuals = []
        for curve in self.curves():
            for i in (1, 2):
                residuals.append(cycle_integral(FormKind.first(), i, curve, seed=self.seed).discrepancy)
                residuals.append(cycle_integral(FormKind.second(), i, curve, seed=self.seed).discrepancy)
            for _ in range(self.q_per_curve):
                ctx = ThirdKindContext(curve, random_point(self.rng, curve))
                for i in (1, 2):
                    residuals.append(cycle_integral(FormKind.third(ctx), i, seed=self.seed).discrepancy)
        return SuiteResult.from_residuals('quadrature_cycles', residuals, self.tol_quadrature)

    def check_residues(self):
        residuals = []
        for curve in self.curves():
            q = random_point(self.rng, curve, clearance=0.15)
            ctx = ThirdKindContext(curve, q)
            third = FormKind.third(ctx)
            residuals.append(abs(residue_loop(FormKind.second(), 0j, curve).value))
            residuals.append(abs(residue_loop(third, 0j).value + TWO_PI_I))
            residuals.append(abs(residue_loop(third, -q).value - TWO_PI_I))
            regular = random_point(self.rng, curve, avoid=[q, -q], clearance=0.15)
            residuals.append(abs(residue_loop(third, regular).value))
        return SuiteResult.from_residuals('residues', residuals, self.tol_residue)

    def check_matrix_structure(self):
        residuals = []
        motive = self.sample_motive()
        for component in decompose(motive):
            det = component_period_matrix(component).determinant()
            residuals.append(abs(abs(det) - (2 * math.pi) ** 2) / (2 * math.pi) ** 2)
        wide = self.sample_motive(r=2, s=3, n=2)
        matrix = full_period_matrix(wide).entries
        abelian = wide.r * wide.n
        toric = abelian + 2 * wide.n
        size = toric + wide.s
        if matrix.shape != (size, size):
            return SuiteResult('matrix_structure', False, float('inf'), len(residuals), self.tol_analytic,
                               detail='shape {} instead of {}'.format(matrix.shape, (size, size)))
        residuals.append(np.abs(matrix[abelian:, :abelian]).max() if abelian else 0.0)
        residuals.append(np.abs(matrix[toric:, :toric]).max() if wide.s else 0.0)
        residuals.append(np.abs(matrix[:abelian, :abelian] - np.eye(abelian)).max() if abelian else 0.0)
        residuals.append(np.abs(matrix[toric:, toric:] - TWO_PI_I * np.eye(wide.s)).max() if wide.s else 0.0)
        return SuiteResult.from_residuals('matrix_structure', residuals, self.tol_analytic)

    def check_oracle_coherence(self):
        residuals = []
        for component in decompose(self.sample_motive()):
            entries = component_period_matrix(component).entries
            for attempt in range(c.CYCLE_BASE_RETRIES):
                base = None if attempt == 0 else component.curve.lattice.point(*self.rng.uniform(0.05, 0.95, size=2))
                try:
                    zeta_p, toric = oracle_entries(component, base)
                    break
                except PathError as e:
                    self.logger.warning('Oracle path for {} hit a pole ({}), retrying'.format(component.index, e))
            else:
                raise PathError('no pole free oracle path for component {}'.format(component.index))
            residuals.append(abs(zeta_p - entries[0, 2]))
            if toric is not None:
                residuals.append(distance_mod_2pi_i(toric, entries[0, 3]))
        return SuiteResult.from_residuals('oracle_coherence', residuals, self.tol_quadrature)

    def check_case_table(self):
        mismatches = []
        for row in case_table():
            got = (row.dim_UR, row.cm_total, row.noncm_total)
            if got != EXPECTED_CASE_TABLE.get(row.name):
                mismatches.append('{}: {}'.format(row.name, got))
        detail = ', '.join(mismatches) if mismatches else None
        return SuiteResult('case_table', not mismatches, len(mismatches), len(EXPECTED_CASE_TABLE), 0.0, detail)

    def check_rank_engine(self):
        residuals = []
        for _ in range(self.rank_instances):
            rows, cols = self.rng.randint(1, 7, size=2)
            inner = self.rng.randint(1, min(rows, cols) + 1)
            matrix = self.rng.randint(-3, 4, size=(rows, inner)).dot(self.rng.randint(-3, 4, size=(inner, cols)))
            relations = [[int(x) for x in row] for row in matrix]
            exact = rank_over_field(relations, cols)
            residuals.append(abs(exact - np.linalg.matrix_rank(matrix.astype(float))))
            residuals.append(abs(rank_over_field(mixed_rows(relations, self.rng), cols) - exact))
            duplicated = relations + [list(relations[self.rng.randint(rows)])]
            residuals.append(abs(rank_over_field(duplicated, cols) - exact))
            extra = [int(x) for x in self.rng.randint(-3, 4, size=cols)]
            drop = quotient_dimension(relations, cols) - quotient_dimension(relations + [extra], cols)
            residuals.append(0 if drop in (0, 1) else 1)
        return SuiteResult.from_residuals('rank_engine', residuals, 0.0)

    def check_degenerations(self):
        """ A bare torus (Schanuel shape) and split extensions q in Lambda against the case table """
        mismatches, checks = [], 0
        l = complex(*self.rng.uniform(-1, 1, size=2))
        torus = OneMotiveSpec([], [], [], [], r=1, s=1, torus_logs=[[l]])
        if motive_shape(torus) != 'schanuel':
            mismatches.append('torus shape {}'.format(motive_shape(torus)))
        for case, profile in (('P, Q torsion', DependenceProfile()),
                              ('Q, R torsion', DependenceProfile(psi_relations=[[1]]))):
            dims = dim_galois(torus, profile)
            expected = EXPECTED_CASE_TABLE[case][0]
            checks += 1
            if (dims.dim_UR, dims.dim_total) != (expected, expected + 1):
                mismatches.append('torus as {}: {}'.format(case, dims))
        for curve in reference_curves():
            column = 1 if curve.is_cm else 2
            split_cases = [('Q torsion', [SPLIT_Q], curve.lattice.point(0.23, 0.41)),
                           ('P, Q torsion', [P_TORSION, SPLIT_Q], curve.omega1 / 2)]
            for case, relations, p in split_cases:
                profile = DependenceProfile(relations, [[True]])
                split = OneMotiveSpec([curve], [[curve.omega1]], [[p]], [[[l]]])
                dims = dim_galois(split, profile)
                expected = EXPECTED_CASE_TABLE[case]
                checks += 1
                if (dims.dim_UR, dims.dim_total) != (expected[0], expected[column]):
                    mismatches.append('split {} on {}: {}'.format(case, curve, dims))
                matrix = full_period_matrix(split).entries
                checks += 1
                if motive_shape(split) != 'elliptico-toric' or matrix[0, 3] != l or np.any(matrix[1:3, 3] != 0):
                    mismatches.append('split {} on {} is not elliptico-toric'.format(case, curve))
        detail = ', '.join(mismatches) if mismatches else None
        return SuiteResult('degenerations', not mismatches, len(mismatches), checks, 0.0, detail)
