import itertools
import math
import sys

import mpmath

from motive_periods import constants as c
from motive_periods.errors import OrientationError, SingularCurveError, NumericError, InputError
from motive_periods.utils import setup_logger, complex_from_json, complex_to_json

"""
Period lattices of complex elliptic curves.

A curve y^2 = 4x^3 - g2 x - g3 is uniformized by C / Lambda. This module holds the lattice
basis, reduces arguments modulo Lambda, computes (g2, g3) from a basis through Eisenstein
q-series and recovers an oriented basis from (g2, g3).
All series are summed by mpmath at WORKING_DPS digits and handed back as python complex.
"""

logger = setup_logger('lattice-core')


def _i():
    return mpmath.mpc(0, 1)


class LatticeBasis:
    """ An oriented basis (omega1, omega2) of a period lattice, Im(omega2 / omega1) > 0 """

    def __init__(self, omega1, omega2):
        self.omega1 = complex(omega1)
        self.omega2 = complex(omega2)
        if self.omega1 == 0 or not _finite(self.omega1) or not _finite(self.omega2):
            raise OrientationError('omega1 must be a non zero finite period')
        self.tau = self.omega2 / self.omega1
        if not self.tau.imag > 0:
            raise OrientationError('basis is not oriented, Im(omega2/omega1) = {}'.format(self.tau.imag))

    @staticmethod
    def oriented(omega1, omega2):
        """ Builds a basis, flipping the sign of omega2 when it points the wrong way """
        omega1, omega2 = complex(omega1), complex(omega2)
        if omega1 == 0:
            raise OrientationError('omega1 must be non zero')
        tau = omega2 / omega1
        if abs(tau.imag) <= 1e-14 * max(1.0, abs(tau)):
            raise OrientationError('periods {} and {} are collinear over R'.format(omega1, omega2))
        if tau.imag < 0:
            omega2 = -omega2
        return LatticeBasis(omega1, omega2)

    def __repr__(self):
        return 'LatticeBasis(omega1={}, omega2={})'.format(self.omega1, self.omega2)

    @property
    def covolume(self):
        return (self.omega1.conjugate() * self.omega2).imag

    def coordinates(self, z):
        """ Real coordinates (u, v) with z = u omega1 + v omega2 """
        z = complex(z)
        area = self.covolume
        u = (z.conjugate() * self.omega2).imag / area
        v = (self.omega1.conjugate() * z).imag / area
        return u, v

    def point(self, m, n):
        return m * self.omega1 + n * self.omega2

    def scaled(self, lam):
        return LatticeBasis(lam * self.omega1, lam * self.omega2)

    def transformed(self, matrix):
        """ New basis whose rows are expressed in this one: omega1' = a omega1 + b omega2, omega2' = c omega1 + d omega2 """
        (a, b), (cc, d) = matrix
        if a * d - b * cc != 1:
            raise OrientationError('change of basis {} is not in SL2(Z)'.format(matrix))
        return LatticeBasis(self.point(a, b), self.point(cc, d))

    def reduced(self):
        """ Returns the basis with tau in the standard fundamental domain and the
        integer matrix M (det 1) such that reduced = M * (omega1, omega2)
        """
        a, b = self.omega1, self.omega2
        row_a, row_b = (1, 0), (0, 1)
        for step in range(c.MAX_REDUCTION_STEPS):
            tau = b / a
            shift = int(math.floor(tau.real + 0.5))
            if shift:
                b = b - shift * a
                row_b = (row_b[0] - shift * row_a[0], row_b[1] - shift * row_a[1])
            if abs(b) < abs(a) * (1 - 1e-14):
                a, b = -b, a
                row_a, row_b = (-row_b[0], -row_b[1]), row_a
            else:
                break
        else:
            raise NumericError('lattice reduction did not terminate', {'omega1': self.omega1, 'omega2': self.omega2})
        logger.debug('Reduced tau {} to {} with matrix {}'.format(self.tau, b / a, (row_a, row_b)))
        return LatticeBasis(a, b), (row_a, row_b)

    def to_json(self):
        data = {}
        data['omega1'] = complex_to_json(self.omega1)
        data['omega2'] = complex_to_json(self.omega2)
        return data

    @staticmethod
    def from_json(data, field_path='lattice'):
        omega1 = complex_from_json(data.get('omega1'), field_path + '.omega1')
        omega2 = complex_from_json(data.get('omega2'), field_path + '.omega2')
        try:
            return LatticeBasis.oriented(omega1, omega2)
        except OrientationError as e:
            raise InputError(str(e), field_path)


def _finite(z):
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _snapped_floor(x):
    nearest = round(x)
    if abs(x - nearest) <= c.SNAP_TOL * max(1.0, abs(x)):
        return int(nearest)
    return int(math.floor(x))


def reduce_mod_lattice(z, basis):
    """ Writes z = z0 + m omega1 + n omega2 with z0 in the half open parallelogram [0,1) x [0,1) """
    z = complex(z)
    u, v = basis.coordinates(z)
    m, n = _snapped_floor(u), _snapped_floor(v)
    z0 = z - m * basis.omega1 - n * basis.omega2
    # snapping leaves coordinates a hair below 0; pull them onto the edge
    u0, v0 = basis.coordinates(z0)
    if u0 < 0:
        z0 -= u0 * basis.omega1
    if v0 < 0:
        z0 -= v0 * basis.omega2
    return z0, m, n


def nearest_lattice_point(z, basis):
    """ Writes z = z0 + m omega1 + n omega2 with m omega1 + n omega2 the lattice point closest to z.
    Exact for reduced bases.
    """
    z = complex(z)
    u, v = basis.coordinates(z)
    m0, n0 = int(round(u)), int(round(v))
    best = None
    for dm, dn in itertools.product((0, -1, 1), repeat=2):
        m, n = m0 + dm, n0 + dn
        z0 = z - m * basis.omega1 - n * basis.omega2
        if best is None or abs(z0) < abs(best[0]):
            best = (z0, m, n)
    return best


def distance_to_lattice(z, basis):
    reduced, _ = basis.reduced()
    return abs(nearest_lattice_point(z, reduced)[0])


def _lambert_series(q, power):
    """ sum_{n >= 1} n^power q^n / (1 - q^n) """
    total = mpmath.mpc(0)
    qn = mpmath.mpc(1)
    for n in range(1, c.MAX_SERIES_TERMS):
        qn *= q
        term = mpmath.mpf(n) ** power * qn / (1 - qn)
        total += term
        if abs(term) <= mpmath.eps * (1 + abs(total)):
            logger.debug('Lambert series of power {} converged after {} terms'.format(power, n))
            return total
    raise NumericError('Eisenstein series did not converge', {'q': complex(q), 'power': power})


def invariants_from_periods(basis):
    """ g2 = 60 G4 and g3 = 140 G6 of the lattice spanned by basis """
    if not basis.tau.imag > 0:
        raise OrientationError('basis is not oriented')
    reduced, _ = basis.reduced()
    with mpmath.workdps(c.WORKING_DPS):
        omega1 = mpmath.mpc(reduced.omega1)
        tau = mpmath.mpc(reduced.omega2) / omega1
        q = mpmath.exp(2 * mpmath.pi * _i() * tau)
        e4 = 1 + 240 * _lambert_series(q, 3)
        e6 = 1 - 504 * _lambert_series(q, 5)
        g2 = 4 * mpmath.pi ** 4 / 3 * e4 / omega1 ** 4
        g3 = 8 * mpmath.pi ** 6 / 27 * e6 / omega1 ** 6
        return complex(g2), complex(g3)


def discriminant(g2, g3):
    return g2 ** 3 - 27 * g3 ** 2


# g2^3 - 27 g3^2 is only resolved down to this fraction of |g2|^3 + 27 |g3|^2 in double precision
DISCRIMINANT_RESOLUTION = 64 * sys.float_info.epsilon


def _check_nonsingular(g2, g3):
    delta = discriminant(g2, g3)
    if abs(delta) <= DISCRIMINANT_RESOLUTION * (abs(g2) ** 3 + 27 * abs(g3) ** 2):
        max_im_tau = math.log(1728 / DISCRIMINANT_RESOLUTION) / (2 * math.pi)
        raise SingularCurveError('g2^3 - 27 g3^2 vanishes to double precision for g2={}, g3={}. Curves with '
                                 'Im tau above about {:.1f} cannot be given by invariants, give a period basis '
                                 'instead'.format(g2, g3, max_im_tau))
    return delta


def discriminant_from_periods(basis):
    """ (2 pi / omega1)^12 q prod (1 - q^n)^24, q = exp(2 pi i tau), non zero for every lattice """
    reduced, _ = basis.reduced()
    with mpmath.workdps(c.WORKING_DPS):
        omega1 = mpmath.mpc(reduced.omega1)
        q = mpmath.exp(2 * mpmath.pi * _i() * mpmath.mpc(reduced.omega2) / omega1)
        return complex((2 * mpmath.pi / omega1) ** 12 * q * mpmath.qp(q) ** 24)


def cubic_roots(g2, g3):
    """ Roots of 4x^3 - g2 x - g3 in the current mpmath context, ordered by descending real part """
    try:
        roots = mpmath.polyroots([4, 0, -mpmath.mpc(g2), -mpmath.mpc(g3)], maxsteps=200, extraprec=60)
    except Exception as e:
        raise NumericError('root finding failed for g2={}, g3={} with exception {}'.format(g2, g3, e),
                           {'g2': complex(g2), 'g3': complex(g3)})
    return sorted(roots, key=lambda e: (-float(mpmath.re(e)), -float(mpmath.im(e))))


class CMDescriptor:
    """ Complex multiplication by the imaginary quadratic order of discriminant d.
    gamma is the complex number by which the generator (d + sqrt(d)) / 2 acts on the lattice.
    """

    def __init__(self, discriminant, gamma=None):
        d = int(discriminant)
        if d >= 0 or d % 4 not in (0, 1):
            raise InputError('discriminant must be negative and congruent to 0 or 1 mod 4, got {}'.format(d),
                             'cm.discriminant')
        self.discriminant = d
        if gamma is None:
            gamma = complex(d, math.sqrt(-d)) / 2
        self.gamma = complex(gamma)

    @property
    def norm_constant(self):
        """ gamma^2 = d gamma - norm_constant """
        return (self.discriminant ** 2 - self.discriminant) // 4

    def check_lattice(self, basis):
        """ gamma Lambda must lie in Lambda """
        scale = max(abs(basis.omega1), abs(basis.omega2))
        for name, omega in (('omega1', basis.omega1), ('omega2', basis.omega2)):
            miss = distance_to_lattice(self.gamma * omega, basis)
            if miss > c.CM_LATTICE_TOL * abs(self.gamma) * scale:
                raise InputError('gamma = {} does not preserve the lattice, gamma {} is {} away from it'.format(
                    self.gamma, name, miss), 'cm')

    def to_json(self):
        data = {}
        data['discriminant'] = self.discriminant
        data['gamma'] = complex_to_json(self.gamma)
        return data

    @staticmethod
    def from_json(data, field_path='cm'):
        if not isinstance(data, dict) or 'discriminant' not in data:
            raise InputError('expected {"discriminant": d, "gamma": [re, im]}', field_path)
        gamma = data.get('gamma')
        if gamma is not None:
            gamma = complex_from_json(gamma, field_path + '.gamma')
        if isinstance(data['discriminant'], bool) or not isinstance(data['discriminant'], int):
            raise InputError('expected an integer', field_path + '.discriminant')
        return CMDescriptor(data['discriminant'], gamma)


class ThetaFrame:
    """ Reduced basis of a lattice together with the theta nome, theta constants and the
    quasi-periods of the reduced basis. Every evaluation of wp, zeta and sigma runs through it.
    """

    def __init__(self, basis):
        self.basis, self.matrix = basis.reduced()
        with mpmath.workdps(c.WORKING_DPS):
            self.omega1 = mpmath.mpc(self.basis.omega1)
            self.omega2 = mpmath.mpc(self.basis.omega2)
            tau = self.omega2 / self.omega1
            self.nome = mpmath.exp(_i() * mpmath.pi * tau)
            self.theta_prime0 = mpmath.jtheta(1, 0, self.nome, 1)
            theta_third0 = mpmath.jtheta(1, 0, self.nome, 3)
            self.eta1 = -(mpmath.pi ** 2 / (3 * self.omega1)) * theta_third0 / self.theta_prime0
            half = mpmath.pi * tau / 2
            log_derivative = mpmath.jtheta(1, half, self.nome, 1) / mpmath.jtheta(1, half, self.nome)
            self.eta2 = self.eta1 * tau + 2 * mpmath.pi / self.omega1 * log_derivative

    def original_quasi_periods(self):
        """ Quasi-periods of the basis the frame was built from """
        (a, b), (cc, d) = self.matrix
        eta1r, eta2r = complex(self.eta1), complex(self.eta2)
        return d * eta1r - b * eta2r, -cc * eta1r + a * eta2r


class CurveData:
    """ An elliptic curve with invariants g2, g3, period basis, quasi-periods and optional CM data """

    def __init__(self, g2, g3, lattice, eta1=None, eta2=None, cm=None, frame=None, discriminant=None):
        self.g2 = complex(g2)
        self.g3 = complex(g3)
        if discriminant is None:
            discriminant = _check_nonsingular(self.g2, self.g3)
        self.discriminant = complex(discriminant)
        self.lattice = lattice
        if cm is not None:
            cm.check_lattice(lattice)
        self.cm = cm
        self.frame = frame if frame is not None else ThetaFrame(lattice)
        if eta1 is None or eta2 is None:
            eta1, eta2 = self.frame.original_quasi_periods()
        self.eta1 = complex(eta1)
        self.eta2 = complex(eta2)
        self.check_legendre()

    def __repr__(self):
        return 'CurveData(g2={}, g3={}, tau={})'.format(self.g2, self.g3, self.lattice.tau)

    @property
    def omega1(self):
        return self.lattice.omega1

    @property
    def omega2(self):
        return self.lattice.omega2

    @property
    def is_cm(self):
        return self.cm is not None

    @property
    def endomorphism_degree(self):
        """ dim_Q of End(E) tensor Q """
        return 2 if self.is_cm else 1

    @property
    def j_invariant(self):
        return 1728 * self.g2 ** 3 / self.discriminant

    def period(self, i):
        return self.omega1 if i == 1 else self.omega2

    def quasi_period(self, i):
        return self.eta1 if i == 1 else self.eta2

    def roots(self):
        with mpmath.workdps(c.WORKING_DPS):
            return [complex(e) for e in cubic_roots(self.g2, self.g3)]

    def distance_to_lattice(self, z):
        return abs(nearest_lattice_point(z, self.frame.basis)[0])

    def check_legendre(self, tol=1e-7):
        defect = self.eta1 * self.omega2 - self.eta2 * self.omega1 - 2j * math.pi
        if abs(defect) > tol:
            raise NumericError('Legendre relation violated by {}'.format(abs(defect)),
                               {'eta1': self.eta1, 'eta2': self.eta2})
        return defect

    def to_json(self):
        data = self.lattice.to_json()
        if self.cm is not None:
            data['cm'] = self.cm.to_json()
        return data

    def describe(self):
        """ Full record for reports """
        data = {}
        data['g2'] = complex_to_json(self.g2)
        data['g3'] = complex_to_json(self.g3)
        data['omega1'] = complex_to_json(self.omega1)
        data['omega2'] = complex_to_json(self.omega2)
        data['eta1'] = complex_to_json(self.eta1)
        data['eta2'] = complex_to_json(self.eta2)
        data['cm'] = self.cm.to_json() if self.cm is not None else None
        return data

    @staticmethod
    def from_json(data, field_path='curve'):
        if not isinstance(data, dict):
            raise InputError('expected an object', field_path)
        has_invariants = 'g2' in data or 'g3' in data
        has_periods = 'omega1' in data or 'omega2' in data
        if has_invariants == has_periods:
            raise InputError('exactly one of {g2, g3} or {omega1, omega2} is required', field_path)
        cm = None
        if data.get('cm') is not None:
            cm = CMDescriptor.from_json(data['cm'], field_path + '.cm')
        try:
            if has_invariants:
                g2 = complex_from_json(data.get('g2'), field_path + '.g2')
                g3 = complex_from_json(data.get('g3'), field_path + '.g3')
                return curve_from_invariants(g2, g3, cm)
            lattice = LatticeBasis.from_json(data, field_path)
            return curve_from_periods(lattice.omega1, lattice.omega2, cm)
        except (SingularCurveError, OrientationError) as e:
            raise InputError(str(e), field_path)


def curve_from_periods(omega1, omega2, cm=None):
    basis = LatticeBasis.oriented(omega1, omega2)
    g2, g3 = invariants_from_periods(basis)
    return CurveData(g2, g3, basis, cm=cm, discriminant=discriminant_from_periods(basis))


def _roundtrip_error(basis, g2, g3):
    g2b, g3b = invariants_from_periods(basis)
    scale = max(abs(g2) ** 0.25, abs(g3) ** (1.0 / 6))
    err2 = abs(g2b - g2) / (abs(g2) + scale ** 4)
    err3 = abs(g3b - g3) / (abs(g3) + scale ** 6)
    return max(err2, err3)


def _period_candidates(g2, g3):
    """ One candidate basis per ordering (e1, e2, e3) of the roots, from complete elliptic integrals
    omega1 = 2K(m) / sqrt(e1 - e3), omega2 = 2i K(1 - m) / sqrt(e1 - e3), m = (e2 - e3) / (e1 - e3)
    """
    candidates = []
    with mpmath.workdps(c.WORKING_DPS):
        roots = cubic_roots(g2, g3)
        for e1, e2, e3 in itertools.permutations(roots):
            m = (e2 - e3) / (e1 - e3)
            root = mpmath.sqrt(e1 - e3)
            try:
                omega1 = complex(2 * mpmath.ellipk(m) / root)
                omega2 = complex(2 * _i() * mpmath.ellipk(1 - m) / root)
                candidates.append(LatticeBasis.oriented(omega1, omega2))
            except (OrientationError, ZeroDivisionError, ValueError, OverflowError) as e:
                logger.debug('Skipping root ordering with m={}: {}'.format(complex(m), e))
    return candidates


def curve_from_invariants(g2, g3, cm=None):
    """ Recovers an oriented period basis from (g2, g3). Every candidate basis is checked by
    recomputing (g2, g3) from it; the first passing one by largest Im(tau), then smallest
    |arg omega1|, is kept and reduced.
    """
    g2, g3 = complex(g2), complex(g3)
    _check_nonsingular(g2, g3)
    candidates = _period_candidates(g2, g3)
    candidates.sort(key=lambda b: (-round(b.tau.imag, 9), round(abs(_arg(b.omega1)), 9)))
    errors = []
    for basis in candidates:
        error = _roundtrip_error(basis, g2, g3)
        errors.append(error)
        if error <= c.ROUNDTRIP_TOL:
            reduced, _ = basis.reduced()
            if reduced.omega1.real < 0 or (reduced.omega1.real == 0 and reduced.omega1.imag < 0):
                reduced = LatticeBasis(-reduced.omega1, -reduced.omega2)
            logger.debug('Recovered periods {} for g2={}, g3={}'.format(reduced, g2, g3))
            return CurveData(g2, g3, reduced, cm=cm)
    raise NumericError('period recovery did not converge for g2={}, g3={}'.format(g2, g3),
                       {'g2': g2, 'g3': g3, 'candidates': len(candidates), 'roundtrip_errors': errors})


def _arg(z):
    return math.atan2(z.imag, z.real)
