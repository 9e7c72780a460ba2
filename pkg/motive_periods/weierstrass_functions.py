import math

import mpmath

from motive_periods import constants as c
from motive_periods.errors import PoleError, InputError, NumericError
from motive_periods.lattice_core import reduce_mod_lattice, cubic_roots
from motive_periods.utils import setup_logger, complex_to_json, complex_from_json

"""
Weierstrass wp, wp', zeta and sigma of a CurveData.

Arguments are centered in the reduced lattice of the curve, the theta quotient series is
summed at the centered argument (nome |q| <= exp(-pi sqrt(3) / 2) after reduction), and the
result is shifted back with the quasi-periods:

    zeta(z0 + l) = zeta(z0) + eta(l)
    sigma(z0 + l) = (-1)^(m + n + mn) sigma(z0) exp(eta(l) (z0 + l / 2)),   l = m omega1 + n omega2
"""

logger = setup_logger('weierstrass')


class AffinePoint:
    """ A point (x, y) of y^2 = 4x^3 - g2 x - g3, or the point at infinity """

    def __init__(self, x=0j, y=0j, at_infinity=False):
        self.at_infinity = bool(at_infinity)
        self.x = complex(x)
        self.y = complex(y)

    @staticmethod
    def infinity():
        return AffinePoint(at_infinity=True)

    def __repr__(self):
        if self.at_infinity:
            return 'AffinePoint(infinity)'
        return 'AffinePoint(x={}, y={})'.format(self.x, self.y)

    def curve_residual(self, curve):
        """ Relative defect of y^2 = 4x^3 - g2 x - g3 """
        if self.at_infinity:
            return 0.0
        x, y = self.x, self.y
        rhs = 4 * x ** 3 - curve.g2 * x - curve.g3
        scale = abs(y) ** 2 + 4 * abs(x) ** 3 + abs(curve.g2 * x) + abs(curve.g3)
        if scale == 0:
            return 0.0
        return abs(y * y - rhs) / scale

    def distance(self, other):
        """ Relative coordinate distance, infinite when exactly one point is at infinity """
        if self.at_infinity or other.at_infinity:
            return 0.0 if self.at_infinity == other.at_infinity else float('inf')
        return max(abs(self.x - other.x) / (1 + abs(self.x)), abs(self.y - other.y) / (1 + abs(self.y)))

    def to_json(self):
        data = {}
        data['at_infinity'] = self.at_infinity
        data['x'] = complex_to_json(self.x)
        data['y'] = complex_to_json(self.y)
        return data

    @staticmethod
    def from_json(data, field_path='point'):
        if not isinstance(data, dict):
            raise InputError('expected an object', field_path)
        if data.get('at_infinity'):
            return AffinePoint.infinity()
        return AffinePoint(complex_from_json(data.get('x'), field_path + '.x'),
                           complex_from_json(data.get('y'), field_path + '.y'))


def _reduce(z, frame):
    """ Centers z around its nearest point of the reduced lattice, z = z0 + m omega1' + n omega2' """
    u, v = frame.basis.coordinates(complex(z))
    m, n = int(round(u)), int(round(v))
    z0 = mpmath.mpc(z) - m * frame.omega1 - n * frame.omega2
    return z0, m, n


def _check_pole(z0, z):
    if abs(z0) < c.POLE_TOL:
        raise PoleError('argument {} lies on the period lattice'.format(complex(z)))


def _thetas(z0, frame, order):
    v = mpmath.pi * z0 / frame.omega1
    return [mpmath.jtheta(1, v, frame.nome, k) for k in range(order + 1)]


def _wp_pair(z0, frame):
    t0, t1, t2, t3 = _thetas(z0, frame, 3)
    k = mpmath.pi / frame.omega1
    r1, r2, r3 = t1 / t0, t2 / t0, t3 / t0
    wp = -frame.eta1 / frame.omega1 + k ** 2 * (r1 ** 2 - r2)
    wp_prime = -k ** 3 * (r3 - 3 * r1 * r2 + 2 * r1 ** 3)
    return wp, wp_prime


def _zeta_centered(z0, frame):
    t0, t1 = _thetas(z0, frame, 1)
    return frame.eta1 * z0 / frame.omega1 + mpmath.pi / frame.omega1 * t1 / t0


def _gauss_factor(z0, frame):
    return mpmath.exp(frame.eta1 * z0 ** 2 / (2 * frame.omega1)) / frame.theta_prime0


def _sigma_centered(z0, frame):
    t0 = mpmath.jtheta(1, mpmath.pi * z0 / frame.omega1, frame.nome)
    return frame.omega1 / mpmath.pi * _gauss_factor(z0, frame) * t0


def _sigma_derivative_centered(z0, frame):
    t0, t1 = _thetas(z0, frame, 1)
    return _gauss_factor(z0, frame) * (frame.eta1 * z0 * t0 / mpmath.pi + t1)


def _shift(m, n, frame):
    """ The lattice vector l and its quasi-period eta(l) in the reduced basis """
    lattice_vector = m * frame.omega1 + n * frame.omega2
    return lattice_vector, m * frame.eta1 + n * frame.eta2


def _sigma_multiplier(z0, m, n, frame):
    lattice_vector, eta = _shift(m, n, frame)
    sign = -1 if (m + n + m * n) % 2 else 1
    return sign * mpmath.exp(eta * (z0 + lattice_vector / 2)), eta


def wp_and_prime(z, curve):
    """ wp(z) and wp'(z). Raises PoleError on the lattice """
    frame = curve.frame
    with mpmath.workdps(c.WORKING_DPS):
        z0, _, _ = _reduce(z, frame)
        _check_pole(z0, z)
        wp, wp_prime = _wp_pair(z0, frame)
        return complex(wp), complex(wp_prime)


def wp(z, curve):
    return wp_and_prime(z, curve)[0]


def zeta(z, curve):
    frame = curve.frame
    with mpmath.workdps(c.WORKING_DPS):
        z0, m, n = _reduce(z, frame)
        _check_pole(z0, z)
        _, eta = _shift(m, n, frame)
        return complex(_zeta_centered(z0, frame) + eta)


def sigma(z, curve):
    frame = curve.frame
    with mpmath.workdps(c.WORKING_DPS):
        z0, m, n = _reduce(z, frame)
        multiplier, _ = _sigma_multiplier(z0, m, n, frame)
        return complex(multiplier * _sigma_centered(z0, frame))


def sigma_derivative(z, curve):
    """ sigma'(z), entire, equal to sigma(z) zeta(z) off the lattice """
    frame = curve.frame
    with mpmath.workdps(c.WORKING_DPS):
        z0, m, n = _reduce(z, frame)
        multiplier, eta = _sigma_multiplier(z0, m, n, frame)
        value = _sigma_derivative_centered(z0, frame) + eta * _sigma_centered(z0, frame)
        return complex(multiplier * value)


def quasi_periods(curve):
    """ eta_i = 2 zeta(omega_i / 2) """
    return 2 * zeta(curve.omega1 / 2, curve), 2 * zeta(curve.omega2 / 2, curve)


def legendre_defect(curve, etas=None):
    """ eta1 omega2 - eta2 omega1 - 2 pi i, zero for an oriented basis """
    eta1, eta2 = etas if etas is not None else (curve.eta1, curve.eta2)
    return eta1 * curve.omega2 - eta2 * curve.omega1 - 2j * math.pi


def elliptic_exp(z, curve):
    """ z -> (wp(z), wp'(z)), the lattice going to the point at infinity """
    frame = curve.frame
    with mpmath.workdps(c.WORKING_DPS):
        z0, _, _ = _reduce(z, frame)
        if abs(z0) < c.POLE_TOL:
            return AffinePoint.infinity()
        x, y = _wp_pair(z0, frame)
        return AffinePoint(complex(x), complex(y))


def _newton_polish(z, x, frame):
    """ Newton steps on wp(z) = x. Stops near 2-torsion where wp' vanishes """
    for _ in range(c.NEWTON_STEPS):
        z0, _, _ = _reduce(z, frame)
        if abs(z0) < c.POLE_TOL:
            break
        value, slope = _wp_pair(z0, frame)
        if abs(slope) <= 1e-8 * (1 + abs(value)) ** 1.5:
            break
        step = (value - x) / slope
        z = z - step
        if abs(step) <= 10 * mpmath.eps * (1 + abs(z)):
            break
    return z


def _half_period_log(x, frame):
    """ The half period of the reduced lattice whose wp value is closest to x """
    halves = [frame.omega1 / 2, frame.omega2 / 2, (frame.omega1 + frame.omega2) / 2]
    return min(halves, key=lambda h: abs(_wp_pair(h, frame)[0] - x))


def elliptic_log(point, curve):
    """ Inverse of elliptic_exp, returned in the fundamental parallelogram.

    The Carlson integral R_F(x - e1, x - e2, x - e3) is the first kind integral from x to infinity,
    hence a logarithm of (x, +-y); Newton on wp polishes it and the sign is fixed by matching wp'.
    Points with y = 0 are the 2-torsion points, where wp' vanishes and Newton stalls; their
    logarithm is the matching half period.
    """
    if point.at_infinity:
        return 0j
    residual = point.curve_residual(curve)
    if residual > c.CURVE_INPUT_TOL:
        raise InputError('point is not on the curve, relative residual {}'.format(residual), 'point')
    frame = curve.frame
    if abs(point.y) <= c.TWO_TORSION_TOL * (1 + abs(point.x)) ** 1.5:
        with mpmath.workdps(c.WORKING_DPS):
            z = complex(_half_period_log(mpmath.mpc(point.x), frame))
        z0, _, _ = reduce_mod_lattice(z, curve.lattice)
        logger.debug('Elliptic log of the 2-torsion point {} is {}'.format(point, z0))
        return z0
    with mpmath.workdps(c.WORKING_DPS):
        x, y = mpmath.mpc(point.x), mpmath.mpc(point.y)
        e1, e2, e3 = cubic_roots(curve.g2, curve.g3)
        z = mpmath.elliprf(x - e1, x - e2, x - e3)
        z = _newton_polish(z, x, frame)
        z0, _, _ = _reduce(z, frame)
        if abs(z0) >= c.POLE_TOL:
            _, slope = _wp_pair(z0, frame)
            if abs(slope + y) < abs(slope - y):
                z = -z
        z = complex(z)
    z0, _, _ = reduce_mod_lattice(z, curve.lattice)
    error = elliptic_exp(z0, curve).distance(point)
    if error > 1e-7:
        raise NumericError('elliptic logarithm failed to reproduce the point, error {}'.format(error),
                           {'x': point.x, 'y': point.y, 'z': z0})
    logger.debug('Elliptic log of {} is {} (error {})'.format(point, z0, error))
    return z0
