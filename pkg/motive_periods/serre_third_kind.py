import cmath
import math

from motive_periods import constants as c
from motive_periods.errors import ContextError, NumericError, PoleError, SingularityError
from motive_periods.utils import setup_logger, complex_to_json
from motive_periods.weierstrass_functions import wp_and_prime, zeta, sigma, sigma_derivative

"""
Serre's function f_q(z) = sigma(z + q) / (sigma(z) sigma(q)) exp(-zeta(q) z) and the
objects built on it: the pullback of the third kind differential xi_Q, its quasi-quasi-periods
eta_i q - omega_i zeta(q), and the exponential of the extension G of E by G_m defined by -Q.
"""

logger = setup_logger('serre-third-kind')

TWO_PI_I = 2j * math.pi


class ThirdKindContext:
    """ A curve together with the elliptic logarithm q of the point Q parameterizing the extension """

    def __init__(self, curve, q):
        self.curve = curve
        self.q = complex(q)
        if curve.distance_to_lattice(self.q) < c.POLE_TOL:
            raise ContextError('q = {} lies on the period lattice, the extension splits'.format(self.q))
        self.zeta_q = zeta(self.q, curve)
        self.sigma_q = sigma(self.q, curve)
        self.wp_q, self.wp_prime_q = wp_and_prime(self.q, curve)
        logger.debug('Third kind context at q = {}: zeta(q) = {}'.format(self.q, self.zeta_q))

    def __repr__(self):
        return 'ThirdKindContext(q={}, curve={})'.format(self.q, self.curve)

    def to_json(self):
        data = {}
        data['q'] = complex_to_json(self.q)
        data['zeta_q'] = complex_to_json(self.zeta_q)
        data['curve'] = self.curve.to_json()
        return data


def reduce_mod_2pi_i(x):
    """ Representative of x modulo 2 pi i Z with imaginary part in (-pi, pi] """
    x = complex(x)
    k = math.floor((x.imag + math.pi) / (2 * math.pi))
    reduced = x - k * TWO_PI_I
    if reduced.imag <= -math.pi:
        reduced += TWO_PI_I
    return reduced


def distance_mod_2pi_i(a, b):
    return abs(reduce_mod_2pi_i(complex(a) - complex(b)))


def f_q(z, ctx):
    z = complex(z)
    if ctx.curve.distance_to_lattice(z) < c.POLE_TOL:
        raise PoleError('f_q has a pole at {}'.format(z))
    return sigma(z + ctx.q, ctx.curve) / (sigma(z, ctx.curve) * ctx.sigma_q) * cmath.exp(-ctx.zeta_q * z)


def sigma_quotient(z1, z2, ctx):
    """ sigma(q + z1 + z2) sigma(q) sigma(z1) sigma(z2) / (sigma(q + z1) sigma(q + z2) sigma(z1 + z2)),
    which equals f_q(z1 + z2) / (f_q(z1) f_q(z2))
    """
    curve, q = ctx.curve, ctx.q
    z1, z2 = complex(z1), complex(z2)
    numerator = sigma(q + z1 + z2, curve) * ctx.sigma_q * sigma(z1, curve) * sigma(z2, curve)
    denominator = sigma(q + z1, curve) * sigma(q + z2, curve) * sigma(z1 + z2, curve)
    if denominator == 0:
        raise PoleError('sigma quotient has a pole at z1 = {}, z2 = {}'.format(z1, z2))
    return numerator / denominator


def log_f_q(z, ctx):
    """ Principal branch of log f_q(z). Raises NumericError next to the zeros -q + Lambda """
    distance = ctx.curve.distance_to_lattice(complex(z) + ctx.q)
    if distance < c.POLE_TOL:
        raise NumericError('log f_q is singular next to the zero -q, |z + q| = {} mod the lattice'.format(distance),
                           {'z': complex(z), 'q': ctx.q})
    return cmath.log(f_q(z, ctx))


def xi_pullback(z, ctx):
    """ 1/2 (wp'(z) - wp'(q)) / (wp(z) - wp(q)), the dz component of exp*(xi_Q) """
    wp_z, wp_prime_z = wp_and_prime(z, ctx.curve)
    denominator = wp_z - ctx.wp_q
    if abs(denominator) <= c.SINGULARITY_TOL * max(1.0, abs(ctx.wp_q)):
        raise SingularityError('wp(z) = wp(q) at z = {}'.format(complex(z)))
    return 0.5 * (wp_prime_z - ctx.wp_prime_q) / denominator


def third_kind_quasi_period(i, ctx):
    """ eta_i q - omega_i zeta(q) """
    if i not in (1, 2):
        raise ValueError('cycle index must be 1 or 2, got {}'.format(i))
    curve = ctx.curve
    return curve.quasi_period(i) * ctx.q - curve.period(i) * ctx.zeta_q


def semiabelian_exp(w, z, ctx):
    """ sigma(z)^3 [wp, wp', 1, e^w f_q, e^w f_q (wp + (wp'(z) - wp'(q)) / (wp(z) - wp(q)))]

    z is first moved next to the origin, trading lattice shifts for shifts of w by the
    quasi-quasi-periods. The last two coordinates are then assembled from entire pieces,
    using (wp'(z) - wp'(q)) / (wp(z) - wp(q)) = 2 (zeta(z + q) - zeta(z) - zeta(q)) and
    sigma(z + q) zeta(z + q) = sigma'(z + q), so lattice points and -q are no special cases.
    """
    curve = ctx.curve
    w, z = complex(w), complex(z)
    u, v = curve.lattice.coordinates(z)
    m, n = int(round(u)), int(round(v))
    z0 = z - curve.lattice.point(m, n)
    w0 = w + m * third_kind_quasi_period(1, ctx) + n * third_kind_quasi_period(2, ctx)
    if abs(z0) < c.POLE_TOL:
        return (0j, -2 + 0j, 0j, 0j, cmath.exp(w0))
    s = sigma(z0, curve)
    wp_z, wp_prime_z = wp_and_prime(z0, curve)
    twist = cmath.exp(w0 - ctx.zeta_q * z0) / ctx.sigma_q
    toric = twist * sigma(z0 + ctx.q, curve)
    derivative = twist * sigma_derivative(z0 + ctx.q, curve)
    last = s * s * (toric * (wp_z - 2 * zeta(z0, curve) - 2 * ctx.zeta_q) + 2 * derivative)
    return (s ** 3 * wp_z, s ** 3 * wp_prime_z, s ** 3, s * s * toric, last)


def projective_distance(a, b):
    """ Distance between two projective points, each scaled so its largest coordinate is 1 """
    def normalize(point):
        point = [complex(x) for x in point]
        pivot = max(range(len(point)), key=lambda idx: abs(point[idx]))
        if point[pivot] == 0:
            raise ValueError('the zero vector is not a projective point')
        return pivot, [x / point[pivot] for x in point]
    pivot_a, na = normalize(a)
    _, nb = normalize(b)
    if nb[pivot_a] == 0:
        return float('inf')
    nb = [x / nb[pivot_a] for x in nb]
    return max(abs(x - y) for x, y in zip(na, nb))
