import cmath
import itertools
import math

import numpy as np
from scipy.integrate import quad_vec

from motive_periods import constants as c
from motive_periods.errors import PathError, NumericError, InputError
from motive_periods.serre_third_kind import (ThirdKindContext, xi_pullback, third_kind_quasi_period,
                                             reduce_mod_2pi_i, TWO_PI_I)
from motive_periods.utils import setup_logger, random_seed, complex_to_json
from motive_periods.weierstrass_functions import wp

"""
Brute-force contour integration of the pulled-back differentials
    first: dz     second: -wp(z) dz     third: xi_Q(z) dz     semiabelian: dw + xi_Q(z) dz
along straight segments and circles in the z-plane. This is the independent oracle the
closed-form periods are checked against.
"""

logger = setup_logger('quadrature-oracle')

FORM_TAGS = ('first', 'second', 'third', 'semiabelian')
PATH_KINDS = ('cycle1', 'cycle2', 'segment', 'loop')


class FormKind:
    def __init__(self, tag, ctx=None):
        if tag not in FORM_TAGS:
            raise InputError('unknown form {}'.format(tag), 'form')
        if tag in ('third', 'semiabelian') and not isinstance(ctx, ThirdKindContext):
            raise InputError('{} forms need a ThirdKindContext'.format(tag), 'form')
        self.tag = tag
        self.ctx = ctx

    @staticmethod
    def first():
        return FormKind('first')

    @staticmethod
    def second():
        return FormKind('second')

    @staticmethod
    def third(ctx):
        return FormKind('third', ctx)

    @staticmethod
    def semiabelian(ctx):
        return FormKind('semiabelian', ctx)

    def __repr__(self):
        return 'FormKind({})'.format(self.tag)

    def integrand(self, curve):
        """ The dz component as a function of z """
        if self.tag == 'first':
            return lambda z: 1.0 + 0j
        if self.tag == 'second':
            return lambda z: -wp(z, curve)
        ctx = self.ctx
        return lambda z: xi_pullback(z, ctx)

    def singular_points(self):
        """ Representatives of the cosets c + Lambda where the integrand is singular.
        The third kind quotient is removable at q + Lambda but cannot be evaluated there.
        """
        if self.tag == 'first':
            return []
        if self.tag == 'second':
            return [0j]
        q = self.ctx.q
        return [0j, -q, q]

    def closed_form_cycle(self, i, curve):
        if self.tag == 'first':
            return curve.period(i)
        if self.tag == 'second':
            return curve.quasi_period(i)
        return third_kind_quasi_period(i, self.ctx)


class PathSpec:
    """ A cycle, a segment start -> end, or a counter-clockwise loop. lifted_w = (w_start, w_end)
    adds a linear w-component, which only the semiabelian form sees through dw.
    """

    def __init__(self, kind, start=0j, end=0j, center=0j, radius=None, lifted_w=None):
        if kind not in PATH_KINDS:
            raise InputError('unknown path kind {}'.format(kind), 'path')
        if kind == 'loop' and (radius is None or not radius > 0):
            raise InputError('loops need a positive radius', 'path.radius')
        self.kind = kind
        self.start = complex(start)
        self.end = complex(end)
        self.center = complex(center)
        self.radius = radius
        self.lifted_w = None if lifted_w is None else (complex(lifted_w[0]), complex(lifted_w[1]))

    @staticmethod
    def segment(start, end, lifted_w=None):
        return PathSpec('segment', start=start, end=end, lifted_w=lifted_w)

    @staticmethod
    def loop(center, radius):
        return PathSpec('loop', center=center, radius=radius)

    @staticmethod
    def cycle(i, base):
        return PathSpec('cycle{}'.format(i), start=base)

    def __repr__(self):
        if self.kind == 'loop':
            return 'PathSpec(loop, center={}, radius={})'.format(self.center, self.radius)
        return 'PathSpec({}, {} -> {})'.format(self.kind, self.start, self.end)

    def realized(self, curve):
        """ Cycles become the segment base -> base + omega_i """
        if self.kind.startswith('cycle'):
            i = int(self.kind[-1])
            return PathSpec.segment(self.start, self.start + curve.period(i), self.lifted_w)
        return self

    def parameterization(self):
        """ gamma(t) and gamma'(t) on [0, 1] """
        if self.kind == 'loop':
            center, radius = self.center, self.radius
            return (lambda t: center + radius * cmath.exp(2j * math.pi * t),
                    lambda t: 2j * math.pi * radius * cmath.exp(2j * math.pi * t))
        start, delta = self.start, self.end - self.start
        return (lambda t: start + t * delta), (lambda t: delta)

    def distance_to_point(self, point):
        if self.kind == 'loop':
            return abs(abs(point - self.center) - self.radius)
        delta = self.end - self.start
        if delta == 0:
            return abs(point - self.start)
        t = ((point - self.start) * delta.conjugate()).real / abs(delta) ** 2
        t = min(1.0, max(0.0, t))
        return abs(point - (self.start + t * delta))

    def nearby_translates(self, point, basis):
        """ The points of point + Lambda that can come within reach of the path """
        if self.kind == 'loop':
            corners = [self.center + self.radius * d for d in (1, -1, 1j, -1j)]
        else:
            corners = [self.start, self.end]
        coords = [basis.coordinates(z - point) for z in corners]
        u_range = range(int(math.floor(min(u for u, _ in coords))) - 1, int(math.ceil(max(u for u, _ in coords))) + 2)
        v_range = range(int(math.floor(min(v for _, v in coords))) - 1, int(math.ceil(max(v for _, v in coords))) + 2)
        return [point + basis.point(m, n) for m, n in itertools.product(u_range, v_range)]


class QuadratureResult:
    def __init__(self, value, error):
        self.value = complex(value)
        self.error = float(error)

    def __repr__(self):
        return 'QuadratureResult(value={}, error={})'.format(self.value, self.error)

    def to_json(self):
        data = {}
        data['value'] = complex_to_json(self.value)
        data['error'] = self.error
        return data


class CycleIntegral(QuadratureResult):
    """ A cycle integral with its closed form. For log-type forms value = closed_form + 2 pi i correction """

    def __init__(self, value, error, closed_form, base, correction=0):
        super(CycleIntegral, self).__init__(value, error)
        self.closed_form = complex(closed_form)
        self.base = complex(base)
        self.correction = int(correction)

    @property
    def discrepancy(self):
        return abs(self.value - self.closed_form - self.correction * TWO_PI_I)

    def to_json(self):
        data = super(CycleIntegral, self).to_json()
        data['closed_form'] = complex_to_json(self.closed_form)
        data['base'] = complex_to_json(self.base)
        data['correction'] = self.correction
        return data


def _form_curve(form, curve):
    if form.ctx is not None:
        return form.ctx.curve
    if curve is None:
        raise InputError('a curve is required for {} forms'.format(form.tag), 'curve')
    return curve


def path_clearance(form, path, curve):
    """ Smallest distance between the path and a pole of the integrand """
    basis = curve.frame.basis
    clearance = float('inf')
    for point in form.singular_points():
        for translate in path.nearby_translates(point, basis):
            clearance = min(clearance, path.distance_to_point(translate))
    return clearance


def enclosed_poles(form, path, curve):
    """ Poles strictly inside a loop """
    basis = curve.frame.basis
    inside = []
    for point in form.singular_points():
        for translate in path.nearby_translates(point, basis):
            if abs(translate - path.center) < path.radius:
                inside.append(translate)
    return inside


def integrate(form, path, curve=None, clearance=c.PATH_CLEARANCE, tol=c.QUAD_EPSABS):
    """ Adaptive Gauss-Kronrod integration of form along path. Returns a QuadratureResult """
    curve = _form_curve(form, curve)
    path = path.realized(curve)
    nearest = path_clearance(form, path, curve)
    if nearest < clearance:
        raise PathError('{} passes within {} of a pole of the {} form'.format(path, nearest, form.tag))
    offset = 0j
    if path.lifted_w is not None and form.tag == 'semiabelian':
        offset = path.lifted_w[1] - path.lifted_w[0]
    if path.kind == 'segment' and path.start == path.end:
        return QuadratureResult(offset, 0.0)
    gamma, dgamma = path.parameterization()
    integrand = form.integrand(curve)

    def pair(t):
        value = integrand(gamma(t)) * dgamma(t)
        return np.array([value.real, value.imag])

    result, error, info = quad_vec(pair, 0.0, 1.0, epsabs=tol, epsrel=c.QUAD_EPSREL, norm='max',
                                   limit=c.QUAD_LIMIT, full_output=True)
    if not info.success:
        raise NumericError('quadrature of the {} form along {} did not converge'.format(form.tag, path),
                           {'error': float(error), 'intervals': len(info.intervals), 'status': info.status})
    logger.debug('Integrated {} along {} over {} intervals, error {}'.format(form.tag, path, len(info.intervals), error))
    return QuadratureResult(complex(result[0], result[1]) + offset, error)


def integrate_polyline(form, points, curve=None, lifted_w=None):
    """ Sum of integrals over the segments joining consecutive points """
    points = [complex(z) for z in points]
    value, error = 0j, 0.0
    for start, end in zip(points[:-1], points[1:]):
        part = integrate(form, PathSpec.segment(start, end), curve)
        value += part.value
        error += part.error
    if lifted_w is not None and form.tag == 'semiabelian':
        value += complex(lifted_w[1]) - complex(lifted_w[0])
    return QuadratureResult(value, error)


def default_cycle_base(curve):
    u, v = c.CYCLE_BASE
    return curve.lattice.point(u, v)


def crossing_count(i, base, ctx):
    """ Signed number of lattice rows the cycle base -> base + omega_i sweeps over when it is moved
    to base + q. The third kind cycle integral is the closed form plus 2 pi i times this count.
    """
    u0, v0 = ctx.curve.lattice.coordinates(complex(base))
    u1, v1 = ctx.curve.lattice.coordinates(complex(base) + ctx.q)
    if i == 1:
        return math.floor(v0) - math.floor(v1)
    return math.floor(u1) - math.floor(u0)


def cycle_integral(form, i, curve=None, base=None, seed=None):
    """ Integral over the cycle gamma_i realized as base -> base + omega_i.
    A base too close to the poles is re-drawn from a seeded generator.
    """
    curve = _form_curve(form, curve)
    if base is None:
        base = default_cycle_base(curve)
    rng = None
    for attempt in range(c.CYCLE_BASE_RETRIES):
        path = PathSpec.cycle(i, base)
        if path_clearance(form, path.realized(curve), curve) >= c.PATH_CLEARANCE:
            break
        if rng is None:
            rng = np.random.RandomState(random_seed() if seed is None else seed)
        u, v = rng.uniform(0.05, 0.95, size=2)
        base = curve.lattice.point(u, v)
        logger.warning('Cycle base collides with a pole, retrying with base {}'.format(base))
    else:
        raise PathError('no pole free base found for cycle {} of the {} form'.format(i, form.tag))
    result = integrate(form, path, curve)
    closed_form = form.closed_form_cycle(i, curve)
    correction = 0
    if form.tag in ('third', 'semiabelian'):
        correction = crossing_count(i, base, form.ctx)
        if correction:
            logger.debug('Cycle {} from {} crosses {} lattice rows, closed form shifted by {} 2 pi i'.format(
                i, base, abs(correction), correction))
        turns = int(round(((result.value - closed_form) / TWO_PI_I).real))
        if turns != correction:
            logger.warning('Cycle {} of the {} form is {} turns of 2 pi i off the closed form, crossings give {}'.format(
                i, form.tag, turns, correction))
    return CycleIntegral(result.value, result.error, closed_form, base, correction)


def residue_loop(form, center, curve=None, radius=None):
    """ Counter-clockwise loop integral around center. The default radius keeps every other pole
    well outside; a loop enclosing more than one pole is refused.
    """
    curve = _form_curve(form, curve)
    center = complex(center)
    if radius is None:
        radius = _default_radius(form, center, curve)
    path = PathSpec.loop(center, radius)
    inside = enclosed_poles(form, path, curve)
    if len(inside) > 1:
        raise PathError('loop of radius {} around {} encloses {} poles'.format(radius, center, len(inside)))
    return integrate(form, path, curve)


def _default_radius(form, center, curve):
    radius = 0.05 * min(abs(curve.frame.basis.omega1), abs(curve.frame.basis.omega2))
    circle = PathSpec.loop(center, radius)
    others = [abs(p - center) for point in form.singular_points()
              for p in circle.nearby_translates(point, curve.frame.basis) if abs(p - center) > c.POLE_TOL]
    if others:
        radius = min(radius, 0.25 * min(others))
    return radius


def residue_difference(value, expected):
    """ Distance used for log-type comparisons, modulo 2 pi i """
    return abs(reduce_mod_2pi_i(complex(value) - complex(expected)))
