import cmath
import math

import pytest

from motive_periods.errors import PoleError, InputError
from motive_periods.lattice_core import curve_from_periods
from motive_periods.weierstrass_functions import (AffinePoint, wp_and_prime, wp, zeta, sigma, sigma_derivative,
                                                  quasi_periods, legendre_defect, elliptic_exp, elliptic_log)


def _points(curve, rng, count=6):
    return [curve.lattice.point(*rng.uniform(0.1, 0.9, size=2)) for _ in range(count)]


def test_poles_on_the_lattice(generic_curve):
    with pytest.raises(PoleError):
        wp_and_prime(0, generic_curve)
    with pytest.raises(PoleError):
        zeta(generic_curve.omega1 - 2 * generic_curve.omega2, generic_curve)
    assert abs(sigma(generic_curve.omega2, generic_curve)) <= 1e-12


def test_laurent_leading_terms(tilted_curve):
    z = 1e-3 * (0.6 + 0.8j)
    assert abs(z * z * wp(z, tilted_curve) - 1) <= 1e-6
    assert abs(z * zeta(z, tilted_curve) - 1) <= 1e-6
    assert abs(sigma(z, tilted_curve) / z - 1) <= 1e-6


def test_ode_residual(generic_curve, tilted_curve, rng):
    for curve in (generic_curve, tilted_curve):
        for z in _points(curve, rng):
            x, y = wp_and_prime(z, curve)
            rhs = 4 * x ** 3 - curve.g2 * x - curve.g3
            assert abs(y * y - rhs) <= 1e-8 * max(1.0, abs(y) ** 2)


def test_parity(tilted_curve, rng):
    for z in _points(tilted_curve, rng):
        x, y = wp_and_prime(z, tilted_curve)
        xm, ym = wp_and_prime(-z, tilted_curve)
        assert abs(x - xm) <= 1e-9 * max(1, abs(x))
        assert abs(y + ym) <= 1e-9 * max(1, abs(y))
        assert abs(zeta(z, tilted_curve) + zeta(-z, tilted_curve)) <= 1e-9
        assert abs(sigma(z, tilted_curve) + sigma(-z, tilted_curve)) <= 1e-9


def test_periodicity_and_quasi_periodicity(tilted_curve, rng):
    curve = tilted_curve
    for z in _points(curve, rng):
        for i in (1, 2):
            omega, eta = curve.period(i), curve.quasi_period(i)
            assert abs(wp(z + omega, curve) - wp(z, curve)) <= 1e-9 * max(1, abs(wp(z, curve)))
            assert abs(zeta(z + omega, curve) - zeta(z, curve) - eta) <= 1e-9 * max(1, abs(zeta(z, curve)))
            expected = -sigma(z, curve) * cmath.exp(eta * (z + omega / 2))
            assert abs(sigma(z + omega, curve) - expected) <= 1e-9 * max(1, abs(expected))


def test_far_arguments_match_direct_evaluation(generic_curve):
    z = generic_curve.lattice.point(0.31, 0.42)
    far = z + generic_curve.lattice.point(7, -5)
    assert abs(wp(far, generic_curve) - wp(z, generic_curve)) <= 1e-9 * abs(wp(z, generic_curve))
    eta = 7 * generic_curve.eta1 - 5 * generic_curve.eta2
    assert abs(zeta(far, generic_curve) - zeta(z, generic_curve) - eta) <= 1e-8


def test_derivatives_by_finite_differences(generic_curve, rng):
    h = 1e-5
    for z in _points(generic_curve, rng, 3):
        dzeta = (zeta(z + h, generic_curve) - zeta(z - h, generic_curve)) / (2 * h)
        assert abs(dzeta + wp(z, generic_curve)) <= 1e-6 * max(1, abs(wp(z, generic_curve)))
        dlog = (sigma(z + h, generic_curve) - sigma(z - h, generic_curve)) / (2 * h * sigma(z, generic_curve))
        assert abs(dlog - zeta(z, generic_curve)) <= 1e-6 * max(1, abs(zeta(z, generic_curve)))


def test_sigma_derivative_is_sigma_times_zeta(tilted_curve, rng):
    for z in _points(tilted_curve, rng, 4) + [tilted_curve.omega1 + 0.2]:
        expected = sigma(z, tilted_curve) * zeta(z, tilted_curve)
        assert abs(sigma_derivative(z, tilted_curve) - expected) <= 1e-9 * max(1, abs(expected))
    assert abs(sigma_derivative(0, tilted_curve) - 1) <= 1e-12


def test_pseudo_addition(generic_curve, rng):
    z, y = _points(generic_curve, rng, 2)
    lhs = zeta(z + y, generic_curve) - zeta(z, generic_curve) - zeta(y, generic_curve)
    wp_z, wp_prime_z = wp_and_prime(z, generic_curve)
    wp_y, wp_prime_y = wp_and_prime(y, generic_curve)
    assert abs(lhs - 0.5 * (wp_prime_z - wp_prime_y) / (wp_z - wp_y)) <= 1e-9 * max(1, abs(lhs))


def test_quasi_periods_and_legendre(generic_curve, square_curve):
    for curve in (generic_curve, square_curve):
        eta1, eta2 = quasi_periods(curve)
        assert abs(eta1 - curve.eta1) <= 1e-9
        assert abs(eta2 - curve.eta2) <= 1e-9
        assert abs(legendre_defect(curve)) <= 1e-9
        assert abs(legendre_defect(curve, (eta1, eta2))) <= 1e-9


def test_quasi_period_scaling():
    lam = 1.5 - 0.5j
    curve = curve_from_periods(1, 0.3 + 1.1j)
    scaled = curve_from_periods(lam, lam * (0.3 + 1.1j))
    assert abs(scaled.eta1 - curve.eta1 / lam) <= 1e-9
    assert abs(scaled.eta2 - curve.eta2 / lam) <= 1e-9


def test_elliptic_exp_and_log(tilted_curve, rng):
    assert elliptic_exp(0, tilted_curve).at_infinity
    assert elliptic_exp(tilted_curve.omega2, tilted_curve).at_infinity
    assert elliptic_log(AffinePoint.infinity(), tilted_curve) == 0
    for z in _points(tilted_curve, rng, 4):
        point = elliptic_exp(z, tilted_curve)
        assert point.curve_residual(tilted_curve) <= 1e-9
        log = elliptic_log(point, tilted_curve)
        assert elliptic_exp(log, tilted_curve).distance(point) <= 1e-9
        assert tilted_curve.distance_to_lattice(log - z) <= 1e-8


def test_elliptic_log_of_two_torsion(generic_curve):
    e1 = generic_curve.roots()[0]
    z = elliptic_log(AffinePoint(e1, 0), generic_curve)
    assert generic_curve.distance_to_lattice(2 * z) <= 1e-7
    assert generic_curve.distance_to_lattice(z) > 0.1
    assert abs(wp(z, generic_curve) - e1) <= 1e-8 * max(1, abs(e1))


@pytest.mark.parametrize('name', ['generic_curve', 'tilted_curve', 'square_curve'])
def test_elliptic_log_inverts_exp_at_every_half_period(name, request):
    curve = request.getfixturevalue(name)
    for half in (curve.omega1 / 2, curve.omega2 / 2, (curve.omega1 + curve.omega2) / 2):
        point = elliptic_exp(half, curve)
        log = elliptic_log(point, curve)
        assert curve.distance_to_lattice(log - half) <= 1e-9
        assert elliptic_exp(log, curve).distance(point) <= 1e-9


def test_elliptic_log_rejects_points_off_the_curve(generic_curve):
    with pytest.raises(InputError):
        elliptic_log(AffinePoint(1.0, 5.0), generic_curve)


def test_affine_point_json():
    point = AffinePoint(1 + 2j, -0.5j)
    again = AffinePoint.from_json(point.to_json())
    assert again.distance(point) == 0
    assert AffinePoint.from_json({'at_infinity': True}).at_infinity
    assert AffinePoint.infinity().distance(point) == math.inf
