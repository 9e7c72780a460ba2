import os

import numpy as np
import pytest

from motive_periods.lattice_core import CMDescriptor, curve_from_periods
from motive_periods.one_motive import OneMotiveSpec

SAMPLES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'samples')


@pytest.fixture(scope='session')
def sample_path():
    return lambda name: os.path.join(SAMPLES_DIR, name)


@pytest.fixture(scope='session')
def generic_curve():
    return curve_from_periods(1.0, 0.3 + 1.1j)


@pytest.fixture(scope='session')
def square_curve():
    return curve_from_periods(1.0, 1j, cm=CMDescriptor(-4))


@pytest.fixture(scope='session')
def tilted_curve():
    return curve_from_periods(0.8 + 0.6j, -0.4 + 1.3j)


@pytest.fixture
def rng():
    return np.random.RandomState(7)


@pytest.fixture(scope='session')
def generic_motive(generic_curve):
    p = generic_curve.lattice.point(0.23, 0.41)
    q = generic_curve.lattice.point(0.57, 0.19)
    return OneMotiveSpec([generic_curve], [[q]], [[p]], [[[0.4 + 0.3j]]])


@pytest.fixture(scope='session')
def cm_motive(square_curve):
    p = square_curve.lattice.point(0.23, 0.41)
    q = square_curve.lattice.point(0.57, 0.19)
    return OneMotiveSpec([square_curve], [[q]], [[p]], [[[0.4 + 0.3j]]])
