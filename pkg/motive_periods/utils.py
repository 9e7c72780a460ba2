import logging
import os
import json
from datetime import datetime
from fractions import Fraction

import numpy as np

from motive_periods import constants as c
from motive_periods.errors import InputError

"""
A small library of helper functions used throughout the motive_periods package:
logging setup, environment configuration and JSON (de)serialization of complex values
"""


def set_log_level(logger):
    """ Grabs log level from the LOG_LEVEL environment variable """
    try:
        level = os.environ['LOG_LEVEL'].upper()
        logger.setLevel(getattr(logging, level))
    except Exception as e:
        logger.setLevel(logging.INFO)


def setup_logger(name):
    """ Sets up a logger, grabbing log_level from the environment """
    logging.basicConfig()
    logger = logging.getLogger(name)
    try:
        set_log_level(logger)
    except Exception as e:
        logger.setLevel(logging.INFO)
        logger.warning('Failed to set log level with exception {}'.format(e))
    return logger


def random_seed():
    """ Seed for randomized verification points, read from MOTIVE_PERIODS_SEED """
    value = os.environ.get(c.SEED_ENV_VAR)
    if value is None:
        return c.DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise InputError('expected an integer, got {}'.format(value), c.SEED_ENV_VAR)


def makedirs_p(dir_path):
    """ Makes the directories up to dir_path if they don't exist """
    if dir_path and not os.path.isdir(dir_path):
        os.makedirs(dir_path)


class Notify(object):
    """Colorful printing prefix.
    A quick example:
    print(Notify.INFO, YOUR TEXT, Notify.ENDC)
    """

    @staticmethod
    def _stamp(code):
        return str(datetime.now()) + ': ' + code

    @classmethod
    def info(cls):
        return cls._stamp('\033[92mPASS')

    @classmethod
    def fail(cls):
        return cls._stamp('\033[91mFAIL')

    @classmethod
    def warning(cls):
        return cls._stamp('\033[93mW')
    ENDC = '\033[0m'


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(value, field_path=None):
    """ Accepts [re, im] or a plain JSON number """
    if isinstance(value, bool):
        raise InputError('expected a complex number, got a boolean', field_path)
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise InputError('expected [re, im], got {}'.format(value), field_path)


def complex_array_from_json(value, shape, field_path):
    """ Parses a nested list of complex values and checks it has the given shape """
    def parse(item, dims, path):
        if not dims:
            return complex_from_json(item, path)
        if not isinstance(item, (list, tuple)) or len(item) != dims[0]:
            raise InputError('expected a list of length {}'.format(dims[0]), path)
        return [parse(sub, dims[1:], '{}[{}]'.format(path, idx)) for idx, sub in enumerate(item)]
    if value is None:
        value = _empty_nested(shape)
    return np.array(parse(value, list(shape), field_path), dtype=complex).reshape(shape)


def _empty_nested(shape):
    if not shape:
        return 0j
    return [_empty_nested(shape[1:]) for _ in range(shape[0])]


def complex_array_to_json(array):
    array = np.asarray(array, dtype=complex)
    if array.ndim == 0:
        return complex_to_json(array)
    return [complex_array_to_json(sub) for sub in array]


def fraction_from_json(value, field_path=None):
    """ Exact rationals are ints or strings such as "-3/4" """
    if isinstance(value, bool):
        raise InputError('expected a rational, got a boolean', field_path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            pass
    raise InputError('expected a rational, got {}'.format(value), field_path)


def _encode(obj, indent, level):
    pad = ' ' * (indent * (level + 1))
    close = ' ' * (indent * level)
    if obj is None:
        return 'null'
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not np.isfinite(obj):
            raise ValueError('cannot serialize non finite float {}'.format(obj))
        return '{:.17g}'.format(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode(complex_to_json(obj), indent, level)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        if all(not isinstance(item, (list, tuple, dict, np.ndarray)) for item in obj):
            return '[' + ', '.join(_encode(item, indent, level) for item in obj) + ']'
        items = [pad + _encode(item, indent, level + 1) for item in obj]
        return '[\n' + ',\n'.join(items) + '\n' + close + ']'
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [pad + json.dumps(str(key)) + ': ' + _encode(value, indent, level + 1)
                 for key, value in obj.items()]
        return '{\n' + ',\n'.join(items) + '\n' + close + '}'
    raise TypeError('cannot serialize {}'.format(type(obj)))


def dumps_json(obj, indent=2):
    """ Deterministic JSON: insertion ordered keys, floats with 17 significant digits """
    return _encode(obj, indent, 0) + '\n'


def load_json(path):
    """ Loads a JSON document, turning parse failures into InputError """
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except IOError as e:
        raise InputError('cannot read file ({})'.format(e), path)
    except ValueError as e:
        raise InputError('malformed JSON ({})'.format(e), path)


def write_text(text, path=None):
    """ Writes text to path, or to stdout when no path is given """
    if path is None:
        print(text, end='')
        return
    makedirs_p(os.path.dirname(path))
    with open(path, 'w') as f:
        f.write(text)
