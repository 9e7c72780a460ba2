from fractions import Fraction

from motive_periods.errors import InputError
from motive_periods.galois.quadratic_field import QuadraticFieldScalar

"""
Exact Gaussian elimination over Q (Fraction entries) or over an imaginary quadratic field
(QuadraticFieldScalar entries).
"""


def _exact(value, field_path):
    if isinstance(value, (QuadraticFieldScalar, Fraction)):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise InputError('expected an exact scalar, got {!r}'.format(value), field_path)


def rank_over_field(relations, num_symbols):
    """ Rank of the span of the relation vectors, each of length num_symbols """
    rows = []
    for idx, relation in enumerate(relations):
        if len(relation) != num_symbols:
            raise InputError('relation has {} coefficients, expected {}'.format(len(relation), num_symbols),
                             'relations[{}]'.format(idx))
        rows.append([_exact(x, 'relations[{}]'.format(idx)) for x in relation])
    rank = 0
    for col in range(num_symbols):
        pivot = next((idx for idx in range(rank, len(rows)) if rows[idx][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for idx in range(len(rows)):
            if idx != rank and rows[idx][col] != 0:
                factor = rows[idx][col]
                rows[idx] = [x - factor * y for x, y in zip(rows[idx], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def quotient_dimension(relations, num_symbols):
    """ Dimension of the symbol space modulo the relations """
    return num_symbols - rank_over_field(relations, num_symbols)
