from fractions import Fraction

import numpy as np
import pytest

from motive_periods.galois.quadratic_field import QuadraticFieldScalar
from motive_periods.galois.rank import rank_over_field, quotient_dimension
from motive_periods.verification import mixed_rows


def _random_relations(rng):
    rows, cols = [int(x) for x in rng.randint(1, 7, size=2)]
    inner = int(rng.randint(1, min(rows, cols) + 1))
    matrix = rng.randint(-3, 4, size=(rows, inner)).dot(rng.randint(-3, 4, size=(inner, cols)))
    return [[int(x) for x in row] for row in matrix], cols


def test_rank_matches_a_floating_rank(rng):
    for _ in range(40):
        relations, cols = _random_relations(rng)
        assert rank_over_field(relations, cols) == np.linalg.matrix_rank(np.array(relations, dtype=float))


def test_rank_is_invariant_under_row_operations(rng):
    for _ in range(40):
        relations, cols = _random_relations(rng)
        mixed = mixed_rows(relations, rng)
        assert len(mixed) == len(relations)
        assert rank_over_field(mixed, cols) == rank_over_field(relations, cols)


def test_duplicate_rows_do_not_change_the_rank(rng):
    for _ in range(40):
        relations, cols = _random_relations(rng)
        duplicated = relations + [list(row) for row in relations]
        assert rank_over_field(duplicated, cols) == rank_over_field(relations, cols)


def test_quotient_dimension_never_grows(rng):
    for _ in range(40):
        relations, cols = _random_relations(rng)
        dims = [quotient_dimension([], cols)]
        for idx in range(len(relations)):
            dims.append(quotient_dimension(relations[:idx + 1], cols))
        assert dims[0] == cols
        assert all(0 <= earlier - later <= 1 for earlier, later in zip(dims, dims[1:]))
        assert dims[-1] == cols - rank_over_field(relations, cols)


@pytest.mark.parametrize('discriminant', [-3, -4, -7])
def test_quadratic_field_rank_is_invariant_under_scaling_by_gamma(discriminant):
    gamma = QuadraticFieldScalar(0, 1, discriminant)
    one = QuadraticFieldScalar(1, 0, discriminant)
    rows = [[one, gamma, one + gamma], [gamma, one, gamma * gamma]]
    scaled = [[gamma * x for x in rows[0]], [x + gamma * y for x, y in zip(rows[1], rows[0])]]
    assert rank_over_field(scaled, 3) == rank_over_field(rows, 3) == 2
    assert rank_over_field(rows + [[Fraction(3) * x for x in rows[0]]], 3) == 2
