"""Exact linear algebra against brute-force oracles."""

import itertools
import random
from fractions import Fraction

import pytest

from polyzeta import exact


def brute_determinant(m):
    """Permutation-expansion determinant: the independent oracle."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def random_matrix(rng, rows, cols, span=4):
    return [[rng.randint(-span, span) for _ in range(cols)]
            for _ in range(rows)]


def test_determinant_matches_permutation_expansion():
    rng = random.Random(7)
    for n in (1, 2, 3, 4):
        for _ in range(8):
            m = random_matrix(rng, n, n)
            assert exact.determinant(m) == brute_determinant(m)


def test_charpoly_matches_determinant_at_sample_points():
    rng = random.Random(11)
    for n in (1, 2, 3, 4):
        for _ in range(6):
            m = random_matrix(rng, n, n)
            coeffs = exact.charpoly(m)
            assert coeffs[0] == 1
            assert len(coeffs) == n + 1
            for x in (-2, -1, 0, 1, 2, 3):
                shifted = [[x * (i == j) - m[i][j] for j in range(n)]
                           for i in range(n)]
                value = sum(c * x ** (n - k) for k, c in enumerate(coeffs))
                assert value == brute_determinant(shifted)


def test_charpoly_stays_integer():
    rng = random.Random(13)
    m = random_matrix(rng, 6, 6)
    assert all(isinstance(c, int) for c in exact.charpoly(m))


def test_rank_and_nullspace():
    rng = random.Random(17)
    for rows, cols in ((3, 5), (5, 3), (4, 4), (6, 2)):
        for _ in range(6):
            m = random_matrix(rng, rows, cols)
            r = exact.rank(m)
            basis = exact.nullspace(m)
            assert r + len(basis) == cols
            for v in basis:
                assert all(x == 0 for x in exact.mat_vec(m, v))


def test_solve_consistent_and_inconsistent():
    rng = random.Random(19)
    for _ in range(10):
        m = random_matrix(rng, 4, 3)
        x0 = [Fraction(rng.randint(-3, 3), rng.randint(1, 3))
              for _ in range(3)]
        b = exact.mat_vec(m, x0)
        x = exact.solve(m, b)
        assert x is not None
        assert exact.mat_vec(m, x) == b
    # a visibly inconsistent system
    m = [[1, 0], [1, 0]]
    assert exact.solve(m, [1, 2]) is None


def test_solve_invertible_raises_on_singular():
    with pytest.raises(exact.SingularMatrixError):
        exact.solve_invertible([[1, 2], [2, 4]], [1, 1])
    assert exact.solve_invertible([[2, 0], [0, 4]], [4, 8]) == [2, 2]


def test_matrix_helpers():
    a = [[1, 2], [3, 4]]
    b = [[0, 1], [1, 0]]
    assert exact.mat_mul(a, b) == [[2, 1], [4, 3]]
    assert exact.transpose(a) == [[1, 3], [2, 4]]
    assert exact.mat_add(a, b) == [[1, 3], [4, 4]]
    assert exact.mat_sub(a, b) == [[1, 1], [2, 4]]
    assert exact.identity(2) == [[1, 0], [0, 1]]
    assert exact.mat_vec(a, [1, 1]) == [3, 7]
