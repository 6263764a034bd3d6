"""Laplacians, the transfer operator, and the structural identity."""

from fractions import Fraction

import pytest

from polyzeta import (Chain, check_laplacian_identity, inner_product,
                      laplacian, spectral_radius_bound, transfer_operator)
from polyzeta.dual_hodge import coboundary_chain
from polyzeta.spectral import emit_triplets

from helpers import ALL_FIXTURES, fixture, random_chain, rng, triangle_index


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_laplacian_identity(name):
    assert check_laplacian_identity(fixture(name))


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_laplacian_diagonal_is_shift(name):
    complex = fixture(name)
    lap = laplacian(complex, complex.dim - 1).matrix
    shift = complex.regularity_degree + 2
    assert all(lap[i][i] == shift for i in range(len(lap)))


def test_laplacian_case_entries_on_sphere():
    # triangles sharing an edge and a tetrahedron pair to zero; triangles
    # sharing nothing of codimension one or two also pair to zero
    s4 = fixture("s4")
    lap = laplacian(s4, 2).matrix
    t = transfer_operator(s4).matrix
    i = triangle_index(4, (0, 1, 2))
    j = triangle_index(4, (0, 1, 3))
    assert lap[i][j] == 0 and t[i][j] == 0
    k = triangle_index(4, (2, 3, 4))
    assert lap[i][k] == 0 and t[i][k] == 0


def test_laplacian_is_symmetric_and_energy_nonnegative():
    r = rng()
    for name in ("octahedron", "grid33", "s4"):
        complex = fixture(name)
        for degree in range(complex.dim + 1):
            lap = laplacian(complex, degree).matrix
            assert lap == tuple(zip(*[tuple(row) for row in lap])) or \
                all(lap[i][j] == lap[j][i] for i in range(len(lap))
                    for j in range(len(lap)))
            chain = random_chain(r, complex, degree)
            v = chain.to_vector()
            lv = [sum(Fraction(a) * b for a, b in zip(row, v))
                  for row in lap]
            energy = sum(x * y for x, y in zip(v, lv))
            parts = Fraction(0)
            if degree >= 1:
                b = chain.boundary()
                parts += inner_product(b, b)
            if degree < complex.dim:
                cb = coboundary_chain(complex, chain)
                parts += inner_product(cb, cb)
            assert energy == parts
            assert energy >= 0


def test_transfer_operator_shape():
    for name in ALL_FIXTURES:
        complex = fixture(name)
        t = transfer_operator(complex)
        assert t.size == complex.count(complex.dim - 1)
        assert all(t.matrix[i][i] == 0 for i in range(t.size))
        assert all(t.matrix[i][j] == t.matrix[j][i]
                   for i in range(t.size) for j in range(t.size))
        assert all(v in (-1, 0, 1) for row in t.matrix for v in row)


def test_transfer_row_support_octahedron():
    t = transfer_operator(fixture("octahedron"))
    assert all(sum(1 for v in row if v != 0) == 2 for v, row in
               zip(range(t.size), t.matrix))


def test_transfer_row_support_grid():
    # two ridge continuations plus two square crossings per edge
    t = transfer_operator(fixture("grid33"))
    assert all(sum(1 for v in row if v != 0) == 4 for row in t.matrix)


def test_transfer_zero_on_three_sphere():
    # every adjacent triangle pair of the 4-simplex boundary co-bounds
    t = transfer_operator(fixture("s4"))
    assert all(v == 0 for row in t.matrix for v in row)


def test_spectral_radius_bound_values():
    assert spectral_radius_bound(transfer_operator(fixture("octahedron"))) \
        == 2
    assert spectral_radius_bound(transfer_operator(fixture("grid33"))) == 4
    assert spectral_radius_bound(transfer_operator(fixture("s4"))) == 0
    assert spectral_radius_bound(transfer_operator(fixture("cube333"))) == 6


def test_emit_triplets():
    text = emit_triplets([[0, 2], [-1, 0]])
    assert text == "0 1 2\n1 0 -1\n"
