"""Orientation independence: flipping stored signs changes nothing observable.

Reorienting a cell negates its boundary row and its sign inside every
coface row.  The transfer operator is conjugated by a diagonal sign matrix
(ridge and top-cell mediations see both endpoints of a flip), so traces,
the zeta polynomial, Betti numbers and the structural identity must all
survive any flip pattern exactly.
"""

import pytest

from polyzeta import (PolyComplex, betti, check_laplacian_identity,
                      signed_length_spectrum, transfer_operator, validate)
from polyzeta.zeta import zeta_of_complex

from helpers import fixture, rng


def flip_orientations(complex, flips):
    """A copy of the complex with the given cells reoriented.

    ``flips`` maps dimension to a set of cell indices; the boundary data
    changes sign once per flipped cell and once per flipped face.
    """
    boundaries = [()]
    for k in range(1, complex.dim + 1):
        cell_flips = flips.get(k, set())
        face_flips = flips.get(k - 1, set())
        rows = []
        for i, row in enumerate(complex.boundaries[k]):
            outer = -1 if i in cell_flips else 1
            rows.append(tuple(
                (f, s * outer * (-1 if f in face_flips else 1))
                for f, s in row))
        boundaries.append(tuple(rows))
    return PolyComplex(complex.dim, complex.cell_counts, boundaries)


def random_flips(r, complex):
    return {k: {i for i in range(complex.count(k)) if r.random() < 0.4}
            for k in range(complex.dim + 1)}


@pytest.mark.parametrize("name", ("octahedron", "grid33", "s4"))
def test_everything_survives_random_reorientation(name):
    complex = fixture(name)
    r = rng(314159)
    base_zeta = zeta_of_complex(complex).coefficients
    base_betti = [betti(complex, k) for k in range(complex.dim + 1)]
    for _ in range(3):
        flipped = flip_orientations(complex, random_flips(r, complex))
        assert validate(flipped).passed
        assert flipped.regularity_degree == complex.regularity_degree
        assert check_laplacian_identity(flipped)
        assert zeta_of_complex(flipped).coefficients == base_zeta
        assert [betti(flipped, k) for k in range(flipped.dim + 1)] == \
            base_betti


def test_transfer_is_diagonal_conjugate_under_flips():
    complex = fixture("grid33")
    r = rng(2718)
    flips = random_flips(r, complex)
    flipped = flip_orientations(complex, flips)
    t_old = transfer_operator(complex).matrix
    t_new = transfer_operator(flipped).matrix
    n1 = complex.dim - 1
    signs = [-1 if i in flips.get(n1, set()) else 1
             for i in range(complex.count(n1))]
    for i in range(len(t_old)):
        for j in range(len(t_old)):
            assert t_new[i][j] == signs[i] * t_old[i][j] * signs[j]


def test_signed_spectrum_survives_reorientation():
    complex = fixture("octahedron")
    r = rng(999)
    flipped = flip_orientations(complex, random_flips(r, complex))
    assert signed_length_spectrum(flipped, 6) == \
        signed_length_spectrum(complex, 6)
