"""Shared fixture builders and small oracles for the test suite."""

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from polyzeta import (Chain, build_dual, cube_torus, grid_torus, octahedron,
                      simplex_boundary)
from polyzeta.complex_core import cubical_torus


@lru_cache(maxsize=None)
def fixture(name):
    builders = {
        "octahedron": octahedron,
        "grid33": lambda: grid_torus(3, 3),
        "grid45": lambda: grid_torus(4, 5),
        "s3": lambda: simplex_boundary(3),
        "s4": lambda: simplex_boundary(4),
        "s5": lambda: simplex_boundary(5),
        "cube333": lambda: cube_torus(3, 3, 3),
    }
    return builders[name]()


ACCEPTANCE_FIXTURES = ("octahedron", "grid33", "grid45", "s3", "s4", "s5")
ALL_FIXTURES = ACCEPTANCE_FIXTURES + ("cube333",)


@lru_cache(maxsize=None)
def dual_of(name):
    return build_dual(fixture(name))


def bad_grid_2x2():
    """The 2x2 grid torus: parallel edges share both endpoints and two faces."""
    return cubical_torus((2, 2))


def random_chain(rng, complex, degree, density=0.5, span=4):
    coeffs = {}
    for cell in range(complex.count(degree)):
        if rng.random() < density:
            num = rng.randint(-span, span)
            den = rng.randint(1, 3)
            coeffs[cell] = Fraction(num, den)
    return Chain(complex, degree, coeffs)


def random_int_chain(rng, complex, degree, density=0.5, span=3):
    coeffs = {cell: rng.randint(-span, span)
              for cell in range(complex.count(degree))
              if rng.random() < density}
    return Chain(complex, degree, coeffs)


def rng(seed=20260811):
    return random.Random(seed)


def triangle_index(d, triple):
    """Index of a sorted vertex triple among the 2-cells of simplex_boundary(d)."""
    tris = sorted(itertools.combinations(range(d + 1), 3))
    return tris.index(tuple(sorted(triple)))


def sphere_knot_pair():
    """The named linking fixture on the boundary of the 4-simplex.

    k1 bounds the triangle on vertices (0,1,2); k2 is the dual 3-cycle
    crossing the faces (0,1,2), (0,1,4), (0,1,3).
    """
    s4 = fixture("s4")
    dual = dual_of("s4")
    k1 = Chain.basis(s4, 2, triangle_index(4, (0, 1, 2))).boundary()
    support = [triangle_index(4, t) for t in ((0, 1, 2), (0, 1, 4),
                                              (0, 1, 3))]
    k2 = Chain(dual.dual, 1, {c: 1 for c in support})
    assert all(v == 0 for v in k2.boundary().to_vector())
    return s4, dual, k1, k2


def torus_knot_pair(face=0, edge=0):
    """Small null-homologous pair on the cubical 3-torus.

    k1 bounds one square; k2 is the dual loop around one edge.  The linking
    number is the signed incidence of the edge in the square's boundary.
    """
    ct = fixture("cube333")
    dual = dual_of("cube333")
    k1 = Chain.basis(ct, 2, face).boundary()
    k2 = Chain.basis(dual.dual, 2, edge).boundary()
    return ct, dual, k1, k2
