"""Betti numbers, Hodge decomposition, pseudo-inverse, linking oracle."""

from fractions import Fraction

import pytest

from polyzeta import (Chain, betti, inner_product, laplacian, linking_oracle,
                      pseudo_inverse_apply)
from polyzeta.homology import (NullHomologyError, harmonic_projection,
                               hodge_decomposition, require_null_homologous)
from polyzeta import exact

from helpers import (ALL_FIXTURES, dual_of, fixture, random_chain,
                     random_int_chain, rng, sphere_knot_pair,
                     torus_knot_pair)


def test_betti_values():
    assert betti(fixture("grid33"), 1) == 2
    assert betti(fixture("octahedron"), 0) == 1
    assert betti(fixture("s4"), 2) == 0
    assert betti(fixture("s4"), 3) == 1
    assert [betti(fixture("cube333"), k) for k in range(4)] == [1, 3, 3, 1]
    assert [betti(fixture("s5"), k) for k in range(5)] == [1, 0, 0, 0, 1]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_poincare_duality_on_orientable_fixtures(name):
    complex = fixture(name)
    assert betti(complex, 1) == betti(complex, complex.dim - 1)
    assert betti(complex, 0) == betti(complex, complex.dim)


@pytest.mark.parametrize("name", ("octahedron", "grid33", "s4"))
def test_hodge_decomposition_dimensions_and_orthogonality(name):
    complex = fixture(name)
    for k in range(complex.dim + 1):
        dec = hodge_decomposition(complex, k)
        assert len(dec.harmonic_basis) == betti(complex, k)
        total = (len(dec.harmonic_basis) + len(dec.boundary_basis)
                 + len(dec.coboundary_basis))
        assert total == complex.count(k)
        for u in dec.boundary_basis:
            for v in dec.coboundary_basis:
                assert exact.dot(u, v) == 0
            for h in dec.harmonic_basis:
                assert exact.dot(u, h) == 0
        for v in dec.coboundary_basis:
            for h in dec.harmonic_basis:
                assert exact.dot(v, h) == 0


def test_pseudo_inverse_kills_harmonics():
    complex = fixture("grid33")
    dec = hodge_decomposition(complex, 1)
    assert dec.harmonic_basis
    h = Chain.from_vector(complex, 1, dec.harmonic_basis[0])
    assert pseudo_inverse_apply(complex, 1, h).coefficients == {}


def test_pseudo_inverse_inverts_on_boundaries():
    r = rng()
    complex = fixture("grid33")
    lap = laplacian(complex, 1).matrix
    for _ in range(5):
        v = random_chain(r, complex, 2).boundary()
        image = pseudo_inverse_apply(complex, 1, v)
        back = [sum(Fraction(a) * b for a, b in zip(row,
                                                    image.to_vector()))
                for row in lap]
        assert back == v.to_vector()


def test_pseudo_inverse_of_laplacian_is_complement_of_projection():
    r = rng()
    for name in ("octahedron", "grid33"):
        complex = fixture(name)
        lap = laplacian(complex, 1).matrix
        for _ in range(3):
            v = random_chain(r, complex, 1)
            lv = Chain.from_vector(
                complex, 1,
                [sum(Fraction(a) * b for a, b in zip(row, v.to_vector()))
                 for row in lap])
            kv = pseudo_inverse_apply(complex, 1, lv)
            harm = harmonic_projection(complex, 1, v.to_vector())
            want = [a - b for a, b in zip(v.to_vector(), harm)]
            assert kv.to_vector() == want


def test_require_null_homologous():
    ct = fixture("cube333")
    line = Chain(ct, 1, {i: 1 for i in range(3)})  # a straight 1-cycle
    assert all(v == 0 for v in line.boundary().to_vector())
    with pytest.raises(NullHomologyError):
        require_null_homologous(line)
    square = Chain.basis(ct, 2, 0).boundary()
    filled = require_null_homologous(square)
    assert filled.boundary() == square


def test_linking_oracle_sphere_fixture():
    s4, dual, k1, k2 = sphere_knot_pair()
    value = linking_oracle(s4, dual, k1, k2)
    assert abs(value) == 1


def test_linking_oracle_direct_intersection_count():
    # independent oracle: solve d sigma = k1 and pair sigma with star k2
    from polyzeta.dual_hodge import star
    s4, dual, k1, k2 = sphere_knot_pair()
    sigma = exact.solve(s4.boundary_matrix(2), k1.to_vector())
    direct = exact.dot(sigma, star(dual, k2).to_vector())
    assert linking_oracle(s4, dual, k1, k2) == direct


def test_linking_oracle_torus_values():
    ct, dual, k1, k2 = torus_knot_pair(face=0, edge=0)
    boundary_signs = dict(ct.boundaries[2][0])
    assert abs(linking_oracle(ct, dual, k1, k2)) == 1
    far = torus_knot_pair(face=0, edge=40)
    assert linking_oracle(*far) == 0
    for edge, sign in boundary_signs.items():
        _, _, k1e, k2e = torus_knot_pair(face=0, edge=edge)
        assert abs(linking_oracle(ct, dual, k1e, k2e)) == 1


def test_linking_oracle_bilinearity():
    s4, dual, k1, k2 = sphere_knot_pair()
    base = linking_oracle(s4, dual, k1, k2)
    assert linking_oracle(s4, dual, k1, 2 * k2) == 2 * base
    assert linking_oracle(s4, dual, 3 * k1, k2) == 3 * base


def test_linking_oracle_homology_invariance_in_the_complement():
    # moving a knot by a boundary leaves the pairing alone exactly when the
    # moving 2-chain stays clear of the cells the other knot crosses;
    # crossing them shifts the value by the intersection count
    r = rng()
    ct, dual, k1, k2 = torus_knot_pair(face=0, edge=0)
    base = linking_oracle(ct, dual, k1, k2)
    crossed = set(k2.coefficients)          # star transport is a reindex
    dual_crossed = set(k1.coefficients)
    for _ in range(3):
        w = random_int_chain(r, ct, 2, density=0.2)
        w = Chain(ct, 2, {c: v for c, v in w.coefficients.items()
                          if c not in crossed})
        assert linking_oracle(ct, dual, k1 + w.boundary(), k2) == base
        wd = random_int_chain(r, dual.dual, 2, density=0.2)
        wd = Chain(dual.dual, 2, {c: v for c, v in wd.coefficients.items()
                                  if c not in dual_crossed})
        assert linking_oracle(ct, dual, k1, k2 + wd.boundary()) == base


def test_linking_oracle_crossing_move_shifts_by_intersection():
    ct, dual, k1, k2 = torus_knot_pair(face=0, edge=0)
    base = linking_oracle(ct, dual, k1, k2)
    from polyzeta.dual_hodge import star
    w = Chain.basis(ct, 2, next(iter(k2.coefficients)))
    moved = linking_oracle(ct, dual, k1 + w.boundary(), k2)
    assert moved == base + inner_product(w, star(dual, k2))
    assert moved != base


def test_linking_oracle_rejects_essential_cycles():
    ct = fixture("cube333")
    dual = dual_of("cube333")
    line = Chain(ct, 1, {i: 1 for i in range(3)})
    k2 = Chain.basis(dual.dual, 2, 0).boundary()
    with pytest.raises(NullHomologyError):
        linking_oracle(ct, dual, line, k2)
