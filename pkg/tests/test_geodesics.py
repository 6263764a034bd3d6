"""Closed geodesic enumeration against matrix traces; orthogeodesics."""

import itertools
from collections import Counter

import pytest

from polyzeta import (Chain, closed_geodesics, orthogeodesics,
                      signed_length_spectrum, transfer_operator)
from polyzeta.geodesics import orthogeodesic_length_sums
from polyzeta.linking import transfer_length_sums
from polyzeta import exact

from helpers import dual_of, fixture, sphere_knot_pair, triangle_index


def matrix_traces(complex, max_k):
    t = transfer_operator(complex)
    power = [list(row) for row in t.matrix]
    traces = {}
    for k in range(1, max_k + 1):
        traces[k] = sum(power[i][i] for i in range(t.size))
        if k < max_k:
            power = exact.mat_mul(power, t.matrix)
    return traces


@pytest.mark.parametrize("name", ("octahedron", "grid33", "s3", "s4"))
def test_no_length_one_classes(name):
    assert closed_geodesics(fixture(name), 1) == []


def test_octahedron_classes_live_on_equators():
    verts = range(6)
    edges = [e for e in itertools.combinations(verts, 2)
             if e[0] // 2 != e[1] // 2]
    eidx = {e: i for i, e in enumerate(edges)}
    equators = [
        {eidx[e] for e in ((0, 2), (0, 3), (1, 2), (1, 3))},
        {eidx[e] for e in ((0, 4), (0, 5), (1, 4), (1, 5))},
        {eidx[e] for e in ((2, 4), (2, 5), (3, 4), (3, 5))},
    ]
    classes = closed_geodesics(fixture("octahedron"), 4)
    assert Counter(g.length for g in classes) == {2: 12, 4: 30}
    for g in classes:
        assert any(set(g.cells) <= eq for eq in equators)


def test_grid_straight_lines_appear_in_both_directions():
    classes = {g.cells for g in closed_geodesics(fixture("grid33"), 3)
               if g.length == 3}

    def canon(seq):
        seq = tuple(seq)
        return min(seq[i:] + seq[:i] for i in range(len(seq)))

    lines = set()
    for j in range(3):
        line = [i + 3 * j for i in range(3)]          # horizontal edges
        lines.add(canon(line))
        lines.add(canon(line[::-1]))
    for i in range(3):
        line = [9 + i + 3 * j for j in range(3)]      # vertical edges
        lines.add(canon(line))
        lines.add(canon(line[::-1]))
    assert len(lines) == 12
    assert lines <= classes


def test_canonical_rotation_and_periods():
    classes = closed_geodesics(fixture("octahedron"), 4)
    for g in classes:
        rotations = [g.cells[i:] + g.cells[:i] for i in range(g.length)]
        assert g.cells == min(rotations)
        assert g.length % g.primitive_length == 0
        root = g.cells[:g.primitive_length]
        assert g.cells == root * (g.length // g.primitive_length)
    cells = {g.cells for g in classes}
    assert len(cells) == len(classes)


def test_sign_of_powers():
    classes = closed_geodesics(fixture("octahedron"), 4)
    by_cells = {g.cells: g for g in classes}
    for g in classes:
        if g.length == 2:
            square = by_cells[g.cells * 2]
            assert square.sign == g.sign ** 2
            assert square.primitive_length == 2


def test_reversal_not_identified():
    classes = [g.cells for g in closed_geodesics(fixture("grid33"), 3)
               if g.length == 3]
    line = (0, 1, 2)
    rev = (0, 2, 1)
    assert line in classes and rev in classes


@pytest.mark.parametrize("name,max_k", [("octahedron", 8), ("grid33", 6),
                                        ("s3", 8), ("s4", 6)])
def test_signed_length_spectrum_equals_traces(name, max_k):
    complex = fixture(name)
    spectrum = signed_length_spectrum(complex, max_k)
    traces = matrix_traces(complex, max_k)
    assert spectrum == traces


def test_signed_length_spectrum_on_cube_torus():
    complex = fixture("cube333")
    assert signed_length_spectrum(complex, 4) == matrix_traces(complex, 4)


def test_orthogeodesics_named_sphere_fixture():
    s4, dual, k1, k2 = sphere_knot_pair()
    paths = orthogeodesics(s4, dual, k1, k2, 4)
    # the transfer operator vanishes on the 3-sphere, so only length one
    assert all(p.length == 1 for p in paths)
    abc = triangle_index(4, (0, 1, 2))
    assert any(p.cells == (abc,) for p in paths)
    assert sorted(abs(p.incidence) for p in paths) == [1, 1, 3]
    assert sum(p.sign * p.incidence for p in paths) == 5


def test_orthogeodesics_vacuous_case_is_empty():
    s4 = fixture("s4")
    dual = dual_of("s4")
    k1 = Chain.basis(s4, 2, triangle_index(4, (0, 1, 2))).boundary()
    support = [triangle_index(4, t) for t in ((0, 3, 4), (1, 3, 4),
                                              (2, 3, 4))]
    cols = [[dual.dual.boundary_matrix(1)[r][c] for c in support]
            for r in range(5)]
    coeffs = exact.nullspace(cols)[0]
    k2 = Chain(dual.dual, 1, {c: coeffs[i] for i, c in enumerate(support)})
    assert orthogeodesics(s4, dual, k1, k2, 3) == []


def test_orthogeodesic_sums_match_matrix_side_on_cube_torus():
    ct = fixture("cube333")
    dual = dual_of("cube333")
    k1 = Chain.basis(ct, 2, 0).boundary()
    k2 = Chain.basis(dual.dual, 2, 0).boundary()
    enum = orthogeodesic_length_sums(ct, dual, k1, k2, 5)
    mat = transfer_length_sums(ct, dual, k1, k2, 5)
    assert [int(x) for x in mat] == enum


def test_orthogeodesics_requires_dimension_three():
    g = fixture("grid33")
    with pytest.raises(ValueError, match="3-dimensional"):
        orthogeodesics(g, dual_of("grid33"), Chain.basis(g, 1, 0),
                       Chain.basis(dual_of("grid33").dual, 1, 0), 2)


def test_orthogeodesics_requires_integral_chains():
    from fractions import Fraction
    s4, dual, k1, k2 = sphere_knot_pair()
    half = Fraction(1, 2) * k1
    with pytest.raises(ValueError, match="integral"):
        orthogeodesics(s4, dual, half, k2, 2)
