"""Finite deck-group instantiation of the L2 machinery.

A cover is a complex with a free cyclic cell action commuting with the
boundary, a fundamental domain (one cell per orbit and dimension), and the
induced quotient complex.  Von Neumann traces are sums over the fundamental
domain, L2 Betti numbers are exact rational kernel dimensions divided by
the group order, and Fuglede-Kadison determinants are group-order-th roots
of pseudo-determinants.

Positive spectra are computed in floating point from the exact integer
matrices; the spectral mass at zero always comes from the exact rational
rank, never from a numerical threshold.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from . import exact
from .complex_core import (ComplexFormatError, PolyComplex, cubical_torus_cells,
                           grid_torus)
from .homology import betti
from .spectral import laplacian, transfer_operator


class CoverError(ValueError):
    """The data does not describe a free boundary-commuting cell action."""


class NonEquivariantError(ValueError):
    """An operator fails to commute with the deck action."""


@dataclass(frozen=True)
class CoverData:
    """A free cyclic action on a complex with a chosen fundamental domain.

    ``action[k]`` is the generator's permutation of k-cells,
    ``fundamental_domain[k]`` lists one cell per orbit in quotient order,
    and ``orbit_index[k]`` sends each cover cell to its orbit number, which
    is also its cell index in the quotient complex ``base``.
    """

    cover: PolyComplex
    base: PolyComplex
    group_order: int
    action: tuple
    fundamental_domain: tuple
    orbit_index: tuple


@dataclass(frozen=True)
class SpectralDensity:
    """Eigenvalue multiset of an equivariant PSD matrix, mass scaled by 1/m.

    The first ``kernel_dimension`` entries of ``eigenvalues`` are exact
    zeros (the dimension comes from the rational rank); the rest is the
    floating-point positive spectrum in ascending order.
    """

    group_order: int
    kernel_dimension: int
    eigenvalues: tuple

    @property
    def total_mass(self):
        return Fraction(len(self.eigenvalues), self.group_order)

    @property
    def mass_at_zero(self):
        return Fraction(self.kernel_dimension, self.group_order)

    @property
    def positive(self):
        return self.eigenvalues[self.kernel_dimension:]


@dataclass(frozen=True)
class ZetaAsymptoticRow:
    s: Fraction
    det_fk_shifted: float
    zeta_value: float
    normalized_ratio: float


@dataclass(frozen=True)
class ZetaAsymptoticReport:
    """Behaviour of the determinant zeta as the shift s goes to zero.

    ``rows`` carry det_FK(s + Laplacian), the zeta value
    z^{c} det_FK(s + Laplacian) at z = 1/(N+2+s), and the ratio
    s^{-b} det_FK(s + Laplacian) / det_FK(Laplacian) that should converge
    to one.  Slopes are least-squares fits of the log values against log s.
    """

    degree: int
    l2_betti: Fraction
    det_fk_laplacian: float
    rows: tuple
    slope_zeta: float
    slope_det: float


def build_cyclic_cover(a, b, m):
    """Cyclic m-fold cover of the a x b grid torus along the first axis.

    The cover is the (a*m) x b grid torus, the deck generator is the shift
    by a, and the fundamental domain consists of the cells with first
    coordinate below a.
    """
    if a < 3 or b < 3:
        raise CoverError("base grid torus needs a, b >= 3")
    if m < 2:
        raise CoverError("cover order must be at least 2")
    cover = grid_torus(a * m, b)
    dims = (a * m, b)
    perms = []
    for level in cubical_torus_cells(dims):
        index = {cell: i for i, cell in enumerate(level)}
        perm = []
        for dirs, pos in level:
            shifted = ((pos[0] + a) % (a * m),) + pos[1:]
            perm.append(index[(dirs, shifted)])
        perms.append(tuple(perm))
    data = assemble_cover(cover, perms, expected_order=m)
    assert data.base == grid_torus(a, b)
    return data


def trivial_cover(complex):
    """The order-one cover: identity action, every cell its own orbit."""
    perms = [tuple(range(complex.count(k))) for k in range(complex.dim + 1)]
    return assemble_cover(complex, perms, expected_order=1)


def assemble_cover(cover, perms, expected_order=None):
    """Build CoverData from a complex and the generator's permutations."""
    n = cover.dim
    if len(perms) != n + 1:
        raise CoverError(f"need one permutation per dimension 0..{n}")
    perms = tuple(tuple(p) for p in perms)
    for k, perm in enumerate(perms):
        if sorted(perm) != list(range(cover.count(k))):
            raise CoverError(f"dimension {k}: not a permutation of the cells")
    _check_boundary_equivariance(cover, perms)

    cycles_per_dim = [_cycles(perm) for perm in perms]
    lengths = {len(c) for cycles in cycles_per_dim for c in cycles}
    if len(lengths) != 1:
        raise CoverError(
            f"orbit sizes {sorted(lengths)} differ: the action is not free")
    m = lengths.pop()
    if expected_order is not None and m != expected_order:
        raise CoverError(f"action has order {m}, expected {expected_order}")

    fundamental = []
    orbit_index = []
    for k, cycles in enumerate(cycles_per_dim):
        reps = sorted(min(c) for c in cycles)
        rep_pos = {r: i for i, r in enumerate(reps)}
        idx = [0] * cover.count(k)
        for cycle in cycles:
            o = rep_pos[min(cycle)]
            for cell in cycle:
                idx[cell] = o
        fundamental.append(tuple(reps))
        orbit_index.append(tuple(idx))

    base = _quotient(cover, fundamental, orbit_index)
    return CoverData(cover=cover, base=base, group_order=m,
                     action=perms, fundamental_domain=tuple(fundamental),
                     orbit_index=tuple(orbit_index))


def _cycles(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cycle.append(cur)
            cur = perm[cur]
        out.append(cycle)
    return out


def _check_boundary_equivariance(cover, perms):
    for k in range(1, cover.dim + 1):
        perm = perms[k]
        face_perm = perms[k - 1]
        rows = cover.boundaries[k]
        for i, row in enumerate(rows):
            mapped = {(face_perm[f], s) for f, s in row}
            if mapped != set(rows[perm[i]]):
                raise CoverError(
                    f"action does not commute with the boundary on cell {i} "
                    f"of dimension {k}")


def _quotient(cover, fundamental, orbit_index):
    n = cover.dim
    counts = [len(f) for f in fundamental]
    boundaries = [()]
    for k in range(1, n + 1):
        rows = [tuple((orbit_index[k - 1][f], s)
                      for f, s in cover.boundaries[k][rep])
                for rep in fundamental[k]]
        boundaries.append(tuple(rows))
    try:
        return PolyComplex(n, counts, boundaries)
    except ValueError as err:
        raise CoverError(f"quotient not representable: {err}") from None


def quotient_complex(cover_data):
    """The quotient complex (one cell per orbit, boundary through reps)."""
    return cover_data.base


# ---------------------------------------------------------------------------
# Traces, Betti numbers, determinants


def _check_equivariant(cover_data, k, matrix):
    c = cover_data.cover.count(k)
    if len(matrix) != c or any(len(row) != c for row in matrix):
        raise ValueError(f"matrix is not {c} x {c}")
    perm = cover_data.action[k]
    for i in range(c):
        row = matrix[i]
        prow = matrix[perm[i]]
        for j in range(c):
            if prow[perm[j]] != row[j]:
                raise NonEquivariantError(
                    f"matrix does not commute with the action at ({i}, {j})")


def vn_trace(cover_data, k, matrix):
    """Von Neumann trace: diagonal summed over the fundamental domain."""
    _check_equivariant(cover_data, k, matrix)
    value = Fraction(sum(matrix[i][i] for i in
                         cover_data.fundamental_domain[k]))
    full = Fraction(sum(matrix[i][i] for i in
                        range(cover_data.cover.count(k))))
    assert value == full / cover_data.group_order
    return value


def l2_betti(cover_data, k):
    """Exact rational L2 Betti number: kernel dimension over group order."""
    return Fraction(betti(cover_data.cover, k), cover_data.group_order)


def spectral_density(cover_data, k, matrix=None):
    """Eigenvalue data of an equivariant PSD matrix on cover degree k.

    Defaults to the degree-k Laplacian of the cover.  The kernel dimension
    is the exact rational corank; that many exact zeros replace the
    numerically smallest eigenvalues.
    """
    if matrix is None:
        matrix = laplacian(cover_data.cover, k).matrix
    _check_equivariant(cover_data, k, matrix)
    rows = [[float(x) for x in row] for row in matrix]
    for i, row in enumerate(rows):
        for j in range(i + 1, len(rows)):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix is not symmetric")
    kernel = len(matrix) - exact.rank([list(r) for r in matrix])
    eigs = sorted(numpy.linalg.eigvalsh(numpy.array(rows)))
    scale = max(1.0, abs(eigs[-1]) if eigs else 1.0)
    if eigs and eigs[0] < -1e-8 * scale:
        raise ValueError(f"matrix is not positive semidefinite "
                         f"(eigenvalue {eigs[0]})")
    fixed = [0.0] * kernel + [max(v, 0.0) for v in eigs[kernel:]]
    return SpectralDensity(cover_data.group_order, kernel, tuple(fixed))


def fk_det(cover_data, k, matrix):
    """Fuglede-Kadison determinant at finite scale.

    The product of the nonzero eigenvalues (zero mass is skipped exactly),
    taken to the power 1/m.
    """
    density = spectral_density(cover_data, k, matrix)
    log_sum = sum(math.log(v) for v in density.positive)
    return math.exp(log_sum / density.group_order)


def _least_squares_slope(xs, ys):
    if len(xs) < 2:
        return float("nan")
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def fk_zeta_asymptotic_check(cover_data, s_values):
    """Determinant zeta behaviour as the spectral shift goes to zero.

    For each positive rational s, evaluates det_FK(s Id + Laplacian), the
    zeta value z^{c} det_FK(s Id + Laplacian) at z = 1/(N+2+s), and the
    normalized ratio s^{-b} det_FK(s Id + Laplacian) / det_FK(Laplacian)
    with b the codimension-one L2 Betti number.  Slopes of the log values
    against log s estimate b.
    """
    s_values = [Fraction(s) for s in s_values]
    if not s_values or any(s <= 0 for s in s_values):
        raise ValueError("shifts must be positive rationals")
    if any(b >= a for a, b in zip(s_values, s_values[1:])):
        raise ValueError("shifts must be strictly decreasing")
    n = cover_data.cover.dim
    degree = n - 1
    b = l2_betti(cover_data, degree)
    density = spectral_density(cover_data, degree)
    m = density.group_order
    det_fk = math.exp(sum(math.log(v) for v in density.positive) / m)
    shift = cover_data.cover.regularity_degree + 2
    c_base = cover_data.base.count(degree)

    rows = []
    for s in s_values:
        sf = float(s)
        log_det_p = sum(math.log(v + sf) for v in density.eigenvalues) / m
        det_p = math.exp(log_det_p)
        z = 1.0 / (shift + sf)
        zeta = math.exp(c_base * math.log(z) + log_det_p)
        ratio = math.exp(log_det_p - float(b) * math.log(sf)) / det_fk
        rows.append(ZetaAsymptoticRow(s, det_p, zeta, ratio))

    xs = [math.log(float(r.s)) for r in rows]
    slope_zeta = _least_squares_slope(xs, [math.log(r.zeta_value)
                                           for r in rows])
    slope_det = _least_squares_slope(xs, [math.log(r.det_fk_shifted)
                                          for r in rows])
    return ZetaAsymptoticReport(degree=degree, l2_betti=b,
                                det_fk_laplacian=det_fk, rows=tuple(rows),
                                slope_zeta=slope_zeta, slope_det=slope_det)


def psi_series(cover_data, order):
    """Coefficients (-1)^{k-1}/k tr_vN(Laplacian^k) for k = 1..order.

    These are the Taylor coefficients of the log-determinant correction
    whose rearrangement gives the heat trace; order is capped at 20.
    """
    if not 1 <= order <= 20:
        raise ValueError("order must lie in 1..20")
    n = cover_data.cover.dim
    lap = [list(row) for row in laplacian(cover_data.cover, n - 1).matrix]
    coeffs = []
    power = lap
    for k in range(1, order + 1):
        trace = vn_trace(cover_data, n - 1, power)
        coeffs.append(Fraction((-1) ** (k - 1), k) * trace)
        if k < order:
            power = exact.mat_mul(power, lap)
    return coeffs


def heat_trace(cover_data, t, degree=None):
    """tr_vN exp(-t Laplacian) from the spectral density; tends to the
    L2 Betti number as t grows."""
    if degree is None:
        degree = cover_data.cover.dim - 1
    density = spectral_density(cover_data, degree)
    tf = float(t)
    return sum(math.exp(-tf * v) for v in density.eigenvalues) \
        / density.group_order


def vn_transfer_traces(cover_data, max_k):
    """tr_vN(T^k) of the cover transfer operator for k = 1..max_k."""
    n = cover_data.cover.dim
    t = transfer_operator(cover_data.cover)
    out = {}
    power = [list(row) for row in t.matrix]
    for k in range(1, max_k + 1):
        out[k] = vn_trace(cover_data, n - 1, power)
        if k < max_k:
            power = exact.mat_mul(power, t.matrix)
    return out


def trivial_holonomy_signed_counts(cover_data, max_k):
    """Signed counts of based closed base walks whose lift closes up.

    For each length k, walks in the base complex are enumerated from every
    codimension-one cell and lifted step by step through the covering; a
    walk counts (with its sign) exactly when the lift returns to the
    starting lift.  Equals tr_vN of the k-th transfer power.
    """
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    n = cover_data.cover.dim
    k_dim = n - 1
    base_adj = transfer_operator(cover_data.base).neighbors
    cover_adj = transfer_operator(cover_data.cover).neighbors
    project = cover_data.orbit_index[k_dim]
    lifts = cover_data.fundamental_domain[k_dim]
    counts = {k: 0 for k in range(1, max_k + 1)}

    def lift_step(cover_cell, base_target, base_sign):
        found = None
        for nxt, sign in cover_adj[cover_cell]:
            if project[nxt] == base_target:
                if found is not None:
                    raise CoverError("covering step lift is not unique")
                found = (nxt, sign)
        if found is None:
            raise CoverError("covering step has no lift")
        if found[1] != base_sign:
            raise CoverError("covering step lift changes the sign")
        return found[0]

    def walk(base_cell, cover_cell, depth, sign, base_start, cover_start):
        for nxt, step in base_adj[base_cell]:
            lifted = lift_step(cover_cell, nxt, step)
            s = sign * step
            if nxt == base_start and lifted == cover_start:
                counts[depth] += s
            if depth < max_k:
                walk(nxt, lifted, depth + 1, s, base_start, cover_start)

    for start in range(cover_data.base.count(k_dim)):
        walk(start, lifts[start], 1, 1, start, lifts[start])
    return counts


# ---------------------------------------------------------------------------
# Permutation file format


def parse_permutations(text, cover):
    """Parse ``perm <k> : <images>`` lines for the generator of the action."""
    perms = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "perm" or len(tokens) < 3 or tokens[2] != ":":
            raise ComplexFormatError(
                f"line {lineno}: expected 'perm <k> : <images>'")
        try:
            k = int(tokens[1])
            images = [int(t) for t in tokens[3:]]
        except ValueError:
            raise ComplexFormatError(
                f"line {lineno}: bad integer in permutation") from None
        if not 0 <= k <= cover.dim:
            raise ComplexFormatError(f"line {lineno}: dimension {k} out of "
                                     "range")
        if k in perms:
            raise ComplexFormatError(f"line {lineno}: repeated perm line "
                                     f"for dimension {k}")
        if len(images) != cover.count(k):
            raise ComplexFormatError(
                f"line {lineno}: expected {cover.count(k)} images, got "
                f"{len(images)}")
        perms[k] = images
    for k in range(cover.dim + 1):
        if k not in perms:
            raise ComplexFormatError(f"line 1: missing 'perm {k} : ...'")
    return [perms[k] for k in range(cover.dim + 1)]


def emit_permutations(cover_data):
    lines = []
    for k, perm in enumerate(cover_data.action):
        images = " ".join(str(i) for i in perm)
        lines.append(f"perm {k} : {images}")
    return "\n".join(lines) + "\n"


def load_cover(cover, perm_text):
    """CoverData from an explicit cover complex and a permutation file."""
    return assemble_cover(cover, parse_permutations(perm_text, cover))
