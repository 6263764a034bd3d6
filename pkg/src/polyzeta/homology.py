"""Exact Betti numbers, harmonic projection and the Hodge pseudo-inverse.

Everything here is rational-rank based: Betti numbers come from ranks of
the boundary matrices, the harmonic space is the exact kernel of the
Laplacian, and the pseudo-inverse K inverts the Laplacian away from that
kernel while killing it.  This module is the independent oracle for the
zeta vanishing orders and for the linking pairing.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exact
from .complex_core import Chain, inner_product
from .dual_hodge import coboundary_chain, star
from .spectral import laplacian


class NullHomologyError(ValueError):
    """A chain that must be rationally null-homologous is not."""


@dataclass(frozen=True)
class HodgeDecomposition:
    """Exact bases of the three orthogonal summands of C_k.

    ``boundary_basis`` spans the image of the boundary from above,
    ``coboundary_basis`` the image of the adjoint boundary from below, and
    ``harmonic_basis`` the kernel of the Laplacian.  Dimensions add up to
    the number of k-cells.
    """

    degree: int
    harmonic_basis: tuple
    boundary_basis: tuple
    coboundary_basis: tuple


def betti(complex, k):
    """b_k = c_k - rank d_k - rank d_{k+1}, all ranks over the rationals."""
    if not 0 <= k <= complex.dim:
        raise ValueError(f"degree {k} out of range")
    c = complex.count(k)
    r_down = _boundary_rank(complex, k)
    r_up = _boundary_rank(complex, k + 1)
    return c - r_down - r_up


def _boundary_rank(complex, k):
    if not 1 <= k <= complex.dim:
        return 0
    return exact.rank(complex.boundary_matrix(k))


@lru_cache(maxsize=None)
def hodge_decomposition(complex, k):
    """Cached exact Hodge decomposition of C_k."""
    lap = laplacian(complex, k).matrix
    harmonic = tuple(tuple(v) for v in exact.nullspace([list(r) for r in lap]))
    up = complex.boundary_matrix(k + 1)
    down_t = exact.transpose(complex.boundary_matrix(k))
    boundary = _column_space_basis(up)
    coboundary = _column_space_basis(down_t)
    return HodgeDecomposition(k, harmonic, boundary, coboundary)


def _column_space_basis(m):
    """Pivot columns of m: an exact basis of its column space."""
    if not m or not m[0]:
        return ()
    _, pivots = exact._echelon(m)
    cols = exact.transpose(m)
    return tuple(tuple(cols[p]) for p in pivots)


@lru_cache(maxsize=None)
def _pseudo_inverse_system(complex, k):
    """The invertible matrix Delta + H H^T used to apply K."""
    lap = [list(row) for row in laplacian(complex, k).matrix]
    harmonic = hodge_decomposition(complex, k).harmonic_basis
    c = complex.count(k)
    m = [[Fraction(x) for x in row] for row in lap]
    for v in harmonic:
        for i in range(c):
            if v[i] == 0:
                continue
            for j in range(c):
                m[i][j] += v[i] * v[j]
    return m


def harmonic_projection(complex, k, vector):
    """Orthogonal projection onto the kernel of the degree-k Laplacian."""
    harmonic = hodge_decomposition(complex, k).harmonic_basis
    if not harmonic:
        return [Fraction(0)] * len(vector)
    gram = [[exact.dot(u, v) for v in harmonic] for u in harmonic]
    rhs = [exact.dot(u, vector) for u in harmonic]
    coeffs = exact.solve_invertible(gram, rhs)
    out = [Fraction(0)] * len(vector)
    for c, v in zip(coeffs, harmonic):
        for i, x in enumerate(v):
            out[i] += c * x
    return out


def pseudo_inverse_apply(complex, k, chain):
    """Apply K: the inverse of the Laplacian away from harmonics, zero on them.

    Returns the unique x orthogonal to the harmonic space with
    Delta x = chain - harmonic part of chain.
    """
    if chain.complex is not complex or chain.degree != k:
        raise ValueError("chain degree or complex mismatch")
    v = chain.to_vector()
    proj = harmonic_projection(complex, k, v)
    rhs = [a - b for a, b in zip(v, proj)]
    m = _pseudo_inverse_system(complex, k)
    x = exact.solve_invertible(m, rhs)
    return Chain.from_vector(complex, k, x)


def require_null_homologous(chain):
    """Check membership of a cycle in the rational boundary image."""
    complex = chain.complex
    k = chain.degree
    if k + 1 > complex.dim:
        raise NullHomologyError("no cells one dimension up")
    sol = exact.solve(complex.boundary_matrix(k + 1), chain.to_vector())
    if sol is None:
        raise NullHomologyError(
            f"degree-{k} chain is not rationally null-homologous")
    return Chain.from_vector(complex, k + 1, sol)


def linking_oracle(complex, dual_complex, k1, k2):
    """Exact linking pairing via the Hodge pseudo-inverse.

    Computes the pairing of the coexact primitive of k1 with the star
    transport of k2; equals the intersection number of any rational
    2-chain bounding k1 with k2, independent of the choice.
    """
    if complex.dim != 3:
        raise ValueError("linking needs a 3-dimensional complex")
    if k1.complex is not complex or k1.degree != 1:
        raise ValueError("k1 must be a degree-1 chain on the base")
    if k2.complex is not dual_complex.dual or k2.degree != 1:
        raise ValueError("k2 must be a degree-1 chain on the dual")
    require_null_homologous(k1)
    require_null_homologous(k2)
    primitive = coboundary_chain(complex, pseudo_inverse_apply(complex, 1, k1))
    return inner_product(primitive, star(dual_complex, k2))
