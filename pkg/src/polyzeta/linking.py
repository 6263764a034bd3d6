"""The combinatorial orthogeodesic series eta(z) and its exact evaluation.

eta(z) sums sign * incidence * z^length over all orthogeodesics between a
base knot and a dual knot of a 3-complex.  As a rational function it equals
the pairing of the resolvent (1/z - T)^{-1} applied to the coboundary of k1
against the star transport of k2; at z = 1/(N+2) the resolvent degenerates
to the Hodge pseudo-inverse and the value is the linking number.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .complex_core import Chain, inner_product
from .dual_hodge import coboundary_chain, star
from .geodesics import orthogeodesic_length_sums
from .homology import pseudo_inverse_apply, require_null_homologous
from .spectral import spectral_radius_bound, transfer_operator


class SingularSystemError(ArithmeticError):
    """1/z hit an eigenvalue of the transfer operator."""


class InternalCheckError(RuntimeError):
    """Enumeration and matrix sides of a dual computation disagree."""


@dataclass(frozen=True)
class EtaEvaluation:
    """One evaluation of eta: the point, the exact value, and the route."""

    z: Fraction
    value: Fraction
    method: str


def _check_knots(complex, dual_complex, k1, k2):
    if complex.dim != 3:
        raise ValueError("eta needs a 3-dimensional complex")
    if dual_complex.base is not complex:
        raise ValueError("dual complex does not belong to this base")
    if k1.complex is not complex or k1.degree != 1:
        raise ValueError("k1 must be a degree-1 chain on the base")
    if k2.complex is not dual_complex.dual or k2.degree != 1:
        raise ValueError("k2 must be a degree-1 chain on the dual")
    require_null_homologous(k1)
    require_null_homologous(k2)


def eta_exact(complex, dual_complex, k1, k2, z):
    """Exact rational value of eta at z.

    Away from 1/(N+2) this solves (1/z - T) x = adjoint-boundary of k1 and
    pairs x with the star transport of k2.  At exactly 1/(N+2), where the
    matrix is the (possibly singular) Laplacian, the pseudo-inverse route is
    used instead; regularity of eta there makes the two routes agree on the
    common domain.
    """
    z = Fraction(z)
    if z == 0:
        return EtaEvaluation(z, Fraction(0), "exact_solve")
    _check_knots(complex, dual_complex, k1, k2)
    u = coboundary_chain(complex, k1)
    w = star(dual_complex, k2)
    shift = Fraction(complex.regularity_degree + 2)
    if z == 1 / shift:
        x = pseudo_inverse_apply(complex, 2, u)
        return EtaEvaluation(z, inner_product(x, w), "exact_solve")
    t = transfer_operator(complex)
    m = [[Fraction(-v) for v in row] for row in t.matrix]
    inv_z = 1 / z
    for i in range(t.size):
        m[i][i] += inv_z
    try:
        x = exact.solve_invertible(m, u.to_vector())
    except exact.SingularMatrixError:
        raise SingularSystemError(
            f"1/z = {inv_z} is an eigenvalue of the transfer operator"
        ) from None
    value = inner_product(Chain.from_vector(complex, 2, x), w)
    return EtaEvaluation(z, value, "exact_solve")


def transfer_length_sums(complex, dual_complex, k1, k2, max_len):
    """Per-length sums via matrix powers: <T^{k-1} u, w> for k = 1..max_len."""
    u = coboundary_chain(complex, k1).to_vector()
    w = star(dual_complex, k2).to_vector()
    t = transfer_operator(complex)
    sums = []
    v = list(u)
    for _ in range(max_len):
        sums.append(exact.dot(v, w))
        v = exact.mat_vec(t.matrix, v)
    return sums


def eta_partial_sum(complex, dual_complex, k1, k2, z, length_cap):
    """Partial sum of eta up to z^length_cap.

    The per-length signed sums are computed twice, by orthogeodesic
    enumeration and by matrix powers; a mismatch is a bug and raises
    InternalCheckError.
    """
    z = Fraction(z)
    if length_cap < 0:
        raise ValueError("length cap must be nonnegative")
    _check_knots(complex, dual_complex, k1, k2)
    if length_cap == 0:
        return EtaEvaluation(z, Fraction(0), "partial_sum(0)")
    enum = orthogeodesic_length_sums(complex, dual_complex, k1, k2,
                                     length_cap)
    mat = transfer_length_sums(complex, dual_complex, k1, k2, length_cap)
    if [Fraction(x) for x in enum] != [Fraction(x) for x in mat]:
        raise InternalCheckError(
            f"orthogeodesic enumeration {enum} disagrees with matrix "
            f"powers {mat}")
    value = sum((Fraction(s) * z ** (k + 1) for k, s in enumerate(enum)),
                Fraction(0))
    return EtaEvaluation(z, value, f"partial_sum({length_cap})")


def tail_bound(complex, dual_complex, k1, k2, z, length_cap):
    """Geometric bound on |eta_exact - partial sum| past length_cap.

    With B the row-sum bound for T, u the coboundary of k1 and w the star
    transport of k2:  |tail| <= |z|^{L+1} B^L max|u| sum|w| / (1 - |z| B).
    Requires |z| B < 1.
    """
    z = abs(Fraction(z))
    u = coboundary_chain(complex, k1).to_vector()
    w = star(dual_complex, k2).to_vector()
    bound = spectral_radius_bound(transfer_operator(complex))
    if z * bound >= 1:
        raise ValueError("z lies outside the guaranteed convergence disk")
    u_inf = max((abs(x) for x in u), default=Fraction(0))
    w_one = sum(abs(x) for x in w)
    return (z ** (length_cap + 1) * bound ** length_cap * u_inf * w_one
            / (1 - z * bound))
