"""Dual complex, Hodge star maps and the adjoint boundary.

The dual complex reuses the base cell indices: the dual (n-k)-cell number i
corresponds to the base k-cell number i, and dual incidence is the signed
transpose of base incidence.  The star from base to dual is the plain
coefficient-preserving reindexing; the star back multiplies by
(-1)^{k(n-k)}, so that

    star(star(a)) = (-1)^{k(n-k)} a            on degree-k chains,
    adjoint_boundary = (-1)^{n(k+1)} star dual_boundary star

hold exactly.  The dual boundary sign that makes the second identity work
out is (-1)^{k+1} times the base coface sign, with k the base cell degree.
"""

from .complex_core import Chain, PolyComplex, complex_hash, emit_complex, validate


class DualConstructionError(ValueError):
    """The transposed complex fails validation (non-manifold-like input)."""


class DualComplex:
    """A base complex together with its transposed dual and the star signs."""

    __slots__ = ("base", "dual")

    def __init__(self, base, dual):
        self.base = base
        self.dual = dual

    def dual_degree(self, k):
        return self.base.dim - k


def build_dual(base):
    """Construct the dual complex; raises if the result fails validation."""
    n = base.dim
    counts = [base.count(n - j) for j in range(n + 1)]
    boundaries = [()]
    for j in range(1, n + 1):
        k = n - j
        rows = []
        sign_flip = (-1) ** (k + 1)
        for i in range(base.count(k)):
            rows.append(tuple((coface, sign_flip * sign)
                              for coface, sign in base.cofaces(k)[i]))
        boundaries.append(tuple(rows))
    dual = PolyComplex(n, counts, boundaries)
    report = validate(dual)
    if not report.passed:
        bad = ", ".join(c.name for c in report.failures())
        raise DualConstructionError(
            f"dual complex fails validation ({bad}); base is not a "
            "codimension-one-regular manifold decomposition")
    return DualComplex(base, dual)


def star(dual_complex, chain):
    """Hodge star between base and dual chains.

    Base degree-k chains map to dual degree-(n-k) chains coefficient for
    coefficient; dual chains map back with the extra (-1)^{k(n-k)} parity,
    where k is the degree of the resulting base chain.
    """
    n = dual_complex.base.dim
    if chain.complex is dual_complex.base:
        return Chain(dual_complex.dual, n - chain.degree, chain.coefficients)
    if chain.complex is dual_complex.dual:
        k = n - chain.degree
        parity = (-1) ** (k * (n - k))
        return Chain(dual_complex.base, k,
                     {c: parity * v for c, v in chain.coefficients.items()})
    raise ValueError("chain lives on neither side of this dual pair")


def adjoint_boundary(complex, k):
    """Matrix of the adjoint boundary C_{k-1} -> C_k: the transpose of d_k."""
    if not 1 <= k <= complex.dim:
        raise ValueError(f"degree {k} out of range")
    rows = complex.count(k)
    cols = complex.count(k - 1)
    m = [[0] * cols for _ in range(rows)]
    for i, row in enumerate(complex.boundaries[k]):
        for face, sign in row:
            m[i][face] = sign
    return m


def coboundary_chain(complex, chain):
    """Apply the adjoint boundary to a chain: degree k -> k + 1."""
    if chain.degree >= complex.dim:
        raise ValueError("top-degree chains have no adjoint boundary")
    acc = {}
    for cell, sign in _coboundary_entries(complex, chain):
        acc[cell] = acc.get(cell, 0) + sign
    return Chain(complex, chain.degree + 1, acc)


def _coboundary_entries(complex, chain):
    for face, value in chain.coefficients.items():
        for cell, sign in complex.cofaces(chain.degree)[face]:
            yield cell, sign * value


def emit_dual_complex(dual_complex):
    """Dual complex in the standard file format, tagged with the base hash."""
    return emit_complex(dual_complex.dual,
                        header_comments=(f"dual-of {complex_hash(dual_complex.base)}",))
