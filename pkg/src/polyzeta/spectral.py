"""Combinatorial Laplacians and the signed transfer operator.

The codimension-one Laplacian of a validated N-regular complex satisfies

    Delta_{n-1} = (N + 2) * Id - T

where T is the transfer operator of the signed geodesic walk.  T is built
purely from cell incidence, never from the Laplacian, so the identity is a
genuine cross-check.

A walk step moves between two distinct (n-1)-cells that interact through
exactly one mediating cell:

  * a shared (n-2)-face, provided the pair bounds no common n-cell
    (continuation through a ridge), or
  * a shared n-cell, provided the pair shares no (n-2)-face (continuation
    across a top cell; this case is empty for triangulations, where any two
    facets of a simplex share a ridge, but is forced on square-grid
    complexes by the Laplacian identity above).

The step sign is +1 exactly when the mediating cell sees the two cells with
opposite signs (compatible orientation).  Pairs mediated both ways cancel
out of the Laplacian and are not steps.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LaplacianMatrix:
    """Symmetric positive semidefinite integer matrix d d* + d* d."""

    degree: int
    matrix: tuple

    @property
    def size(self):
        return len(self.matrix)


class TransferOperator:
    """Signed walk matrix on (n-1)-cells: entries in {-1, 0, +1}, zero diagonal."""

    __slots__ = ("matrix", "_neighbors")

    def __init__(self, matrix):
        self.matrix = tuple(tuple(row) for row in matrix)
        self._neighbors = None

    @property
    def size(self):
        return len(self.matrix)

    @property
    def neighbors(self):
        """Adjacency lists of the walk: per cell, tuple of (cell, sign)."""
        if self._neighbors is None:
            self._neighbors = tuple(
                tuple((j, s) for j, s in enumerate(row) if s != 0)
                for row in self.matrix)
        return self._neighbors

    def __eq__(self, other):
        if not isinstance(other, TransferOperator):
            return NotImplemented
        return self.matrix == other.matrix


def laplacian(complex, k):
    """Exact integer matrix of the degree-k combinatorial Laplacian.

    Entry (i, j) is the sum of sign products over the common faces of the
    two cells (the d*d part) and over their common cofaces (the dd* part).
    """
    if not 0 <= k <= complex.dim:
        raise ValueError(f"degree {k} out of range")
    c = complex.count(k)
    m = [[0] * c for _ in range(c)]
    if k >= 1:
        for inc in complex.cofaces(k - 1):
            for i, si in inc:
                for j, sj in inc:
                    m[i][j] += si * sj
    if k < complex.dim:
        for row in complex.boundaries[k + 1]:
            for i, si in row:
                for j, sj in row:
                    m[i][j] += si * sj
    return LaplacianMatrix(k, tuple(tuple(row) for row in m))


def transfer_operator(complex):
    """Signed geodesic walk operator on (n-1)-cells, built from incidence."""
    n = complex.dim
    c = complex.count(n - 1)
    ridge = {}
    for inc in complex.cofaces(n - 2):
        for (i, si), (j, sj) in itertools.combinations(inc, 2):
            key = (i, j) if i < j else (j, i)
            if key in ridge:
                ridge[key] = None
            else:
                ridge[key] = si * sj
    coface = {}
    for row in complex.boundaries[n]:
        for (i, si), (j, sj) in itertools.combinations(row, 2):
            key = (i, j) if i < j else (j, i)
            if key in coface:
                coface[key] = None
            else:
                coface[key] = si * sj
    for name, table in (("ridge", ridge), ("top-cell", coface)):
        bad = [k for k, v in table.items() if v is None]
        if bad:
            raise ValueError(
                f"pair {bad[0]} shares more than one {name}; "
                "run validate() first")
    m = [[0] * c for _ in range(c)]
    for key, prod in ridge.items():
        if key not in coface:
            i, j = key
            m[i][j] = m[j][i] = -prod
    for key, prod in coface.items():
        if key not in ridge:
            i, j = key
            m[i][j] = m[j][i] = -prod
    return TransferOperator(m)


def check_laplacian_identity(complex):
    """True iff Delta_{n-1} + T equals (N+2) Id exactly, entrywise."""
    n = complex.dim
    lap = laplacian(complex, n - 1).matrix
    t = transfer_operator(complex).matrix
    shift = complex.regularity_degree + 2
    c = complex.count(n - 1)
    for i in range(c):
        for j in range(c):
            want = shift if i == j else 0
            if lap[i][j] + t[i][j] != want:
                return False
    return True


def spectral_radius_bound(operator):
    """Maximum absolute row sum: an upper bound for the spectral radius."""
    if operator.size == 0:
        return Fraction(0)
    return Fraction(max(sum(abs(x) for x in row) for row in operator.matrix))


def emit_triplets(matrix):
    """Matrix as ``row col value`` lines (nonzero entries, row major)."""
    lines = []
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            if v != 0:
                lines.append(f"{i} {j} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
