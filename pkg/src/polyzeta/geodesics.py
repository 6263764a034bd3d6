"""Brute-force enumeration of closed geodesics and orthogeodesics.

This module is the independent oracle for every trace formula: it never
touches matrix powers.  Walk adjacency comes from the transfer operator
support, paths are enumerated by depth-first search, and closed walks are
grouped into cyclic classes by their lexicographically minimal rotation.
Orientation-reversed traversals are distinct classes; only cyclic rotation
is quotiented out.  Cost is exponential in the length cap by design.
"""

from dataclasses import dataclass

from .dual_hodge import star
from .spectral import transfer_operator


@dataclass(frozen=True)
class ClosedGeodesic:
    """A cyclic class of closed walk, stored at its minimal rotation.

    ``reversing_number`` counts the non-compatible consecutive pairs,
    including the wrap-around pair; the sign is its parity.  The class is
    the (length / primitive_length)-fold repetition of its primitive root.
    """

    cells: tuple
    reversing_number: int
    sign: int
    primitive_length: int

    @property
    def length(self):
        return len(self.cells)

    @property
    def is_primitive(self):
        return self.primitive_length == len(self.cells)


@dataclass(frozen=True)
class OrthoGeodesic:
    """A walk whose first cell pairs with k1's coboundary and last with *k2."""

    cells: tuple
    sign: int
    incidence: int

    @property
    def length(self):
        return len(self.cells)


def _canonical_rotation(cells):
    return min(cells[i:] + cells[:i] for i in range(len(cells)))


def _period(cells):
    k = len(cells)
    for p in range(1, k + 1):
        if k % p == 0 and cells == cells[p:] + cells[:p]:
            return p
    return k


def closed_geodesics(complex, max_len, operator=None):
    """All cyclic classes of closed walks of length <= max_len, each once."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    t = operator if operator is not None else transfer_operator(complex)
    adj = t.neighbors
    matrix = t.matrix
    out = []
    for k in range(1, max_len + 1):
        seen = set()
        classes = []
        path = [0] * k

        def extend(depth, start):
            cur = path[depth - 1]
            if depth == k:
                if matrix[cur][start] == 0:
                    return
                cells = tuple(path)
                canon = _canonical_rotation(cells)
                if canon in seen:
                    return
                seen.add(canon)
                sign = 1
                reversing = 0
                for i in range(k):
                    step = matrix[canon[i]][canon[(i + 1) % k]]
                    sign *= step
                    if step < 0:
                        reversing += 1
                classes.append(ClosedGeodesic(canon, reversing, sign,
                                              _period(canon)))
                return
            for nxt, _ in adj[cur]:
                if nxt < start:
                    continue
                path[depth] = nxt
                extend(depth + 1, start)

        for start in range(t.size):
            path[0] = start
            extend(1, start)
        classes.sort(key=lambda g: g.cells)
        out.extend(classes)
    return out


def signed_length_spectrum(complex, max_k, operator=None):
    """Map k -> sum over classes of length k of sign * primitive length.

    Computed purely from the enumeration; by the trace formula it equals
    tr T^k, which the tests check against matrix powers.
    """
    spectrum = {k: 0 for k in range(1, max_k + 1)}
    for g in closed_geodesics(complex, max_k, operator=operator):
        spectrum[g.length] += g.sign * g.primitive_length
    return spectrum


def orthogeodesics(complex, dual_complex, k1, k2, max_len):
    """All walks of length <= max_len from the coboundary support of k1 to
    cells crossed by k2, with signs and incidence numbers.

    ``k1`` is an integral 1-chain on the base, ``k2`` an integral 1-chain
    on the dual of a 3-complex.  Single-cell walks count when both end
    conditions hold at once.
    """
    if complex.dim != 3:
        raise ValueError("orthogeodesics need a 3-dimensional complex")
    if dual_complex.base is not complex:
        raise ValueError("dual complex does not belong to this base")
    if k1.complex is not complex or k1.degree != 1:
        raise ValueError("k1 must be a degree-1 chain on the base")
    if k2.complex is not dual_complex.dual or k2.degree != 1:
        raise ValueError("k2 must be a degree-1 chain on the dual")
    if not (k1.is_integral() and k2.is_integral()):
        raise ValueError("orthogeodesic chains must be integral")
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")

    start_weight = _coboundary_vector(complex, k1)
    end_weight = star(dual_complex, k2).to_vector()
    t = transfer_operator(complex)
    adj = t.neighbors
    out = []
    path = []

    def extend(cell, sign):
        path.append(cell)
        if end_weight[cell] != 0:
            out.append(OrthoGeodesic(tuple(path), sign,
                                     int(start_weight[path[0]]
                                         * end_weight[cell])))
        if len(path) < max_len:
            for nxt, step in adj[cell]:
                extend(nxt, sign * step)
        path.pop()

    for cell in range(t.size):
        if start_weight[cell] != 0:
            extend(cell, 1)
    out.sort(key=lambda c: (c.length, c.cells))
    return out


def orthogeodesic_length_sums(complex, dual_complex, k1, k2, max_len):
    """Per-length signed sums sum(sign * incidence), lengths 1..max_len."""
    sums = [0] * max_len
    for c in orthogeodesics(complex, dual_complex, k1, k2, max_len):
        sums[c.length - 1] += c.sign * c.incidence
    return sums


def _coboundary_vector(complex, chain):
    """Vector of <boundary(cell), chain> over the (degree+1)-cells."""
    v = [0] * complex.count(chain.degree + 1)
    for face, value in chain.coefficients.items():
        for cell, sign in complex.cofaces(chain.degree)[face]:
            v[cell] += sign * value
    return v
