"""Oriented polyhedral complexes: data model, file format, validation, fixtures.

A complex is stored purely combinatorially: per dimension an ordered family
of cells, and for each cell of positive dimension a signed list of its
hyperfaces.  Orientation is encoded entirely by the stored signs; nothing
geometric is ever reconstructed.  Cell order in a file is the basis order,
and all generators are deterministic.
"""

import hashlib
import itertools
from dataclasses import dataclass
from fractions import Fraction


class ComplexFormatError(ValueError):
    """Malformed complex or chain file; message carries the line number."""


class GeneratorError(ValueError):
    """Unknown generator name or parameters below the supported minimum."""


class PolyComplex:
    """Dimension-graded cell sets with signed boundary incidence.

    ``boundaries[k][i]`` is a tuple of ``(face_index, sign)`` pairs giving
    the hyperfaces of the i-th k-cell, each face at most once, signs in
    {-1, +1}.  Instances are immutable after construction and hash by value.
    """

    __slots__ = ("dim", "cell_counts", "boundaries", "_cofaces", "_matrices",
                 "_hash")

    def __init__(self, dim, cell_counts, boundaries):
        if dim < 2:
            raise ValueError("complex dimension must be at least 2")
        cell_counts = tuple(int(c) for c in cell_counts)
        if len(cell_counts) != dim + 1:
            raise ValueError("need one cell count per dimension 0..n")
        if any(c < 0 for c in cell_counts):
            raise ValueError("negative cell count")
        norm = [()]
        for k in range(1, dim + 1):
            rows = boundaries[k] if k < len(boundaries) else []
            if len(rows) != cell_counts[k]:
                raise ValueError(
                    f"dimension {k}: {len(rows)} boundary rows for "
                    f"{cell_counts[k]} cells")
            out = []
            for i, row in enumerate(rows):
                seen = set()
                entries = []
                for face, sign in row:
                    face = int(face)
                    if not 0 <= face < cell_counts[k - 1]:
                        raise ValueError(
                            f"cell {i} of dimension {k}: dangling face "
                            f"index {face}")
                    if face in seen:
                        raise ValueError(
                            f"cell {i} of dimension {k}: face {face} "
                            f"listed twice")
                    if sign not in (1, -1):
                        raise ValueError(
                            f"cell {i} of dimension {k}: sign must be +-1")
                    seen.add(face)
                    entries.append((face, sign))
                out.append(tuple(entries))
            norm.append(tuple(out))
        self.dim = dim
        self.cell_counts = cell_counts
        self.boundaries = tuple(norm)
        self._cofaces = {}
        self._matrices = {}
        self._hash = None

    def count(self, k):
        """Number of k-cells; zero outside 0..n."""
        if 0 <= k <= self.dim:
            return self.cell_counts[k]
        return 0

    @property
    def regularity_degree(self):
        """Face count of the first (n-1)-cell (the N of N-regularity)."""
        rows = self.boundaries[self.dim - 1] if self.dim >= 1 else ()
        return len(rows[0]) if rows else 0

    def euler_characteristic(self):
        return sum((-1) ** k * c for k, c in enumerate(self.cell_counts))

    def boundary_matrix(self, k):
        """Integer matrix of the boundary map C_k -> C_{k-1}.

        Shape c_{k-1} x c_k; the zero-row/column cases outside 1..n return
        appropriately shaped zero matrices so Laplacians need no special
        casing.
        """
        if k in self._matrices:
            return self._matrices[k]
        rows = self.count(k - 1)
        cols = self.count(k)
        m = [[0] * cols for _ in range(rows)]
        if 1 <= k <= self.dim:
            for i, row in enumerate(self.boundaries[k]):
                for face, sign in row:
                    m[face][i] = sign
        self._matrices[k] = m
        return m

    def cofaces(self, k):
        """For each k-cell, the tuple of ((k+1)-cell, sign) incidences."""
        if k in self._cofaces:
            return self._cofaces[k]
        out = [[] for _ in range(self.count(k))]
        if 0 <= k < self.dim:
            for i, row in enumerate(self.boundaries[k + 1]):
                for face, sign in row:
                    out[face].append((i, sign))
        out = tuple(tuple(lst) for lst in out)
        self._cofaces[k] = out
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyComplex):
            return NotImplemented
        return (self.dim == other.dim
                and self.cell_counts == other.cell_counts
                and self.boundaries == other.boundaries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.cell_counts, self.boundaries))
        return self._hash

    def __repr__(self):
        return (f"PolyComplex(dim={self.dim}, "
                f"cells={list(self.cell_counts)})")


class Chain:
    """Sparse exact rational chain on a fixed complex.

    The cell basis is declared orthonormal, so the pairing of two chains is
    simply the coefficient dot product.
    """

    __slots__ = ("complex", "degree", "coefficients")

    def __init__(self, complex, degree, coefficients):
        if not 0 <= degree <= complex.dim:
            raise ValueError(f"degree {degree} out of range")
        coeffs = {}
        for cell, value in coefficients.items():
            value = Fraction(value)
            if value == 0:
                continue
            if not 0 <= cell < complex.count(degree):
                raise ValueError(f"cell index {cell} out of range in "
                                 f"degree {degree}")
            coeffs[int(cell)] = value
        self.complex = complex
        self.degree = degree
        self.coefficients = coeffs

    @classmethod
    def basis(cls, complex, degree, cell):
        return cls(complex, degree, {cell: 1})

    @classmethod
    def from_vector(cls, complex, degree, vector):
        return cls(complex, degree,
                   {i: v for i, v in enumerate(vector) if v != 0})

    def to_vector(self):
        v = [Fraction(0)] * self.complex.count(self.degree)
        for cell, value in self.coefficients.items():
            v[cell] = value
        return v

    def is_integral(self):
        return all(v.denominator == 1 for v in self.coefficients.values())

    def boundary(self):
        """The (degree-1)-chain obtained by applying the boundary map."""
        if self.degree == 0:
            raise ValueError("degree-0 chains have no boundary")
        acc = {}
        rows = self.complex.boundaries[self.degree]
        for cell, value in self.coefficients.items():
            for face, sign in rows[cell]:
                acc[face] = acc.get(face, 0) + sign * value
        return Chain(self.complex, self.degree - 1, acc)

    def _binop(self, other, op):
        if not isinstance(other, Chain):
            return NotImplemented
        if other.complex is not self.complex or other.degree != self.degree:
            raise ValueError("chains live on different complexes or degrees")
        acc = dict(self.coefficients)
        for cell, value in other.coefficients.items():
            acc[cell] = op(acc.get(cell, 0), value)
        return Chain(self.complex, self.degree, acc)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return Chain(self.complex, self.degree,
                     {c: -v for c, v in self.coefficients.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return Chain(self.complex, self.degree,
                     {c: scalar * v for c, v in self.coefficients.items()})

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.complex is other.complex and self.degree == other.degree
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((id(self.complex), self.degree,
                     tuple(sorted(self.coefficients.items()))))

    def __repr__(self):
        terms = ", ".join(f"{c}: {v}" for c, v in
                          sorted(self.coefficients.items()))
        return f"Chain(degree={self.degree}, {{{terms}}})"


def inner_product(a, b):
    """Orthonormal-basis pairing of two same-degree chains, exact."""
    if not isinstance(a, Chain) or not isinstance(b, Chain):
        raise TypeError("inner_product expects chains")
    if a.complex is not b.complex:
        raise ValueError("chains live on different complexes")
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    small, large = a.coefficients, b.coefficients
    if len(small) > len(large):
        small, large = large, small
    return sum((v * large[c] for c, v in small.items() if c in large),
               Fraction(0))


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    ok: bool
    offenders: tuple


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per structural invariant plus offending cell indices."""

    regularity_degree: int
    checks: tuple

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def validate(complex):
    """Check the four structural invariants of an N-regular decomposition.

    1. boundary of boundary vanishes in every degree;
    2. every (n-1)-cell has the same number N of (n-2)-faces;
    3. every (n-1)-cell lies in the boundary of exactly two n-cells;
    4. two distinct (n-1)-cells share at most one (n-2)-face and at most
       one common n-cell.
    Failures are report entries, never exceptions.
    """
    n = complex.dim

    dd_offenders = []
    for k in range(2, n + 1):
        for i in range(complex.count(k)):
            acc = {}
            for face, sign in complex.boundaries[k][i]:
                for face2, sign2 in complex.boundaries[k - 1][face]:
                    acc[face2] = acc.get(face2, 0) + sign * sign2
            if any(v != 0 for v in acc.values()):
                dd_offenders.append((k, i))

    facet_rows = complex.boundaries[n - 1] if n - 1 >= 1 else ()
    if n - 1 == 0:
        degree = 0
        reg_offenders = []
    else:
        degree = len(facet_rows[0]) if facet_rows else 0
        reg_offenders = [i for i, row in enumerate(facet_rows)
                         if len(row) != degree]

    two_offenders = [i for i, inc in enumerate(complex.cofaces(n - 1))
                     if len(inc) != 2]

    pair_offenders = set()
    ridge_pairs = {}
    for inc in complex.cofaces(n - 2):
        for (i, _), (j, _) in itertools.combinations(inc, 2):
            key = (i, j) if i < j else (j, i)
            ridge_pairs[key] = ridge_pairs.get(key, 0) + 1
    coface_pairs = {}
    for row in complex.boundaries[n]:
        for (i, _), (j, _) in itertools.combinations(row, 2):
            key = (i, j) if i < j else (j, i)
            coface_pairs[key] = coface_pairs.get(key, 0) + 1
    for key, cnt in ridge_pairs.items():
        if cnt > 1:
            pair_offenders.add(key)
    for key, cnt in coface_pairs.items():
        if cnt > 1:
            pair_offenders.add(key)

    checks = (
        ValidationCheck("boundary_square_zero", not dd_offenders,
                        tuple(dd_offenders)),
        ValidationCheck("facet_regularity", not reg_offenders,
                        tuple(reg_offenders)),
        ValidationCheck("two_cofacets", not two_offenders,
                        tuple(two_offenders)),
        ValidationCheck("pair_uniqueness", not pair_offenders,
                        tuple(sorted(pair_offenders))),
    )
    return ValidationReport(regularity_degree=degree, checks=checks)


# ---------------------------------------------------------------------------
# File format


def parse_complex(text):
    """Parse the line-based complex format into a PolyComplex.

    Format: ``pcomplex <n>``, then ``cells <k> <count>`` per dimension,
    then ``boundary <k> <cell> : <+-face> ...`` lines with a mandatory sign
    glyph per face.  ``#`` starts a comment.  Boundaries are kept exactly as
    listed; no sign normalization happens here.
    """
    dim = None
    counts = {}
    boundary_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "pcomplex":
            if dim is not None:
                raise ComplexFormatError(f"line {lineno}: repeated pcomplex "
                                         "header")
            dim = _parse_int(tokens, 1, lineno, "dimension")
            if len(tokens) != 2:
                raise ComplexFormatError(f"line {lineno}: expected "
                                         "'pcomplex <n>'")
            if dim < 2:
                raise ComplexFormatError(f"line {lineno}: dimension must be "
                                         ">= 2")
        elif head == "cells":
            if dim is None:
                raise ComplexFormatError(f"line {lineno}: cells before "
                                         "pcomplex header")
            if len(tokens) != 3:
                raise ComplexFormatError(f"line {lineno}: expected "
                                         "'cells <k> <count>'")
            k = _parse_int(tokens, 1, lineno, "dimension")
            c = _parse_int(tokens, 2, lineno, "count")
            if not 0 <= k <= dim:
                raise ComplexFormatError(f"line {lineno}: cell dimension {k} "
                                         f"out of range 0..{dim}")
            if k in counts:
                raise ComplexFormatError(f"line {lineno}: repeated cells "
                                         f"line for dimension {k}")
            if c < 0:
                raise ComplexFormatError(f"line {lineno}: negative count")
            counts[k] = c
        elif head == "boundary":
            if dim is None:
                raise ComplexFormatError(f"line {lineno}: boundary before "
                                         "pcomplex header")
            if len(tokens) < 4 or tokens[3] != ":":
                raise ComplexFormatError(f"line {lineno}: expected "
                                         "'boundary <k> <cell> : ...'")
            k = _parse_int(tokens, 1, lineno, "dimension")
            cell = _parse_int(tokens, 2, lineno, "cell index")
            if not 1 <= k <= dim:
                raise ComplexFormatError(f"line {lineno}: boundary dimension "
                                         f"{k} out of range 1..{dim}")
            entries = []
            for tok in tokens[4:]:
                if tok[0] == "+":
                    sign = 1
                elif tok[0] == "-":
                    sign = -1
                else:
                    raise ComplexFormatError(
                        f"line {lineno}: face '{tok}' lacks the mandatory "
                        "sign glyph")
                try:
                    face = int(tok[1:])
                except ValueError:
                    raise ComplexFormatError(
                        f"line {lineno}: bad face index '{tok}'") from None
                entries.append((face, sign, lineno))
            boundary_lines.append((k, cell, entries, lineno))
        else:
            raise ComplexFormatError(f"line {lineno}: unknown directive "
                                     f"'{head}'")
    if dim is None:
        raise ComplexFormatError("line 1: missing 'pcomplex <n>' header")
    for k in range(dim + 1):
        if k not in counts:
            raise ComplexFormatError(f"line 1: missing 'cells {k} <count>'")
    counts_list = [counts[k] for k in range(dim + 1)]
    rows = {k: [None] * counts_list[k] for k in range(1, dim + 1)}
    for k, cell, entries, lineno in boundary_lines:
        if not 0 <= cell < counts_list[k]:
            raise ComplexFormatError(f"line {lineno}: cell index {cell} out "
                                     f"of range for dimension {k}")
        if rows[k][cell] is not None:
            raise ComplexFormatError(f"line {lineno}: duplicate boundary "
                                     f"line for cell {cell} of dimension {k}")
        seen = set()
        clean = []
        for face, sign, ln in entries:
            if not 0 <= face < counts_list[k - 1]:
                raise ComplexFormatError(f"line {ln}: dangling face index "
                                         f"{face} in dimension {k - 1}")
            if face in seen:
                raise ComplexFormatError(f"line {ln}: face {face} appears "
                                         "twice in one boundary list")
            seen.add(face)
            clean.append((face, sign))
        rows[k][cell] = tuple(clean)
    boundaries = [()]
    for k in range(1, dim + 1):
        boundaries.append(tuple(row if row is not None else ()
                                for row in rows[k]))
    return PolyComplex(dim, counts_list, boundaries)


def _parse_int(tokens, idx, lineno, what):
    try:
        return int(tokens[idx])
    except (IndexError, ValueError):
        raise ComplexFormatError(
            f"line {lineno}: expected integer {what}") from None


def emit_complex(complex, header_comments=()):
    """Deterministic text form; parse(emit(X)) reproduces X exactly."""
    lines = [f"# {c}" for c in header_comments]
    lines.append(f"pcomplex {complex.dim}")
    for k in range(complex.dim + 1):
        lines.append(f"cells {k} {complex.count(k)}")
    for k in range(1, complex.dim + 1):
        for i, row in enumerate(complex.boundaries[k]):
            faces = " ".join(f"{'+' if s > 0 else '-'}{f}" for f, s in row)
            lines.append(f"boundary {k} {i} : {faces}".rstrip())
    return "\n".join(lines) + "\n"


def complex_hash(complex):
    """Short content hash of the emitted form (stable fixture id)."""
    return hashlib.sha256(emit_complex(complex).encode()).hexdigest()[:12]


def parse_chain(text, complex):
    """Parse a ``chain <k>`` file against a known complex.

    Body lines are ``<rational> <cell-index>`` with rationals written as
    ``p/q`` or plain integers; repeated cells accumulate.
    """
    degree = None
    coeffs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "chain":
            if degree is not None:
                raise ComplexFormatError(f"line {lineno}: repeated chain "
                                         "header")
            if len(tokens) != 2:
                raise ComplexFormatError(f"line {lineno}: expected "
                                         "'chain <k>'")
            degree = _parse_int(tokens, 1, lineno, "degree")
            if not 0 <= degree <= complex.dim:
                raise ComplexFormatError(f"line {lineno}: chain degree "
                                         f"{degree} out of range")
        else:
            if degree is None:
                raise ComplexFormatError(f"line {lineno}: coefficient before "
                                         "'chain <k>' header")
            if len(tokens) != 2:
                raise ComplexFormatError(f"line {lineno}: expected "
                                         "'<rational> <cell-index>'")
            value = parse_rational(tokens[0], lineno)
            cell = _parse_int(tokens, 1, lineno, "cell index")
            if not 0 <= cell < complex.count(degree):
                raise ComplexFormatError(f"line {lineno}: cell index {cell} "
                                         f"out of range in degree {degree}")
            coeffs[cell] = coeffs.get(cell, Fraction(0)) + value
    if degree is None:
        raise ComplexFormatError("line 1: missing 'chain <k>' header")
    return Chain(complex, degree, coeffs)


def emit_chain(chain):
    lines = [f"chain {chain.degree}"]
    for cell in sorted(chain.coefficients):
        lines.append(f"{chain.coefficients[cell]} {cell}")
    return "\n".join(lines) + "\n"


def parse_rational(token, lineno=None):
    """Exact ``p/q`` or integer literal; decimal floats are rejected."""
    where = f"line {lineno}: " if lineno is not None else ""
    if any(ch in token for ch in ".eE"):
        raise ComplexFormatError(f"{where}rational '{token}' must be written "
                                 "as p/q, not a decimal")
    try:
        if "/" in token:
            num, den = token.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise ComplexFormatError(
            f"{where}bad rational '{token}'") from None


# ---------------------------------------------------------------------------
# Generators


def generate(name, *params):
    """Deterministic fixture complexes.

    Supported: ``simplex_boundary(d)`` for d in 3..5, ``octahedron``,
    ``grid_torus(a, b)`` with a, b >= 3.
    """
    if name == "simplex_boundary":
        if len(params) != 1:
            raise GeneratorError("simplex_boundary takes one parameter")
        d = params[0]
        if d not in (3, 4, 5):
            raise GeneratorError("simplex_boundary supports d in {3, 4, 5}")
        return simplex_boundary(d)
    if name == "octahedron":
        if params:
            raise GeneratorError("octahedron takes no parameters")
        return octahedron()
    if name == "grid_torus":
        if len(params) != 2:
            raise GeneratorError("grid_torus takes two parameters")
        a, b = params
        if a < 3 or b < 3:
            raise GeneratorError("grid_torus needs a, b >= 3")
        return grid_torus(a, b)
    raise GeneratorError(f"unsupported generator '{name}'")


def simplex_boundary(d):
    """Boundary complex of the d-simplex: a combinatorial (d-1)-sphere.

    Cells of dimension k are the (k+1)-subsets of {0..d} in lexicographic
    order, oriented by increasing vertex order, with the alternating-sign
    simplicial boundary.
    """
    n = d - 1
    verts = range(d + 1)
    cells = []
    index = []
    for k in range(n + 1):
        level = sorted(itertools.combinations(verts, k + 1))
        cells.append(level)
        index.append({c: i for i, c in enumerate(level)})
    boundaries = [()]
    for k in range(1, n + 1):
        rows = []
        for simplex in cells[k]:
            row = []
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1:]
                row.append((index[k - 1][face], (-1) ** i))
            rows.append(tuple(row))
        boundaries.append(tuple(rows))
    return PolyComplex(n, [len(level) for level in cells], boundaries)


def octahedron():
    """Surface of the octahedron: 6 vertices, 12 edges, 8 triangles.

    Vertices 2i and 2i+1 are antipodal; every triangle picks one vertex per
    antipodal pair.  Simplicial orientation by increasing vertex order.
    """
    verts = range(6)
    edges = [e for e in itertools.combinations(verts, 2)
             if e[0] // 2 != e[1] // 2]
    tris = sorted((a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5))
    eidx = {e: i for i, e in enumerate(edges)}
    b1 = tuple(((e[0], -1), (e[1], 1)) for e in edges)
    b2 = []
    for t in tris:
        row = []
        for i in range(3):
            face = t[:i] + t[i + 1:]
            row.append((eidx[face], (-1) ** i))
        b2.append(tuple(row))
    return PolyComplex(2, [6, len(edges), len(tris)], [(), b1, tuple(b2)])


def grid_torus(a, b):
    """The a x b square-grid cell decomposition of the 2-torus.

    Sizes below 3 are rejected: a doubled edge pair breaks the
    one-common-face rule (use cubical_torus directly to build such
    counterexamples).
    """
    if a < 3 or b < 3:
        raise GeneratorError("grid_torus needs a, b >= 3")
    return cubical_torus((a, b))


def cube_torus(a, b, c):
    """The a x b x c cubical decomposition of the 3-torus.

    Not part of the named generator set; used as the 3-dimensional fixture
    with a nonzero transfer operator.
    """
    if min(a, b, c) < 3:
        raise GeneratorError("cube_torus needs a, b, c >= 3")
    return cubical_torus((a, b, c))


def cubical_torus_cells(dims):
    """Ordered cell list of the cubical torus with the given side lengths.

    Per dimension k the cells are (directions, position) pairs: direction
    subsets in lexicographic order, positions in row-major order with the
    first axis fastest.  Returns one list per dimension.
    """
    n = len(dims)
    axes = range(n)
    positions = [p for p in itertools.product(*(range(d) for d in
                                                reversed(dims)))]
    positions = [tuple(reversed(p)) for p in positions]
    levels = []
    for k in range(n + 1):
        level = []
        for dirs in itertools.combinations(axes, k):
            for pos in positions:
                level.append((dirs, pos))
        levels.append(level)
    return levels


def cubical_torus(dims):
    """Cubical torus complex with the standard alternating boundary signs."""
    n = len(dims)
    levels = cubical_torus_cells(dims)
    index = [{cell: i for i, cell in enumerate(level)} for level in levels]

    def shifted(pos, axis):
        out = list(pos)
        out[axis] = (out[axis] + 1) % dims[axis]
        return tuple(out)

    boundaries = [()]
    for k in range(1, n + 1):
        rows = []
        for dirs, pos in levels[k]:
            row = []
            for i, axis in enumerate(dirs):
                rest = dirs[:i] + dirs[i + 1:]
                sign = (-1) ** i
                row.append((index[k - 1][(rest, shifted(pos, axis))], sign))
                row.append((index[k - 1][(rest, pos)], -sign))
            rows.append(tuple(row))
        boundaries.append(tuple(rows))
    return PolyComplex(n, [len(level) for level in levels], boundaries)
