"""Dense exact linear algebra over the rationals.

Matrices are plain lists of lists whose entries are ints or
``fractions.Fraction``; vectors are plain lists.  Everything stays exact:
there is no floating point anywhere in this module.  Sizes in this package
are desk scale (a few hundred rows at most), so clarity wins over asymptotic
cleverness.
"""

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    """Raised when an exact solve meets a singular square system."""


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m, v):
    return [dot(row, v) for row in m]


def mat_mul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(m, s):
    return [[s * x for x in row] for row in m]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
               for ra, rb in zip(a, b))


def _echelon(m):
    """Row-reduce a copy of ``m`` to echelon form over Fraction.

    Returns (rows, pivot_columns).
    """
    rows = [[Fraction(x) for x in row] for row in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(_echelon(m)[1])


def nullspace(m):
    """Basis of the right kernel of ``m``, as a list of Fraction vectors."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = _echelon(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of ``m x = b``, or None if inconsistent.

    ``m`` may be rectangular; free variables are set to zero.
    """
    if not m:
        return [] if not any(b) else None
    ncols = len(m[0])
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    rows, pivots = _echelon(aug)
    for r in range(len(rows)):
        if all(x == 0 for x in rows[r][:ncols]) and rows[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rows[r][ncols]
    return x


def solve_invertible(m, b):
    """Solve a square nonsingular system, raising SingularMatrixError otherwise."""
    n = len(m)
    x = solve(m, b)
    if x is None or rank(m) < n:
        raise SingularMatrixError("square system is singular")
    return x


def determinant(m):
    """Exact determinant by fraction elimination."""
    n = len(m)
    rows = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def charpoly(m):
    """Characteristic polynomial det(x*Id - m) by the Berkowitz method.

    Division free: integer input gives integer coefficients.  Returns the
    coefficient list highest power first, so the leading entry is always 1
    and the last entry is det(-m)... i.e. (-1)^n det(m) appears last.
    """
    n = len(m)
    if n == 0:
        return [1]
    poly = [1, -m[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k
        a = m[k][k]
        row = m[k][k + 1:]
        col = [m[i][k] for i in range(k + 1, n)]
        sub = [m[i][k + 1:] for i in range(k + 1, n)]
        t = [1, -a]
        v = col
        for _ in range(size - 1):
            t.append(-dot(row, v))
            v = mat_vec(sub, v)
        new = []
        for i in range(size + 1):
            acc = 0
            for j, pj in enumerate(poly):
                d = i - j
                if 0 <= d < len(t):
                    acc += t[d] * pj
            new.append(acc)
        poly = new
    return poly
