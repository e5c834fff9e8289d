"""Small dense linear algebra over exact rationals.

Everything here works on lists of lists of Fraction and is meant for the
modest system sizes that show up in basis construction and validation
(tens of unknowns).  No pivoting strategy beyond "first nonzero" is
needed since the arithmetic is exact.
"""

from fractions import Fraction


class InconsistentSystem(ValueError):
    """Raised when an exact linear system has no solution."""

    def __init__(self, row_index, msg=None):
        self.row_index = row_index
        super().__init__(msg or f"inconsistent equation at row {row_index}")


class UnderdeterminedSystem(ValueError):
    """Raised when a system expected to have a unique solution does not."""


def _rref(rows, ncols):
    """Reduced row echelon form in place; returns pivot column -> row map."""
    m = [list(r) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    return m, pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    _, pivots = _rref(rows, ncols)
    return len(pivots)


def nullspace(rows, ncols):
    """Basis of the nullspace of the given matrix, one vector per free column."""
    if not rows:
        return [[Fraction(i == j) for i in range(ncols)] for j in range(ncols)]
    m, pivots = _rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for c, pr in pivots.items():
            v[c] = -m[pr][free]
        basis.append(v)
    return basis


def solve(rows, rhs, allow_overdetermined=True):
    """Unique exact solution of rows * x = rhs.

    Raises InconsistentSystem if no solution exists and
    UnderdeterminedSystem if the solution is not unique.
    """
    if not rows:
        raise UnderdeterminedSystem("empty system")
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = _rref(aug, ncols)
    for i, row in enumerate(m):
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            raise InconsistentSystem(i)
    if len(pivots) < ncols:
        raise UnderdeterminedSystem(f"rank {len(pivots)} < {ncols} unknowns")
    x = [Fraction(0)] * ncols
    for c, pr in pivots.items():
        x[c] = m[pr][ncols]
    return x


def det(matrix):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(matrix)
    m = [list(r) for r in matrix]
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d
