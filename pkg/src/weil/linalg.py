"""Exact linear algebra over the rationals (row reduction, kernels, spans).

Matrices are lists of rows.  Entries are converted to :class:`Fraction` on
entry so integer input is fine.
"""

from fractions import Fraction


def to_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows, ncols=None):
    """Return ``(R, pivots)`` with ``R`` the reduced row echelon form."""
    m = to_fraction_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1]) if rows else 0


def nullspace(rows, ncols):
    """Basis (list of vectors) of ``{v : A v = 0}`` for ``A`` with ``ncols`` columns."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def matmul(a, b):
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), 0) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def kron(a, b):
    return [
        [x * y for x in ra for y in rb]
        for ra in a
        for rb in b
    ]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def in_span(vectors, v):
    """True when ``v`` is a linear combination of ``vectors``."""
    if not vectors:
        return all(x == 0 for x in v)
    return rank(vectors + [v], len(v)) == rank(vectors, len(v))


def solve(columns, v):
    """Coefficients ``c`` with ``sum c_i columns[i] == v``, or ``None``.

    Requires the columns to be linearly independent for uniqueness.
    """
    n = len(columns)
    aug = [[col[i] for col in columns] + [v[i]] for i in range(len(v))]
    r, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for row, p in zip(r, pivots):
        sol[p] = row[n]
    return sol


def same_span(a, b, dim):
    ra = rank(a, dim) if a else 0
    rb = rank(b, dim) if b else 0
    if ra != rb:
        return False
    if not a:
        return True
    return rank(a + b, dim) == ra
