"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction (plain ints are promoted on entry).
All routines are deterministic: pivots are chosen by position, never by
magnitude, so repeated runs produce identical bases.  No floating point.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mat(rows):
    """Promote a nested sequence to a Fraction matrix (copies)."""
    return [[frac(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    c = frac(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of {x : a x = 0}, echelonized, deterministic ordering."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [frac(b[i])] for i in range(rows)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def solve_matrix(a, bs):
    """Solve a x = b for each column b of bs; None if any is inconsistent."""
    cols_b = len(bs[0])
    sols = []
    for j in range(cols_b):
        x = solve(a, [row[j] for row in bs])
        if x is None:
            return None
        sols.append(x)
    return transpose(sols)


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def det(a):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return ONE
    m = [[frac(x) for x in row] for row in a]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pr is None:
                return ZERO
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(a):
    """Coefficients [c_0, ..., c_n] of det(xI - a) = sum c_k x^k (c_n = 1).

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = identity(n)
    for k in range(1, n + 1):
        if k > 1:
            m = mat_mul(a, m)
            for i in range(n):
                m[i][i] += c
        c = -trace(mat_mul(a, m)) / k if k > 1 else -trace(a)
        coeffs[n - k] = c
    return coeffs


def _sign_changes(seq):
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def symmetric_signature(b):
    """Signature (p, q) of an exact symmetric matrix.

    Uses the characteristic polynomial and Descartes' rule of signs, which
    is exact because symmetric matrices have only real eigenvalues.
    """
    n = len(b)
    for i in range(n):
        for j in range(i):
            if b[i][j] != b[j][i]:
                raise ValueError("matrix is not symmetric")
    cs = charpoly(b)
    p = _sign_changes(cs)
    q = _sign_changes([c if k % 2 == 0 else -c for k, c in enumerate(cs)])
    return p, q


def leading_principal_minors(b):
    """Leading principal minors d_1..d_n by Bareiss, or None on a zero pivot.

    A None return means some leading minor vanishes before the last one; the
    matrix is then certainly not definite, but det must be obtained elsewhere.
    Integer input stays integer (exact divisions), anything else runs over
    Fractions.
    """
    n = len(b)
    exact_int = all(isinstance(x, int) for row in b for x in row)
    m = [list(row) for row in b] if exact_int else mat(b)
    minors = []
    prev = 1 if exact_int else ONE
    for k in range(n):
        piv = m[k][k]
        minors.append(piv)
        if piv == 0:
            return None if k < n - 1 else minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * piv - m[i][k] * m[k][j]
                m[i][j] = num // prev if exact_int else num / prev
        prev = piv
    return minors


def in_span(vectors, v):
    """Is v in the span of `vectors` (each a rational vector)?"""
    if not vectors:
        return all(x == 0 for x in v)
    a = transpose(mat(vectors))
    return solve(a, v) is not None


def span_basis(vectors):
    """Echelonized basis of the span of the given vectors."""
    if not vectors:
        return []
    r, pivots = rref(mat(vectors))
    return [r[i] for i in range(len(pivots))]


def intersect_nullspaces(mats):
    """Basis of the joint kernel of a list of matrices (same column count)."""
    stacked = [row for m in mats for row in m]
    if not stacked:
        return []
    return nullspace(stacked)
