"""Generic exact linear algebra over any of the tower fields.

Works on lists of lists whose entries support +, -, *, / and == 0 exactly
(Fraction, QuadExt, GaussQuad).  ``one`` must be supplied where a matrix
cannot be inspected for its scalar type.
"""

from __future__ import annotations


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = None
            for t in range(k):
                term = Ai[t] * B[t][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    return [sum_entries([A[i][t] * v[t] for t in range(len(v))]) for i in range(len(A))]


def sum_entries(xs):
    acc = xs[0]
    for x in xs[1:]:
        acc = acc + x
    return acc


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[c * x for x in row] for row in A]


def mat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def transpose(A):
    return [list(col) for col in zip(*A)]


def identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def kron(A, B):
    n, m = len(A), len(A[0])
    p, q = len(B), len(B[0])
    out = [[None] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            for r in range(p):
                for s in range(q):
                    out[i * p + r][j * q + s] = A[i][j] * B[r][s]
    return out


def conj_transpose(A, conj):
    return [[conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))]


def rref(A):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = [list(row) for row in A]
    n = len(R)
    m = len(R[0]) if n else 0
    pivots = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if R[r][col] != 0), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        p = R[row][col]
        R[row] = [x / p for x in R[row]]
        for r in range(n):
            if r != row and R[r][col] != 0:
                f = R[r][col]
                R[r] = [x - f * y for x, y in zip(R[r], R[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def right_null_space(A, one):
    """Basis (list of column vectors) of {v : A v = 0}, deterministic pivots."""
    if not A:
        return []
    R, pivots = rref(A)
    m = len(A[0])
    zero = one - one
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = zero - R[r][fc]
        basis.append(v)
    return basis


def solve(A, b):
    """Solve A x = b exactly (b a vector).  Returns x or None if inconsistent."""
    n = len(A)
    m = len(A[0]) if n else 0
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(aug)
    # inconsistency: pivot in the last column
    if m in pivots:
        return None
    zero = None
    for row in R:
        for x in row:
            zero = x - x
            break
        break
    x = [zero] * m
    for r, pc in enumerate(pivots):
        x[pc] = R[r][m]
    # verify (guards against underdetermined systems silently losing info)
    for i in range(n):
        acc = zero
        for t in range(m):
            acc = acc + A[i][t] * x[t]
        if acc != b[i]:
            return None
    return x


def inverse(A, one):
    n = len(A)
    aug = [list(A[i]) + list(identity(n, one)[i]) for i in range(n)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A, one):
    """Determinant by fraction-free-ish elimination (field entries)."""
    n = len(A)
    M = [list(row) for row in A]
    zero = one - one
    sign = 1
    d = one
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            sign = -sign
        p = M[col][col]
        d = d * p
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return d if sign > 0 else zero - d


def is_zero_matrix(A):
    return all(x == 0 for row in A for x in row)
