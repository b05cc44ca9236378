"""Exact integer linear algebra: Hermite/Smith normal forms, kernels, saturation.

Matrices are lists of lists of Python ints.  All transforms are unimodular,
so kernel bases come out primitive (saturated) for free.
"""

from __future__ import annotations

from fractions import Fraction


def _copy(mat):
    return [list(row) for row in mat]


def identity_int(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul_int(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def hermite_normal_form(A):
    """Row-style HNF.  Returns (H, U) with U unimodular and U*A = H.

    Pivot rows come first; zero rows (if any) are at the bottom, and the
    corresponding rows of U form a primitive basis of the left kernel.
    """
    H = _copy(A)
    n = len(H)
    m = len(H[0]) if n else 0
    U = identity_int(n)
    pivot_row = 0
    for col in range(m):
        # find a nonzero entry at/below pivot_row with minimal |value|
        best = None
        for r in range(pivot_row, n):
            v = H[r][col]
            if v and (best is None or abs(v) < abs(H[best][col])):
                best = r
        if best is None:
            continue
        while True:
            if H[best][col] < 0:
                H[best] = [-x for x in H[best]]
                U[best] = [-x for x in U[best]]
            done = True
            for r in range(pivot_row, n):
                if r == best or not H[r][col]:
                    continue
                q = H[r][col] // H[best][col]
                if q:
                    H[r] = [x - q * y for x, y in zip(H[r], H[best])]
                    U[r] = [x - q * y for x, y in zip(U[r], U[best])]
                if H[r][col]:
                    done = False
            if done:
                break
            best = min((r for r in range(pivot_row, n) if H[r][col]),
                       key=lambda r: abs(H[r][col]))
        H[pivot_row], H[best] = H[best], H[pivot_row]
        U[pivot_row], U[best] = U[best], U[pivot_row]
        # reduce entries above the pivot
        p = H[pivot_row][col]
        for r in range(pivot_row):
            q = H[r][col] // p
            if q:
                H[r] = [x - q * y for x, y in zip(H[r], H[pivot_row])]
                U[r] = [x - q * y for x, y in zip(U[r], U[pivot_row])]
        pivot_row += 1
        if pivot_row == n:
            break
    return H, U


def left_kernel(A):
    """Primitive basis (list of rows) of {v : v*A = 0}."""
    H, U = hermite_normal_form(A)
    return [U[r] for r in range(len(H)) if not any(H[r])]


def right_kernel(A):
    """Primitive basis (list of vectors) of {v : A*v = 0}."""
    At = [list(col) for col in zip(*A)] if A and A[0] else []
    if not At:
        # zero-column matrix: kernel is everything
        return identity_int(len(A[0]) if A else 0)
    return left_kernel(At)


def int_rank(A):
    H, _ = hermite_normal_form(A)
    return sum(1 for row in H if any(row))


def smith_normal_form(A):
    """Returns (divisors, U, V) with U*A*V diagonal = diag(divisors).

    Divisors are nonnegative and satisfy d_i | d_{i+1}.
    """
    S = _copy(A)
    n = len(S)
    m = len(S[0]) if n else 0
    U, V = identity_int(n), identity_int(m)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        S[dst] = [x - q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(n, m):
        # locate minimal nonzero entry in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = S[i][j]
                if v and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            if S[t][t] < 0:
                S[t] = [-x for x in S[t]]
                U[t] = [-x for x in U[t]]
            dirty = False
            for i in range(t + 1, n):
                if S[i][t]:
                    add_row(i, t, S[i][t] // S[t][t])
                    if S[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if S[t][j]:
                    add_col(j, t, S[t][j] // S[t][t])
                    if S[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # divisibility fix-up: fold a bad entry into the pivot block
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if S[i][j] % S[t][t]:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad is None:
                break
            add_row(bad[0], t, -1)  # row_bad += row_t
        t += 1
    divisors = [S[i][i] for i in range(min(n, m))]
    while divisors and divisors[-1] == 0:
        divisors.pop()
    return divisors, U, V


def elementary_divisors(A):
    return smith_normal_form(A)[0]


def saturate(rows):
    """Saturation of the row lattice: (Q-rowspan) intersected with Z^m."""
    if not rows:
        return []
    divisors, _, V = smith_normal_form(rows)
    r = len(divisors)
    # rows of V^-1 indexed by nonzero divisors span the saturation
    Vinv = invert_unimodular(V)
    return [Vinv[i] for i in range(r)]


def invert_unimodular(V):
    """Exact inverse of a unimodular integer matrix, as integer matrix."""
    n = len(V)
    aug = [[Fraction(V[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            assert v.denominator == 1
            row.append(v.numerator)
        out.append(row)
    return out


def is_saturated(rows):
    """True when the row lattice equals its saturation."""
    if not rows:
        return True
    divisors, _, _ = smith_normal_form(rows)
    return all(d == 1 for d in divisors)


def solve_int_in_lattice(basis, v):
    """Integer coordinates of v in the given basis rows, or None."""
    coords = solve_rational_in_span(basis, v)
    if coords is None:
        return None
    out = []
    for c in coords:
        if c.denominator != 1:
            return None
        out.append(c.numerator)
    return out


def solve_rational_in_span(basis, v):
    """Rational coordinates of v in the Q-span of the basis rows, or None."""
    if not basis:
        return None if any(v) else []
    k, m = len(basis), len(basis[0])
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(m)]
    # gaussian elimination on the m x (k+1) system
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        p = aug[row][col]
        aug[row] = [x / p for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, m):
        if aug[r][k]:
            return None
    coords = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coords[col] = aug[r][k]
    return coords
