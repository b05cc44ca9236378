"""Small helpers for matrices with quaternion entries (lists of lists of Quat)."""

from __future__ import annotations

from .quaternion import Quat


def qmat(entries):
    return [[Quat.coerce(x) for x in row] for row in entries]


def qidentity(n):
    return [[Quat(1 if i == j else 0) for j in range(n)] for i in range(n)]


def qzero(n, m=None):
    m = n if m is None else m
    return [[Quat(0)] * m for _ in range(n)]


def qmul(A, B):
    n, k = len(A), len(B)
    m = len(B[0])
    out = [[Quat(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    if Bt[j]:
                        row[j] = row[j] + a * Bt[j]
    return out


def qadd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def qsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def qscale(A, c):
    return [[x * c for x in row] for row in A]


def qeq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def qkron(A, B):
    n, m = len(A), len(A[0])
    p, q = len(B), len(B[0])
    out = [[Quat(0)] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            if A[i][j]:
                for r in range(p):
                    for s in range(q):
                        out[i * p + r][j * q + s] = A[i][j] * B[r][s]
    return out


def qtrace(A):
    t = Quat(0)
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def qis_zero(A):
    return all(not x for row in A for x in row)


def qsupport(A):
    return {(i, j) for i in range(len(A)) for j in range(len(A[0])) if A[i][j]}


def qmat_from_scalar_diag(values):
    n = len(values)
    out = qzero(n)
    for i, v in enumerate(values):
        out[i][i] = Quat.coerce(v)
    return out


def qinverse(A):
    """Inverse of a square quaternion matrix by one-sided Gaussian elimination."""
    n = len(A)
    M = [list(row) for row in A]
    I = qidentity(n)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("quaternion matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        I[col], I[piv] = I[piv], I[col]
        pinv = M[col][col].inverse()
        M[col] = [pinv * x for x in M[col]]
        I[col] = [pinv * x for x in I[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
                I[r] = [x - f * y for x, y in zip(I[r], I[col])]
    return I
