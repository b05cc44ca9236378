"""Integral lattices: named constructions, kernels, and shortest vectors.

Gram matrices are rational (half-integers occur for the Hurwitz form);
lattice vectors are integral in the chosen basis.  Shortest vectors are
enumerated exactly (rational Cholesky + Fincke-Pohst) and reported one per
antipodal pair in lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction

from . import intlinalg
from .quaternion import hurwitz_gram


class UnknownName(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    pass


class IntLattice:
    """A free Z-module of finite rank with a symmetric rational Gram matrix."""

    def __init__(self, gram):
        n = len(gram)
        g = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.rank = n
        self.gram = g

    def bilinear(self, v, w):
        acc = Fraction(0)
        for i, vi in enumerate(v):
            if vi:
                row = self.gram[i]
                for j, wj in enumerate(w):
                    if wj:
                        acc += vi * row[j] * wj
        return acc

    def q(self, v):
        return self.bilinear(v, v)

    def det(self):
        from .fieldlinalg import det
        return det(self.gram, Fraction(1))

    def signature(self):
        """(n_plus, n_minus) by exact congruence diagonalization."""
        diag = _congruent_diagonal(self.gram)
        plus = sum(1 for d in diag if d > 0)
        minus = sum(1 for d in diag if d < 0)
        return plus, minus

    def __repr__(self):
        return f"IntLattice(rank={self.rank})"


def _congruent_diagonal(G):
    """Diagonal of a matrix congruent to symmetric rational G."""
    n = len(G)
    M = [[Fraction(x) for x in row] for row in G]
    diag = []
    idx = list(range(n))
    while idx:
        k = idx[0]
        if M[k][k] == 0:
            # find l with M[l][l] != 0, or a nonzero off-diagonal pair
            swap = next((l for l in idx if M[l][l] != 0), None)
            if swap is None:
                l = next((l for l in idx[1:] if M[k][l] != 0), None)
                if l is None:
                    diag.append(Fraction(0))
                    idx.pop(0)
                    continue
                # row/col combination makes the diagonal nonzero
                for j in range(n):
                    M[k][j] += M[l][j]
                for i in range(n):
                    M[i][k] += M[i][l]
            else:
                k = swap
        piv = M[k][k]
        diag.append(piv)
        idx.remove(k)
        for l in list(idx):
            f = M[k][l] / piv
            if f:
                for j in range(n):
                    M[l][j] -= f * M[k][j]
                for i in range(n):
                    M[i][l] -= f * M[i][k]
    return diag


class SubLattice:
    """Saturated sublattice of Z^ambient_rank given by primitive basis rows."""

    def __init__(self, ambient_rank, basis):
        self.ambient_rank = ambient_rank
        self.basis = [list(map(int, row)) for row in basis]

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, v):
        return intlinalg.solve_int_in_lattice(self.basis, list(v)) is not None

    def coordinates(self, v):
        return intlinalg.solve_int_in_lattice(self.basis, list(v))

    def __repr__(self):
        return f"SubLattice(rank={self.rank}, ambient={self.ambient_rank})"


def smith_normal_form(A):
    """Elementary divisors with unimodular transforms; see intlinalg."""
    return intlinalg.smith_normal_form(A)


def integer_kernel(A):
    """Saturated left kernel {v : v*A = 0} as a SubLattice (row convention)."""
    rows = intlinalg.left_kernel(A)
    rows.sort()
    return SubLattice(len(A), rows)


def named_lattice(name):
    """U, U2 (= U(2)), D4minus, or an orthogonal sum of those."""
    if isinstance(name, (list, tuple)):
        return orthogonal_sum([named_lattice(n) for n in name])
    key = str(name).strip()
    if key == "U":
        return IntLattice([[0, 1], [1, 0]])
    if key in ("U2", "U(2)"):
        return IntLattice([[0, 2], [2, 0]])
    if key.startswith("U(") and key.endswith(")"):
        n = int(key[2:-1])
        return IntLattice([[0, n], [n, 0]])
    if key == "D4minus":
        mo = hurwitz_gram()
        return IntLattice([[-2 * x for x in row] for row in mo])
    raise UnknownName(f"unknown lattice name: {name!r}")


def orthogonal_sum(lattices):
    n = sum(L.rank for L in lattices)
    gram = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return IntLattice(gram)


def _ldl(G):
    """G = L^T D L with unit upper-triangular L (row space form).

    Returns (D, Lrows) where Q(x) = sum_i D[i] * (x_i + sum_{j>i} L[i][j] x_j)^2.
    Raises NotPositiveDefinite if some D[i] <= 0.
    """
    n = len(G)
    M = [[Fraction(x) for x in row] for row in G]
    D = [Fraction(0)] * n
    L = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        D[i] = M[i][i]
        if D[i] <= 0:
            raise NotPositiveDefinite("form is not positive definite on the sublattice")
        L[i][i] = Fraction(1)
        for j in range(i + 1, n):
            L[i][j] = M[i][j] / D[i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                M[r][c] -= M[i][r] * M[i][c] / D[i]
    return D, L


def _enumerate_up_to(G, bound):
    """All nonzero x with Q(x) <= bound, one per antipodal pair."""
    n = len(G)
    D, L = _ldl(G)
    found = []
    x = [0] * n

    def rec(i, remaining):
        # Q = sum_t D_t (x_t + sum_{j>t} L_tj x_j)^2, filled from t = n-1 down
        if i < 0:
            if any(x):
                found.append((list(x), bound - remaining))
            return
        c = sum(L[i][j] * x[j] for j in range(i + 1, n))
        center = -c  # D_i (x_i + c)^2 is monotone away from -c

        def val(xi):
            d = Fraction(xi) + c
            return d * d * D[i]

        m0 = center.numerator // center.denominator  # floor
        xi = m0
        if val(xi) > remaining:
            xi = m0 + 1  # floor(center) may sit left of the interval
        while val(xi) <= remaining:
            x[i] = xi
            rec(i - 1, remaining - val(xi))
            xi += 1
        xi = m0 - 1
        while val(xi) <= remaining:
            x[i] = xi
            rec(i - 1, remaining - val(xi))
            xi -= 1
        x[i] = 0

    rec(n - 1, Fraction(bound))
    reps = {}
    for v, norm in found:
        nkey = tuple(-a for a in v)
        if nkey in reps:
            continue
        reps[tuple(v)] = norm
    return [(list(k), norm) for k, norm in sorted(reps.items())]


def shortest_vectors(sub, form):
    """All minimal-norm nonzero vectors of the sublattice, up to sign.

    ``form`` is a symmetric positive-definite rational matrix on the ambient
    space; vectors are returned in ambient coordinates, lexicographically
    ordered, one per antipodal pair.
    """
    basis = sub.basis if isinstance(sub, SubLattice) else [list(r) for r in sub]
    if not basis:
        return []
    k = len(basis)
    amb = len(basis[0])
    F = [[Fraction(form[i][j]) for j in range(amb)] for i in range(amb)]
    G = [[Fraction(0)] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            G[a][b] = sum(basis[a][i] * F[i][j] * basis[b][j]
                          for i in range(amb) for j in range(amb))
    # initial bound: smallest diagonal Gram entry
    bound = min(G[i][i] for i in range(k))
    if bound <= 0:
        raise NotPositiveDefinite("form is not positive definite on the sublattice")
    hits = _enumerate_up_to(G, bound)
    minimum = min(norm for _, norm in hits)
    out = []
    for coords, norm in hits:
        if norm == minimum:
            v = [sum(coords[a] * basis[a][i] for a in range(k)) for i in range(amb)]
            vv = _sign_normalize(v)
            out.append(vv)
    return sorted(out), minimum


def _sign_normalize(v):
    for a in v:
        if a > 0:
            return list(v)
        if a < 0:
            return [-x for x in v]
    return list(v)


def shortest_vectors_bruteforce(sub, form, box=3):
    """Oracle: enumerate all coordinate vectors with |c_i| <= box."""
    basis = sub.basis if isinstance(sub, SubLattice) else [list(r) for r in sub]
    k = len(basis)
    amb = len(basis[0])
    F = [[Fraction(form[i][j]) for j in range(amb)] for i in range(amb)]
    import itertools
    best = None
    hits = []
    for coords in itertools.product(range(-box, box + 1), repeat=k):
        if not any(coords):
            continue
        v = [sum(coords[a] * basis[a][i] for a in range(k)) for i in range(amb)]
        norm = sum(v[i] * F[i][j] * v[j] for i in range(amb) for j in range(amb))
        if best is None or norm < best:
            best = norm
            hits = [v]
        elif norm == best:
            hits.append(v)
    reps = set()
    for v in hits:
        reps.add(tuple(_sign_normalize(v)))
    return sorted(list(r) for r in reps), best
