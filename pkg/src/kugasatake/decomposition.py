"""Pseudo-idempotents, the eight rank-16 sublattices of Cl+(T), and Phi^re.

The four x_j live in Cl(U+U(2)), the two y_k in Cl(D4(-1)); their products
give the eight pseudo-idempotents 32*eps_i of Cl(T).  Each sublattice
Lambda_i is spanned by the sixteen parity-matched products L_s * K_w of
kernel generators, ordered in four blocks of four (L-index major), which
makes the right action of the quaternion generators block diagonal.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import intlinalg
from . import qmatrix as qm
from .clifford import CliffordAlg, CliffordElem, embed
from .fieldlinalg import solve as field_solve
from .matrixrep import GradedRep
from .quaternion import Quat


class NoIntegralSolution(ValueError):
    pass


class NotIntegral(ValueError):
    pass


class PseudoIdempotent:
    """Primitive element with elem^2 = scale * elem (so elem/scale is idempotent)."""

    def __init__(self, elem: CliffordElem, scale: int):
        self.elem = elem
        self.scale = scale
        if elem * elem != elem * scale:
            raise ValueError(f"element does not satisfy x^2 = {scale} x")
        if _content(elem) != 1:
            raise ValueError("pseudo-idempotent must be primitive")

    def __repr__(self):
        return f"PseudoIdempotent(scale={self.scale}, elem={self.elem})"


def _content(x: CliffordElem) -> int:
    nums = []
    for c in x.coeffs.values():
        f = Fraction(c)
        if f.denominator != 1:
            return 0
        nums.append(abs(f.numerator))
    return math.gcd(*nums) if nums else 0


def build_x_idempotents(clUU2: CliffordAlg):
    """x1 = f3 f1 f2 f4, x2 = 4 f1 f2 - x1, x3 = 2 f3 f4 - x1, x4 = 8 - x1 - x2 - x3."""
    f1, f2, f3, f4 = (clUU2.gen(i) for i in range(1, 5))
    x1 = f3 * f1 * f2 * f4
    x2 = f1 * f2 * 4 - x1
    x3 = f3 * f4 * 2 - x1
    x4 = clUU2.scalar(8) - x1 - x2 - x3
    return [PseudoIdempotent(x, 8) for x in (x1, x2, x3, x4)]


def build_y_idempotents(clD4: CliffordAlg, rep: GradedRep):
    """Solve phi(H) = diag(-2, 2) on the even part; y1 = 2 - H, y2 = 2 + H.

    The even part of Cl(D4(-1))_Q maps isomorphically onto the diagonal
    2x2 quaternion matrices, so the system has a unique rational solution;
    integrality is then checked.
    """
    even_masks = [m for m in clD4.basis_masks(parity=0)]
    cols = []
    for mask in even_masks:
        img = rep.image_of_mask(mask)
        col = []
        for r in range(2):
            for c in range(2):
                col.extend(Fraction(v) for v in img[r][c].coeffs())
        cols.append(col)
    A = [[cols[j][i] for j in range(len(even_masks))] for i in range(16)]
    target = qm.qmat_from_scalar_diag([Fraction(-2), Fraction(2)])
    b = []
    for r in range(2):
        for c in range(2):
            b.extend(Fraction(v) for v in target[r][c].coeffs())
    sol = field_solve(A, b)
    if sol is None:
        raise NoIntegralSolution("no rational H with phi(H) = diag(-2, 2)")
    data = {}
    for mask, c in zip(even_masks, sol):
        if c:
            if c.denominator != 1:
                raise NoIntegralSolution(f"H has non-integral coefficient {c} at {mask:b}")
            data[mask] = c
    H = CliffordElem(clD4, data)
    if H * H != clD4.scalar(4):
        raise NoIntegralSolution("solved H does not satisfy H^2 = 4")
    y1 = clD4.scalar(2) - H
    y2 = clD4.scalar(2) + H
    return [PseudoIdempotent(y1, 4), PseudoIdempotent(y2, 4)], H


# order of the eight epsilons as (x index, y index), 1-based
EPSILON_ORDER = ((1, 1), (2, 2), (3, 2), (4, 1), (1, 2), (2, 1), (3, 1), (4, 2))


def build_epsilons(xs, ys, clT: CliffordAlg, map_uu2, map_d4):
    """The eight 32*eps_i = x_j y_k in Cl(T), in the fixed order."""
    out = []
    for j, k in EPSILON_ORDER:
        xe = embed(xs[j - 1].elem, clT, map_uu2)
        ye = embed(ys[k - 1].elem, clT, map_d4)
        out.append(PseudoIdempotent(xe * ye, 32))
    return out


class KernelGenerators:
    """Saturated kernel of right multiplication by (scale - elem), split by parity."""

    def __init__(self, alg: CliffordAlg, pseudo: PseudoIdempotent):
        self.alg = alg
        self.pseudo = pseudo
        op = pseudo.elem.algebra.scalar(pseudo.scale) - pseudo.elem
        self.even_rows = _parity_kernel(alg, op, 0)
        self.odd_rows = _parity_kernel(alg, op, 1)
        self.rows = self.even_rows + self.odd_rows

    @property
    def rank(self):
        return len(self.rows)


def _parity_kernel(alg: CliffordAlg, op: CliffordElem, parity: int):
    masks = [m for m in alg.basis_masks(parity=parity)]
    index = {m: i for i, m in enumerate(masks)}
    A = [[0] * len(masks) for _ in masks]
    for i, m in enumerate(masks):
        prod = CliffordElem(alg, {m: alg.one_scalar}) * op
        for m2, c in prod.coeffs.items():
            f = Fraction(c)
            assert f.denominator == 1, "integral operator expected"
            A[i][index[m2]] = f.numerator
    rows = intlinalg.left_kernel(A)
    rows.sort()
    # expand back to dense 2^n coordinates
    out = []
    for r in rows:
        dense = [0] * alg.dim
        for i, m in enumerate(masks):
            dense[m] = r[i]
        out.append(dense)
    return out


def kernel_generators(alg: CliffordAlg, pseudo: PseudoIdempotent) -> KernelGenerators:
    return KernelGenerators(alg, pseudo)


class LambdaRe:
    """Rank-16 sublattice of Cl+(T) attached to one pseudo-idempotent.

    basis16 rows are dense 256-vectors; block b (0..3) holds the products
    of the b-th kernel generator L with its four parity-matched K's.
    """

    def __init__(self, clT, basis16, blocks, epsilon):
        self.algebra = clT
        self.basis16 = basis16
        self.blocks = blocks  # list of 4 lists of (L-index, K-index)
        self.epsilon = epsilon

    @property
    def rank(self):
        return intlinalg.int_rank(self.basis16)

    def coordinates(self, elem: CliffordElem):
        """Integer coordinates of an element in the 16-generator basis."""
        dense = [Fraction(c) for c in elem.to_coordinates()]
        vec = [f.numerator if f.denominator == 1 else None for f in dense]
        if any(v is None for v in vec):
            return None
        return intlinalg.solve_int_in_lattice(self.basis16, vec)

    def permute_blocks(self, perm):
        """New LambdaRe with blocks reordered by perm (new_block b = old perm[b])."""
        rows = []
        blocks = []
        for b in perm:
            rows.extend(self.basis16[4 * b: 4 * b + 4])
            blocks.append(self.blocks[b])
        return LambdaRe(self.algebra, rows, blocks, self.epsilon)


def build_lambda(i, clT, xs_embedded_kernels, ys_embedded_kernels, epsilons):
    """Lambda_i from the kernel generators of its (x_j, y_k) pair.

    The sixteen products L_s * K_w with matching parity, grouped by s.
    """
    j, k = EPSILON_ORDER[i - 1]
    L = xs_embedded_kernels[j - 1]
    K = ys_embedded_kernels[k - 1]
    basis = []
    blocks = []
    for s, (Lvec, Lparity) in enumerate(L):
        block = []
        for w, (Kvec, Kparity) in enumerate(K):
            if Lparity != Kparity:
                continue
            prod = Lvec * Kvec
            dense = []
            for c in prod.to_coordinates():
                f = Fraction(c)
                assert f.denominator == 1
                dense.append(f.numerator)
            basis.append(dense)
            block.append((s, w))
        blocks.append(block)
    lam = LambdaRe(clT, basis, blocks, epsilons[i - 1])
    return lam


def embed_kernel_elements(kern: KernelGenerators, clT: CliffordAlg, index_map):
    """Kernel rows as Clifford elements of Cl(T), tagged with parity."""
    out = []
    for rows, parity in ((kern.even_rows, 0), (kern.odd_rows, 1)):
        for r in rows:
            elem = kern.alg.from_coordinates(r)
            out.append((embed(elem, clT, index_map), parity))
    return out


def h_tilde_elements(clT: CliffordAlg, d4_gen_offset=4):
    """h~_1 = 1, h~_{w+1} = h_(-2) * h_w for w = 1..3, inside Cl(T).

    h_(-2) = 2 h_1 - h_2 - h_3 - h_4 is the D4 vector identified with -2.
    """
    g = lambda w: clT.gen(d4_gen_offset + w)
    h_minus2 = g(1) * 2 - g(2) - g(3) - g(4)
    return [clT.one(), h_minus2 * g(1), h_minus2 * g(2), h_minus2 * g(3)]


class RepPhiRe:
    """Right-multiplication matrices of h~_1..h~_4 on a Lambda basis.

    Column a of N_i holds the coordinates of (basis_a * h~_i), i.e.
    coords(x * h~_i) = N_i . coords(x).
    """

    def __init__(self, lam: LambdaRe, htildes, r_quats):
        self.lam = lam
        self.htildes = htildes
        self.r_quats = r_quats  # quaternion avatars of the h~'s
        self.N = []
        for ht in htildes:
            cols = []
            for row in lam.basis16:
                elem = lam.algebra.from_coordinates(row)
                prod = elem * ht
                coords = lam.coordinates(prod)
                if coords is None:
                    raise NotIntegral("right action leaves the lattice")
                cols.append(coords)
            self.N.append([[cols[a][c] for a in range(16)] for c in range(16)])

    def block(self, Ni, b):
        return [row[4 * b: 4 * b + 4] for row in Ni[4 * b: 4 * b + 4]]

    def is_block_diagonal(self):
        for Ni in self.N:
            for r in range(16):
                for c in range(16):
                    if r // 4 != c // 4 and Ni[r][c]:
                        return False
        return True

    def span_is_primitive_rank4(self):
        flat = [[x for row in Ni for x in row] for Ni in self.N]
        divisors = intlinalg.elementary_divisors(flat)
        return len(divisors) == 4 and all(d == 1 for d in divisors)


def build_phi_re(lam: LambdaRe, rep8: GradedRep, clT: CliffordAlg) -> RepPhiRe:
    htildes = h_tilde_elements(clT)
    r_quats = []
    for ht in htildes:
        img = rep8.evaluate(ht)
        for r in range(8):
            for c in range(8):
                if r != c and img[r][c]:
                    raise NotIntegral("h~ image is not diagonal")
        r_quats.append(img[0][0])
    return RepPhiRe(lam, htildes, r_quats)
