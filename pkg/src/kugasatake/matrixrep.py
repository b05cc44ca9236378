"""Matrix representations of Clifford algebras over Q and H_Q.

The concrete homomorphism for T = U + U(2) + D4(-1) is built by graded
Kronecker gluing of the rank-2 pieces; the even part of the resulting
8x8 quaternion representation is supported on the row classes
{1,4,6,7} / {2,3,5,8}, which is what ``even_sparsity_check`` verifies and
``SplitRep`` uses to land in M_4(H) x M_4(H).
"""

from __future__ import annotations

from fractions import Fraction

from . import qmatrix as qm
from .clifford import CliffordAlg, CliffordElem, RelationViolation, glue
from .quaternion import HURWITZ_H, QUAT_I, QUAT_J, QUAT_K, Quat


class PatternViolation(ValueError):
    def __init__(self, mask, entry):
        self.mask = mask
        self.entry = entry
        super().__init__(f"even element {bin(mask)} has support at forbidden entry {entry}")


class OddElement(ValueError):
    pass


class GradedRep:
    """Algebra homomorphism Cl(V) -> M_dim(H_Q) with a diagonal Z_2-grading.

    ``grading`` is the +-1 diagonal of the grading operator: conjugating by
    it negates every generator image.  Generator images must be odd for it.
    """

    def __init__(self, source: CliffordAlg, gen_images, grading, check=True):
        self.source = source
        self.gen_images = [qm.qmat(g) for g in gen_images]
        self.dim = len(self.gen_images[0]) if self.gen_images else 0
        self.grading = list(grading)
        self._image_cache = {0: qm.qidentity(self.dim)}
        if check:
            self._verify()

    def _verify(self):
        n = self.source.n
        bil = self.source.bilinear
        ident = qm.qidentity(self.dim)
        for i in range(n):
            for j in range(i, n):
                a, b = self.gen_images[i], self.gen_images[j]
                anti = qm.qadd(qm.qmul(a, b), qm.qmul(b, a))
                want = qm.qscale(ident, Quat(2 * bil[i][j]))
                if not qm.qeq(anti, want):
                    raise RelationViolation(i + 1, j + 1)
        for idx, g in enumerate(self.gen_images):
            for r in range(self.dim):
                for c in range(self.dim):
                    if g[r][c] and self.grading[r] == self.grading[c]:
                        raise RelationViolation(
                            idx + 1, idx + 1,
                            f"generator image {idx + 1} is not odd for the grading")

    def image_of_mask(self, mask):
        hit = self._image_cache.get(mask)
        if hit is not None:
            return hit
        low = mask & (-mask)
        rest = mask ^ low
        # e_mask = e_low * e_rest with low the smallest index
        img = qm.qmul(self.gen_images[low.bit_length() - 1], self.image_of_mask(rest))
        self._image_cache[mask] = img
        return img

    def evaluate(self, x: CliffordElem):
        if x.algebra is not self.source:
            raise ValueError("element does not belong to this representation's algebra")
        out = qm.qzero(self.dim)
        for mask, c in x.coeffs.items():
            out = qm.qadd(out, qm.qscale(self.image_of_mask(mask), Quat(c)))
        return out

    def grading_matrix(self):
        return qm.qmat_from_scalar_diag(self.grading)


def extend_by_flca(source: CliffordAlg, gen_images, grading) -> GradedRep:
    """The unique extension of the generator assignment, after checking the
    Clifford relations pairwise (which covers all lattice vectors)."""
    return GradedRep(source, gen_images, grading, check=True)


def rep_U(n: int) -> tuple[CliffordAlg, GradedRep]:
    """Cl(U(n)) -> M_2(Q): f1 -> [[0,1],[0,0]], f2 -> [[0,0],[2n,0]]."""
    alg = CliffordAlg([[Fraction(0), Fraction(n)], [Fraction(n), Fraction(0)]])
    f1 = [[0, 1], [0, 0]]
    f2 = [[0, 0], [2 * n, 0]]
    return alg, extend_by_flca(alg, [f1, f2], [1, -1])


def rep_D4minus() -> tuple[CliffordAlg, GradedRep]:
    """Cl(D4(-1)) -> M_2(o) via h_w -> -2 z_w -> [[0, z_w], [-2 conj(z_w), 0]]."""
    from .quaternion import hurwitz_gram
    mo = hurwitz_gram()
    alg = CliffordAlg([[-2 * x for x in row] for row in mo])
    images = []
    for z in (HURWITZ_H, QUAT_I, QUAT_J, QUAT_K):
        images.append([[Quat(0), z], [Quat(-2) * z.conjugate(), Quat(0)]])
    return alg, extend_by_flca(alg, images, [1, -1])


def graded_kronecker(r1: GradedRep, r2: GradedRep):
    """Glue two graded reps into a rep of Cl(V + V') of size dim1*dim2.

    First-factor generators map to Kron(phi1(v), 1); second-factor ones to
    Kron(g1, phi2(v')) where g1 is the first factor's grading operator, so
    the two families anticommute.  Returns (rep, glued algebra, index maps).
    """
    glued, map_a, map_b = glue(r1.source, r2.source)
    images = []
    id2 = qm.qidentity(r2.dim)
    g1 = r1.grading_matrix()
    for img in r1.gen_images:
        images.append(qm.qkron(img, id2))
    for img in r2.gen_images:
        images.append(qm.qkron(g1, img))
    grading = [a * b for a in r1.grading for b in r2.grading]
    rep = extend_by_flca(glued, images, grading)
    return rep, glued, map_a, map_b


PLUS_ROWS = (1, 4, 6, 7)
MINUS_ROWS = (2, 3, 5, 8)


class SplitRep:
    """Block extractor Cl+(T_Q) -> M_4(H_Q) x M_4(H_Q) for the 8x8 rep."""

    def __init__(self, rep: GradedRep):
        if rep.dim != 8:
            raise ValueError("split requires the 8x8 representation")
        self.rep = rep
        self.plus_rows = PLUS_ROWS
        self.minus_rows = MINUS_ROWS

    def __call__(self, x: CliffordElem):
        if not x.is_even():
            raise OddElement("split_eval needs an even element")
        m = self.rep.evaluate(x)
        plus = [[m[r - 1][c - 1] for c in self.plus_rows] for r in self.plus_rows]
        minus = [[m[r - 1][c - 1] for c in self.minus_rows] for r in self.minus_rows]
        return plus, minus


def even_sparsity_check(rep: GradedRep) -> SplitRep:
    """Verify every even basis monomial's image sits in the displayed pattern."""
    if rep.dim != 8:
        raise ValueError("sparsity pattern check is for the 8x8 representation")
    plus = set(r - 1 for r in PLUS_ROWS)
    allowed = {(r, c) for r in range(8) for c in range(8)
               if (r in plus) == (c in plus)}
    for mask in rep.source.basis_masks(parity=0):
        img = rep.image_of_mask(mask)
        for entry in qm.qsupport(img):
            if entry not in allowed:
                raise PatternViolation(mask, entry)
    return SplitRep(rep)


def split_eval(split: SplitRep, x: CliffordElem):
    return split(x)


def build_T_rep():
    """The full chain for T = U + U(2) + D4(-1).

    Returns a dict with the three small reps, the intermediate U+U(2) rep,
    the 8x8 rep of Cl(T), the glued algebras, and the split extractor.
    """
    algU, repU = rep_U(1)
    algU2, repU2 = rep_U(2)
    algD4, repD4 = rep_D4minus()
    repUU2, algUU2, mapU, mapU2 = graded_kronecker(repU, repU2)
    repT, algT, mapUU2, mapD4 = graded_kronecker(repUU2, repD4)
    split = even_sparsity_check(repT)
    return {
        "algU": algU, "repU": repU,
        "algU2": algU2, "repU2": repU2,
        "algD4": algD4, "repD4": repD4,
        "algUU2": algUU2, "repUU2": repUU2,
        "algT": algT, "repT": repT,
        "map_UU2_into_T": mapUU2, "map_D4_into_T": mapD4,
        "split": split,
    }
