"""Integral Clifford algebras over an arbitrary symmetric Gram matrix.

Basis monomials are indexed by subsets of {1..n} stored as bitmasks, with
the straightening law e_i e_j = 2 b(e_i, e_j) - e_j e_i (i > j) and
e_i e_i = b(e_i, e_i) applied eagerly, so elements always live in normal
form and equality is coefficient comparison.  Coefficients may be Fraction
or QuadExt; the scalar ring is fixed by the algebra's ``one``.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QuadExt


class AlgebraMismatch(ValueError):
    pass


class RelationViolation(ValueError):
    def __init__(self, i, j, msg=None):
        self.pair = (i, j)
        super().__init__(msg or f"generator images violate the Clifford relation for pair ({i}, {j})")


class CliffordAlg:
    """2^n-dimensional Clifford algebra of an n-generator quadratic lattice."""

    def __init__(self, bilinear, scalar_one=None):
        n = len(bilinear)
        if scalar_one is None:
            scalar_one = QuadExt(1) if any(isinstance(x, QuadExt) for row in bilinear for x in row) else Fraction(1)
        self.one_scalar = scalar_one
        self.zero_scalar = scalar_one - scalar_one
        self.n = n
        self.bilinear = [[self._scal(bilinear[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise ValueError("bilinear form must be symmetric")
        self.dim = 1 << n
        self._mul_cache = {}

    def _scal(self, x):
        return self.one_scalar * x

    # -- element constructors --------------------------------------------
    def zero(self):
        return CliffordElem(self, {})

    def one(self):
        return CliffordElem(self, {0: self.one_scalar})

    def scalar(self, c):
        c = self._scal(c)
        return CliffordElem(self, {0: c} if c != 0 else {})

    def gen(self, i):
        """Generator e_i, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range")
        return CliffordElem(self, {1 << (i - 1): self.one_scalar})

    def monomial(self, indices, coeff=1):
        mask = 0
        for i in indices:
            if not 1 <= i <= self.n:
                raise IndexError(f"generator index {i} out of range")
            if mask >> (i - 1) & 1:
                raise ValueError("repeated index in monomial")
            mask |= 1 << (i - 1)
        c = self._scal(coeff)
        return CliffordElem(self, {mask: c} if c != 0 else {})

    def vector(self, coords):
        """Degree-1 element with the given coordinates in the lattice basis."""
        data = {}
        for i, c in enumerate(coords):
            c = self._scal(c)
            if c != 0:
                data[1 << i] = c
        return CliffordElem(self, data)

    def from_coordinates(self, coords):
        """Element from a dense length-2^n coefficient vector."""
        data = {}
        for mask, c in enumerate(coords):
            c = self._scal(c)
            if c != 0:
                data[mask] = c
        return CliffordElem(self, data)

    def basis_masks(self, parity=None):
        for mask in range(self.dim):
            if parity is None or bin(mask).count("1") % 2 == parity:
                yield mask

    # -- monomial multiplication ------------------------------------------
    def _mul_monomials(self, s_mask, t_mask):
        """Product e_S * e_T as {mask: coeff}, memoized."""
        key = (s_mask, t_mask)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        # fold the generators of T into S one at a time
        acc = {s_mask: self.one_scalar}
        t = t_mask
        while t:
            i_bit = t & (-t)
            t ^= i_bit
            i = i_bit.bit_length() - 1  # 0-based generator index
            nxt = {}
            for mask, coeff in acc.items():
                for m2, c2 in self._mul_mask_gen(mask, i).items():
                    prev = nxt.get(m2)
                    val = coeff * c2 if prev is None else prev + coeff * c2
                    if val != 0:
                        nxt[m2] = val
                    elif prev is not None:
                        del nxt[m2]
            acc = nxt
        self._mul_cache[key] = acc
        return acc

    def _mul_mask_gen(self, mask, i):
        """e_mask * e_i (i 0-based) as {mask: coeff}, via straightening."""
        i_bit = 1 << i
        above = mask >> (i + 1)
        if above == 0:
            # i is >= everything in mask: either append or contract the tail
            if mask & i_bit:
                # word ends ... e_i e_i -> b(i,i)
                out = {}
                c = self.bilinear[i][i]
                if c != 0:
                    out[mask ^ i_bit] = c
                return out
            return {mask | i_bit: self.one_scalar}
        # walk e_i leftward past the largest generator u in mask
        u = mask.bit_length() - 1
        u_bit = 1 << u
        rest = mask ^ u_bit
        out = {}
        # contraction term: 2 b(u, i) * e_rest
        two_b = self.bilinear[u][i] + self.bilinear[u][i]
        if two_b != 0:
            for m2, c2 in [(rest, two_b)]:
                out[m2] = out.get(m2, self.zero_scalar) + c2
        # swap term: - (e_rest e_i) e_u
        inner = self._mul_mask_gen(rest, i)
        for m2, c2 in inner.items():
            # m2's bits are all < u except possibly i (< u), so appending u is direct
            m3 = m2 | u_bit
            val = out.get(m3, self.zero_scalar) - c2
            if val != 0:
                out[m3] = val
            elif m3 in out:
                del out[m3]
        return {m: c for m, c in out.items() if c != 0}

    def __repr__(self):
        return f"CliffordAlg(n={self.n})"


class CliffordElem:
    """Sparse element: dict from subset bitmask to scalar coefficient."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = self.algebra.scalar(other)
        self._check(other)
        data = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = data.get(m, self.algebra.zero_scalar) + c
            if v != 0:
                data[m] = v
            elif m in data:
                del data[m]
        return CliffordElem(self.algebra, data)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElem(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            c = self.algebra._scal(other)
            if c == 0:
                return self.algebra.zero()
            return CliffordElem(self.algebra, {m: v * c for m, v in self.coeffs.items()})
        self._check(other)
        alg = self.algebra
        data = {}
        for ms, cs in self.coeffs.items():
            for mt, ct in other.coeffs.items():
                c = cs * ct
                for m, cm in alg._mul_monomials(ms, mt).items():
                    v = data.get(m, alg.zero_scalar) + c * cm
                    if v != 0:
                        data[m] = v
                    elif m in data:
                        del data[m]
        return CliffordElem(alg, data)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = self.algebra.scalar(other)
        if not isinstance(other, CliffordElem):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __bool__(self):
        return bool(self.coeffs)

    # -- structure ---------------------------------------------------------
    def parity(self):
        """0 for even, 1 for odd, None for mixed or zero."""
        seen = set(bin(m).count("1") % 2 for m in self.coeffs)
        if len(seen) == 1:
            return seen.pop()
        return None

    def is_even(self):
        return all(bin(m).count("1") % 2 == 0 for m in self.coeffs)

    def is_odd(self):
        return bool(self.coeffs) and all(bin(m).count("1") % 2 == 1 for m in self.coeffs)

    def grade_part(self, parity):
        data = {m: c for m, c in self.coeffs.items() if bin(m).count("1") % 2 == parity}
        return CliffordElem(self.algebra, data)

    def coefficient(self, mask):
        return self.coeffs.get(mask, self.algebra.zero_scalar)

    def scalar_part(self):
        return self.coefficient(0)

    def support_degree_at_most_one(self):
        return all(m == 0 or (m & (m - 1)) == 0 for m in self.coeffs)

    def to_coordinates(self):
        out = [self.algebra.zero_scalar] * self.algebra.dim
        for m, c in self.coeffs.items():
            out[m] = c
        return out

    def __repr__(self):
        return f"CliffordElem({render_element(self)})"

    def __str__(self):
        return render_element(self)


def canonical_automorphism(x: CliffordElem) -> CliffordElem:
    """Extend v -> -v: negate coefficients of odd-degree monomials."""
    data = {m: (-c if bin(m).count("1") % 2 else c) for m, c in x.coeffs.items()}
    return CliffordElem(x.algebra, data)


def transpose(x: CliffordElem) -> CliffordElem:
    """Anti-automorphism reversing monomial words, (xy)^t = y^t x^t."""
    alg = x.algebra
    out = alg.zero()
    for mask, c in x.coeffs.items():
        out = out + _transpose_monomial(alg, mask) * c
    return out


def _transpose_monomial(alg, mask):
    cache = getattr(alg, "_transpose_cache", None)
    if cache is None:
        cache = alg._transpose_cache = {}
    hit = cache.get(mask)
    if hit is not None:
        return hit
    # multiply generators in descending order
    out = alg.one()
    bits = []
    m = mask
    while m:
        b = m & (-m)
        bits.append(b.bit_length())
        m ^= b
    for i in reversed(bits):
        out = out * alg.gen(i)
    cache[mask] = out
    return out


def glue(A: CliffordAlg, B: CliffordAlg):
    """Clifford algebra of the orthogonal sum, with generator index maps.

    Returns (glued, map_a, map_b) where map_a/map_b send generator indices
    of A and B to generator indices of the sum.  The intrinsic Clifford
    product on the sum realizes the graded tensor product sign rule.
    """
    one = A.one_scalar
    n, m = A.n, B.n
    total = n + m
    zero = A.zero_scalar
    bil = [[zero] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            bil[i][j] = A.bilinear[i][j]
    for i in range(m):
        for j in range(m):
            bil[n + i][n + j] = one * B.bilinear[i][j]
    glued = CliffordAlg(bil, scalar_one=one)
    map_a = {i + 1: i + 1 for i in range(n)}
    map_b = {i + 1: n + i + 1 for i in range(m)}
    return glued, map_a, map_b


def embed(x: CliffordElem, target: CliffordAlg, index_map) -> CliffordElem:
    """Push an element through a generator index map (from glue)."""
    data = {}
    for mask, c in x.coeffs.items():
        new_mask = 0
        m = mask
        while m:
            b = m & (-m)
            i = b.bit_length()
            new_mask |= 1 << (index_map[i] - 1)
            m ^= b
        data[new_mask] = target._scal(c)
    return CliffordElem(target, data)


# ---------------------------------------------------------------------------
# text form: "4 * e{1,2} - 1 * e{}"
# ---------------------------------------------------------------------------

def render_element(x: CliffordElem) -> str:
    if not x.coeffs:
        return "0"
    parts = []
    for mask in sorted(x.coeffs, key=lambda m: (bin(m).count("1"), m)):
        c = x.coeffs[mask]
        idx = [str(i + 1) for i in range(x.algebra.n) if mask >> i & 1]
        parts.append(f"{c} * e{{{','.join(idx)}}}")
    return " + ".join(parts).replace("+ -", "- ")


def parse_element(alg: CliffordAlg, text: str) -> CliffordElem:
    """Parse the render_element grammar (scalar coefficients rational/quadext)."""
    from .scalars import parse_quadext
    out = alg.zero()
    for term in _split_terms(text):
        t = term.strip()
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        if "e{" in t:
            coef_txt, _, mask_txt = t.partition("e{")
            mask_txt = mask_txt.rstrip().rstrip("}")
            coef_txt = coef_txt.rstrip().rstrip("*").strip()
            coef = parse_quadext(coef_txt) if coef_txt else QuadExt(1)
            indices = [int(s) for s in mask_txt.split(",") if s.strip()] if mask_txt.strip() else []
            if isinstance(alg.one_scalar, Fraction):
                if coef.b != 0:
                    raise ValueError("sqrt2 coefficient in a rational algebra")
                coef = coef.a
            out = out + alg.monomial(indices, sign * coef)
        else:
            coef = parse_quadext(t)
            if isinstance(alg.one_scalar, Fraction):
                coef = coef.a
            out = out + alg.scalar(sign * coef)
    return out


def _split_terms(text):
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "/", "(", "+", "-")):
            terms.append(cur)
            cur = ch
            continue
        cur += ch
    if cur.strip():
        terms.append(cur)
    return terms
