"""Exact scalar tower: Q, the real quadratic field Q(sqrt2), and Q(sqrt2, i).

Rationals are plain ``fractions.Fraction``.  ``QuadExt`` elements are
``a + b*sqrt2`` with decidable sign and exact square roots where they exist;
``GaussQuad`` elements are ``re + im*I`` over ``QuadExt``.  Everything is
immutable and hashable, so values can be shared freely between threads.
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction


class NotASquare(ArithmeticError):
    """Raised when an exact square root does not exist in the field."""


class DivisionByZero(ZeroDivisionError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def rational_sqrt(x: Fraction):
    """Exact square root of a rational, or None if irrational/negative."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """An element a + b*sqrt2 of Q(sqrt2), with sqrt2 the positive root."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, *_):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(_frac(x))

    # -- ring structure -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussQuad):
            return NotImplemented
        o = QuadExt.coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadExt.coerce(other)) if not isinstance(other, GaussQuad) else NotImplemented

    def __rsub__(self, other):
        return QuadExt.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, GaussQuad):
            return NotImplemented
        o = QuadExt.coerce(other)
        return QuadExt(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        # (a + b sqrt2)(a - b sqrt2) = a^2 - 2 b^2, nonzero for nonzero elements
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise DivisionByZero("inverse of 0 in Q(sqrt2)")
        return QuadExt(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, GaussQuad):
            return NotImplemented
        return self * QuadExt.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadExt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order structure ------------------------------------------------
    def sign(self) -> int:
        """Exact sign under the embedding sqrt2 > 0.

        Case analysis on the signs of a, b; in the mixed cases compare
        a^2 with 2 b^2.
        """
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # a and b have opposite signs: |a| vs |b|*sqrt2
        cmp = self.a * self.a - 2 * self.b * self.b
        if cmp == 0:
            return 0
        return sa if cmp > 0 else sb

    def __eq__(self, other):
        if isinstance(other, GaussQuad):
            return other == self
        if not isinstance(other, (QuadExt, Fraction, int)):
            return NotImplemented
        o = QuadExt.coerce(other)
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        return (self - QuadExt.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - QuadExt.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QuadExt.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - QuadExt.coerce(other)).sign() >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self) -> "QuadExt":
        """y >= 0 with y*y == self, if one exists in Q(sqrt2).

        Solving (x + y sqrt2)^2 = a + b sqrt2 means x^2 + 2 y^2 = a and
        2 x y = b; for b = 0 the root is rational or a rational multiple of
        sqrt2, otherwise x^2 is a root of t^2 - a t + b^2/2.

        Raises NotASquare when no root exists.
        """
        if self.sign() < 0:
            raise NotASquare(f"{self} is negative")
        a, b = self.a, self.b
        if b == 0:
            r = rational_sqrt(a)
            if r is not None:
                return QuadExt(r)
            r = rational_sqrt(a / 2)
            if r is not None:
                return QuadExt(0, r)
            raise NotASquare(f"{self} is not a square in Q(sqrt2)")
        disc = a * a - 2 * b * b
        rd = rational_sqrt(disc) if disc >= 0 else None
        if rd is not None:
            for t in ((a + rd) / 2, (a - rd) / 2):
                x = rational_sqrt(t)
                if x is not None and x != 0:
                    cand = QuadExt(x, b / (2 * x))
                    if cand.sign() < 0:
                        cand = -cand
                    if cand * cand == self:
                        return cand
        raise NotASquare(f"{self} is not a square in Q(sqrt2)")

    # -- rendering ------------------------------------------------------
    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r})"

    def __str__(self):
        return render_quadext(self)


class GaussQuad:
    """An element re + im*I of Q(sqrt2, i), with I^2 = -1."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", QuadExt.coerce(re))
        object.__setattr__(self, "im", QuadExt.coerce(im))

    def __setattr__(self, *_):
        raise AttributeError("GaussQuad is immutable")

    @staticmethod
    def coerce(x) -> "GaussQuad":
        if isinstance(x, GaussQuad):
            return x
        return GaussQuad(QuadExt.coerce(x))

    def __add__(self, other):
        o = GaussQuad.coerce(other)
        return GaussQuad(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQuad(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQuad.coerce(other))

    def __rsub__(self, other):
        return GaussQuad.coerce(other) + (-self)

    def __mul__(self, other):
        o = GaussQuad.coerce(other)
        return GaussQuad(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussQuad":
        return GaussQuad(self.re, -self.im)

    def norm(self) -> QuadExt:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussQuad":
        n = self.norm()
        if not n:
            raise DivisionByZero("inverse of 0 in Q(sqrt2, i)")
        ninv = n.inverse()
        return GaussQuad(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        return self * GaussQuad.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussQuad.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = GaussQuad(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, (GaussQuad, QuadExt, Fraction, int)):
            return NotImplemented
        o = GaussQuad.coerce(other)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussQuad({self.re!r}, {self.im!r})"

    def __str__(self):
        return render_gaussquad(self)


I_UNIT = GaussQuad(0, 1)
SQRT2 = QuadExt(0, 1)


def qe_sign(x) -> int:
    return QuadExt.coerce(x).sign()


def qe_sqrt(x) -> QuadExt:
    return QuadExt.coerce(x).sqrt()


def gq_conj(x) -> GaussQuad:
    return GaussQuad.coerce(x).conjugate()


def gq_inv(x) -> GaussQuad:
    return GaussQuad.coerce(x).inverse()


# ---------------------------------------------------------------------------
# canonical text forms: "p/q + (r/s)*sqrt2" and "x + y*I"
# ---------------------------------------------------------------------------

def render_rational(x: Fraction) -> str:
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_quadext(x: QuadExt) -> str:
    x = QuadExt.coerce(x)
    if x.b == 0:
        return render_rational(x.a)
    s = "" if x.a == 0 else render_rational(x.a) + (" - " if x.b < 0 else " + ")
    babs = abs(x.b)
    if s == "" and x.b < 0:
        s = "-"
    coef = "" if babs == 1 else f"({render_rational(babs)})*"
    return s + coef + "sqrt2"


def render_gaussquad(x: GaussQuad) -> str:
    x = GaussQuad.coerce(x)
    if not x.im:
        return render_quadext(x.re)
    s = "" if not x.re else f"({render_quadext(x.re)}) + "
    return s + f"({render_quadext(x.im)})*I"


_RAT = _re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RAT.match(text):
        raise ValueError(f"bad rational literal: {text!r}")
    return Fraction(text)


def _split_outside_parens(text: str):
    """Split on top-level + and binary -, keeping signs with the terms."""
    terms, depth, cur = [], 0, ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "/", "+", "-", "(")):
            terms.append(cur)
            cur = "+" if ch == "+" else "-"
            continue
        cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def parse_quadext(text: str) -> QuadExt:
    """Parse 'p/q + (r/s)*sqrt2' (sqrt2 coefficient optional / bare)."""
    out = QuadExt(0)
    for term in _split_outside_parens(text.strip()):
        t = term.strip()
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        if "sqrt2" in t:
            coef = t.replace("sqrt2", "").replace("*", "").strip()
            if coef.startswith("(") and coef.endswith(")"):
                coef = coef[1:-1].strip()
            c = parse_rational(coef) if coef else Fraction(1)
            out = out + QuadExt(0, sign * c)
        else:
            if t.startswith("(") and t.endswith(")"):
                t = t[1:-1].strip()
            out = out + QuadExt(sign * parse_rational(t))
    return out


def parse_gaussquad(text: str) -> GaussQuad:
    """Parse 'x + y*I' where x, y follow the Q(sqrt2) grammar."""
    out = GaussQuad(0)
    for term in _split_outside_parens(text.strip()):
        t = term.strip()
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        if t.endswith("I") and not t.endswith("sqrt2"):
            body = t[:-1].rstrip().rstrip("*").strip()
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1].strip()
            c = parse_quadext(body) if body else QuadExt(1)
            out = out + GaussQuad(0, sign * c)
        else:
            if t.startswith("(") and t.endswith(")"):
                t = t[1:-1].strip()
            out = out + GaussQuad(sign * parse_quadext(t))
    return out
