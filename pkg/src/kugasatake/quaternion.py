"""Quaternions over an exact scalar ring, the Hurwitz order, and chi.

``Quat`` works over Fraction or QuadExt coefficients (anything with exact
field arithmetic).  The Hurwitz order o = Z<h, i, j, k> with h = (1+i+j+k)/2
is handled in integer h-basis coordinates, with its norm Gram matrix M_o.
``chi`` is the regular representation H -> M_2(C) used to turn quaternion
matrices into complex ones.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussQuad, QuadExt


class Quat:
    """w + x*i + y*j + z*k with Hamilton relations i^2=j^2=k^2=-1, ij=k."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        object.__setattr__(self, "w", w if isinstance(w, (Fraction, QuadExt)) else Fraction(w))
        object.__setattr__(self, "x", x if isinstance(x, (Fraction, QuadExt)) else Fraction(x))
        object.__setattr__(self, "y", y if isinstance(y, (Fraction, QuadExt)) else Fraction(y))
        object.__setattr__(self, "z", z if isinstance(z, (Fraction, QuadExt)) else Fraction(z))

    def __setattr__(self, *_):
        raise AttributeError("Quat is immutable")

    @staticmethod
    def coerce(q) -> "Quat":
        if isinstance(q, Quat):
            return q
        return Quat(q)

    def coeffs(self):
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other):
        o = Quat.coerce(other)
        return Quat(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-Quat.coerce(other))

    def __rsub__(self, other):
        return Quat.coerce(other) + (-self)

    def __mul__(self, other):
        o = Quat.coerce(other)
        a, b, c, d = self.coeffs()
        e, f, g, h = o.coeffs()
        return Quat(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )

    def __rmul__(self, other):
        return Quat.coerce(other) * self

    def conjugate(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        """Nm(q) = q * conj(q), a scalar."""
        a, b, c, d = self.coeffs()
        return a * a + b * b + c * c + d * d

    def inverse(self) -> "Quat":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero quaternion")
        c = self.conjugate()
        return Quat(c.w / n, c.x / n, c.y / n, c.z / n)

    def __eq__(self, other):
        if not isinstance(other, (Quat, Fraction, int, QuadExt)):
            return NotImplemented
        o = Quat.coerce(other)
        return self.coeffs() == o.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __bool__(self):
        return any(bool(c) for c in self.coeffs())

    def is_scalar(self) -> bool:
        return not (bool(self.x) or bool(self.y) or bool(self.z))

    def __repr__(self):
        return f"Quat({self.w}, {self.x}, {self.y}, {self.z})"

    def __str__(self):
        return render_quat(self)


QUAT_ONE = Quat(1)
QUAT_I = Quat(0, 1)
QUAT_J = Quat(0, 0, 1)
QUAT_K = Quat(0, 0, 0, 1)
HURWITZ_H = Quat(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))

# h-basis of the Hurwitz order, in 1,i,j,k coordinates
HURWITZ_BASIS = (HURWITZ_H, QUAT_I, QUAT_J, QUAT_K)


def render_quat(q: Quat) -> str:
    parts = []
    for coef, label in zip(q.coeffs(), ("", "i", "j", "k")):
        if not coef:
            continue
        txt = str(coef)
        if label:
            txt = f"{txt}*{label}"
        if parts and not txt.startswith("-"):
            parts.append("+ " + txt)
        elif parts:
            parts.append("- " + txt.lstrip("-"))
        else:
            parts.append(txt)
    return " ".join(parts) if parts else "0"


def quat_mul(p, q) -> Quat:
    return Quat.coerce(p) * Quat.coerce(q)


def hurwitz_gram():
    """Gram matrix M_o of the norm form on the basis {h, i, j, k}."""
    half = Fraction(1, 2)
    rows = [[2, 1, 1, 1], [1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2]]
    return [[half * v for v in row] for row in rows]


class HurwitzElem:
    """Element of the Hurwitz order in integer coordinates over {h, i, j, k}."""

    __slots__ = ("coords",)

    def __init__(self, c1, c2=0, c3=0, c4=0):
        if isinstance(c1, (tuple, list)):
            c1, c2, c3, c4 = c1
        coords = (int(c1), int(c2), int(c3), int(c4))
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *_):
        raise AttributeError("HurwitzElem is immutable")

    def to_quat(self) -> Quat:
        q = Quat(0)
        for c, b in zip(self.coords, HURWITZ_BASIS):
            q = q + Quat(c) * b
        return q

    @staticmethod
    def from_quat(q: Quat) -> "HurwitzElem":
        """Re-express a quaternion in h-coordinates; must be integral."""
        # q = c1*h + c2*i + c3*j + c4*k  with  h = (1+i+j+k)/2
        c1 = 2 * q.w
        c2 = q.x - q.w
        c3 = q.y - q.w
        c4 = q.z - q.w
        coords = []
        for c in (c1, c2, c3, c4):
            f = Fraction(c)
            if f.denominator != 1:
                raise ValueError(f"{q} is not in the Hurwitz order")
            coords.append(f.numerator)
        return HurwitzElem(*coords)

    def __mul__(self, other):
        return HurwitzElem.from_quat(self.to_quat() * other.to_quat())

    def __add__(self, other):
        return HurwitzElem(*[a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return HurwitzElem(*[-a for a in self.coords])

    def norm(self):
        return self.to_quat().norm()

    def __eq__(self, other):
        return isinstance(other, HurwitzElem) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"HurwitzElem{self.coords}"

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"


def hurwitz_units():
    """The 24 norm-1 elements of the Hurwitz order."""
    units = []
    for signs in range(16):
        coords = [Fraction(1, 2) * (1 if signs >> p & 1 else -1) for p in range(4)]
        units.append(Quat(*coords))
    for p in range(4):
        for s in (1, -1):
            coords = [0, 0, 0, 0]
            coords[p] = s
            units.append(Quat(*coords))
    assert all(u.norm() == 1 for u in units) and len(units) == 24
    return units


def _to_gauss(scalar) -> GaussQuad:
    return GaussQuad.coerce(scalar if isinstance(scalar, QuadExt) else QuadExt.coerce(scalar))


def chi(q) -> list:
    """The regular representation H -> M_2(C).

    chi(w + x i + y j + z k) = [[w + x*I, y + z*I], [-y + z*I, w - x*I]];
    det(chi(q)) = Nm(q) and chi(conj(q)) is the conjugate transpose.
    """
    q = Quat.coerce(q)
    w, x, y, z = (_to_gauss(c) for c in q.coeffs())
    i = GaussQuad(0, 1)
    return [[w + x * i, y + z * i], [-y + z * i, w - x * i]]
