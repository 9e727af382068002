"""Exact arithmetic in Q(alpha) for a real algebraic alpha, and in Q[t]/(m).

The defining polynomial of alpha only has to be squarefree.  Whenever a
computation meets a nontrivial factor of it (a zero divisor), the factor
that actually vanishes at alpha is selected with a Sturm count and the
field shrinks to it.  Zero tests are therefore exact without needing an
irreducibility proof.
"""

from __future__ import annotations

from fractions import Fraction
from threading import Lock

from .multipoly import MultiPoly
from .realroots import IntervalQ, RealAlgebraic, count_roots, _eval_poly_interval
from .resultant import resultant
from .upoly import UniPoly, gcd_uni, squarefree_part, xgcd_uni


class RealNumberField:
    def __init__(self, alpha: RealAlgebraic, name="t"):
        p = squarefree_part(alpha.minpoly).rename(name)
        self._alpha = RealAlgebraic(p, alpha.lo, alpha.hi)
        self.name = name
        self._lock = Lock()

    @classmethod
    def rational(cls, c, name="t"):
        c = Fraction(c)
        return cls(RealAlgebraic(UniPoly([-c, 1], name), c, c), name)

    @property
    def alpha(self):
        return self._alpha

    @property
    def modulus(self) -> UniPoly:
        return self._alpha.minpoly

    @property
    def degree(self):
        return self.modulus.degree

    def _shrink(self, g: UniPoly):
        """g divides the modulus nontrivially: keep the factor that vanishes at alpha."""
        with self._lock:
            m = self.modulus
            if g.degree <= 0 or g.degree >= m.degree:
                return
            a = self._alpha
            if a.lo == a.hi:
                inside = g(a.lo) == 0
            else:
                inside = count_roots(g, a.lo, a.hi) > 0
            keep = g if inside else m.divexact(g)
            self._alpha = RealAlgebraic(keep.primitive(), a.lo, a.hi)

    # elements -------------------------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, NFElement):
            return value
        if isinstance(value, UniPoly):
            return NFElement(self, value.rename(self.name))
        return NFElement(self, UniPoly([value], self.name))

    def gen(self):
        return NFElement(self, UniPoly([0, 1], self.name))

    def from_multi(self, p: MultiPoly, var):
        return NFElement(self, UniPoly.from_multi(p, var).rename(self.name))

    def is_zero(self, poly: UniPoly) -> bool:
        r = poly % self.modulus
        if r.is_zero():
            return True
        g = gcd_uni(r, self.modulus)
        if g.degree == 0:
            return False
        self._shrink(g)
        return (poly % self.modulus).is_zero()

    def inverse(self, poly: UniPoly) -> UniPoly:
        while True:
            m = self.modulus
            g, s, _ = xgcd_uni(poly % m, m)
            if g.degree == 0:
                return s % m
            self._shrink(g)
            if (poly % self.modulus).is_zero():
                raise ZeroDivisionError("element is zero in the number field")


class NFElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: RealNumberField, poly: UniPoly):
        self.field = field
        self.poly = poly % field.modulus if poly.degree >= field.degree else poly

    def _lift(self, o):
        if isinstance(o, NFElement):
            return o.poly
        if isinstance(o, UniPoly):
            return o
        return UniPoly([o], self.field.name)

    def __add__(self, o):
        return NFElement(self.field, self.poly + self._lift(o))

    __radd__ = __add__

    def __sub__(self, o):
        return NFElement(self.field, self.poly - self._lift(o))

    def __rsub__(self, o):
        return NFElement(self.field, self._lift(o) - self.poly)

    def __neg__(self):
        return NFElement(self.field, -self.poly)

    def __mul__(self, o):
        return NFElement(self.field, (self.poly * self._lift(o)) % self.field.modulus)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = NFElement(self.field, UniPoly([1], self.field.name))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self):
        return NFElement(self.field, self.field.inverse(self.poly))

    def __truediv__(self, o):
        if not isinstance(o, NFElement):
            o = self.field(o)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.field(o) * self.inverse()

    def is_zero(self):
        return self.field.is_zero(self.poly)

    def __eq__(self, o):
        if isinstance(o, (NFElement, int, Fraction, UniPoly)):
            return (self - o).is_zero()
        return NotImplemented

    def __hash__(self):
        raise TypeError("number field elements are unhashable")

    def reduced(self):
        return self.poly % self.field.modulus

    def rational_value(self):
        r = self.reduced()
        if r.degree > 0:
            raise ValueError("element is not known to be rational")
        return r.coeffs[0] if r.coeffs else 0

    def is_rational(self):
        return self.reduced().degree <= 0

    def interval(self, width=Fraction(1, 10 ** 12)) -> IntervalQ:
        width = Fraction(width)
        a = self.field.alpha
        p = self.reduced().to_multi()
        while True:
            iv = _eval_poly_interval(p, {self.field.name: a.interval})
            if iv.width < width or a.lo == a.hi:
                return iv
            a = a.bisect()

    def sign(self):
        if self.is_zero():
            return 0
        a = self.field.alpha
        p = self.reduced().to_multi()
        while True:
            s = _eval_poly_interval(p, {self.field.name: a.interval}).sign()
            if s:
                return s
            a = a.bisect()

    def __float__(self):
        return float(self.interval(Fraction(1, 10 ** 20)).mid)

    def charpoly(self, var="v") -> UniPoly:
        """prod over conjugates of (var - sigma(self)), of degree [field : Q]."""
        m = self.field.modulus
        t = self.field.name
        expr = MultiPoly.var(var, (t, var)) - self.reduced().to_multi((t, var))
        r = resultant(m.to_multi((t, var)), expr, t)
        return UniPoly.from_multi(r, var).monic()

    def minpoly_candidate(self, var="v") -> UniPoly:
        """Squarefree part of the characteristic polynomial (the minimal polynomial when the field is)."""
        return squarefree_part(self.charpoly(var))

    def __str__(self):
        return f"{self.reduced()} mod {self.field.modulus}"

    def __repr__(self):
        return f"NFElement({self})"


class QuotientRing:
    """Q[t]/(m) for an arbitrary nonconstant m; identities here hold at every root of m."""

    def __init__(self, modulus: UniPoly):
        if modulus.degree < 1:
            raise ValueError("modulus must be nonconstant")
        self.modulus = modulus
        self.name = modulus.var

    def reduce(self, p: UniPoly) -> UniPoly:
        return p.rename(self.name) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inverse(self, a: UniPoly) -> UniPoly:
        g, s, _ = xgcd_uni(a % self.modulus, self.modulus)
        if g.degree != 0:
            raise ZeroDivisionError(f"{a} is a zero divisor modulo {self.modulus}")
        return s % self.modulus

    def power(self, a: UniPoly, k: int) -> UniPoly:
        if k < 0:
            a = self.inverse(a)
            k = -k
        result = UniPoly([1], self.name)
        base = a % self.modulus
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result


def _trim_nf(cs):
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def nf_poly_gcd(a, b):
    """Monic gcd of two polynomials with NFElement coefficients (lists, low degree first)."""
    a, b = _trim_nf(a), _trim_nf(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        inv = b[-1].inverse()
        while len(a) >= len(b):
            q = a[-1] * inv
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = a[shift + i] - q * c
            a.pop()
            a = _trim_nf(a)
        a, b = b, a
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]
