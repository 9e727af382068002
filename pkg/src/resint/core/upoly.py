"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .multipoly import MultiPoly, NotDivisible
from .rational import content_of, norm, rational_str, to_rational


def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class UniPoly:
    """``coeffs[i]`` is the coefficient of ``var**i``; no trailing zeros."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        self.coeffs = _trim([to_rational(c) for c in coeffs])
        self.var = var

    @classmethod
    def _raw(cls, coeffs, var):
        obj = cls.__new__(cls)
        obj.coeffs = _trim(coeffs)
        obj.var = var
        return obj

    @classmethod
    def from_roots(cls, roots, var="x", lc=1):
        p = cls([lc], var)
        for r in roots:
            p = p * cls([-to_rational(r), 1], var)
        return p

    @classmethod
    def monomial(cls, k, c=1, var="x"):
        return cls._raw([0] * k + [to_rational(c)], var)

    @classmethod
    def from_multi(cls, p: MultiPoly, var=None):
        free = p.free_vars()
        if var is None:
            if len(free) > 1:
                raise ValueError(f"{p} is not univariate")
            var = free[0] if free else "x"
        elif any(v != var for v in free):
            raise ValueError(f"{p} has variables other than {var}")
        if p.is_zero():
            return cls._raw([], var)
        if var not in p.vars:
            return cls._raw([p.const_value()], var)
        k = p.vars.index(var)
        cs = [0] * (p.degree(var) + 1)
        for e, c in p.terms.items():
            cs[e[k]] = c
        return cls._raw(cs, var)

    def to_multi(self, vars=None):
        return MultiPoly.from_coeffs(self.coeffs, self.var, vars)

    def rename(self, var):
        return UniPoly._raw(list(self.coeffs), var)

    # basic -----------------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ([other] if other else [])
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs], self.var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly._raw([to_rational(other)], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = norm(out[i] + c)
        return UniPoly._raw(out, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = to_rational(other)
            return UniPoly._raw([norm(x * c) for x in self.coeffs] if c else [], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly._raw([norm(c) for c in out], self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UniPoly._raw([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        if len(rem) - 1 < d:
            return UniPoly._raw([], self.var), self
        inv = Fraction(1) / Fraction(other.lc())
        q = [0] * (len(rem) - d)
        bc = other.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = c * inv
            q[i - d] = t
            for j in range(d + 1):
                rem[i - d + j] -= t * bc[j]
        return UniPoly._raw([norm(c) for c in q], self.var), UniPoly._raw([norm(c) for c in rem[:d]], self.var)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def divexact(self, other):
        q, r = self.divmod(self._coerce(other))
        if r:
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        return not other.divmod(self)[1]

    def diff(self):
        return UniPoly._raw([norm(c * i) for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: "UniPoly"):
        acc = UniPoly._raw([], q.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def reverse(self):
        return UniPoly._raw(list(reversed(self.coeffs)), self.var)

    # normalization ---------------------------------------------------------------
    def monic(self):
        if not self.coeffs:
            return self
        return self * (Fraction(1) / Fraction(self.lc()))

    def content(self):
        return content_of(self.coeffs)

    def primitive(self):
        """Integer coefficients, gcd 1, positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc() < 0:
            g = -g
        return self * (Fraction(1) / Fraction(g))

    def int_coeffs(self):
        p = self.primitive()
        return [int(c) for c in p.coeffs]

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def __str__(self):
        return str(self.to_multi()) if self.coeffs else "0"

    def __repr__(self):
        return f"UniPoly({self})"

    def coeff_str(self):
        return "[" + ", ".join(rational_str(c) for c in self.coeffs) + "]"


def gcd_uni(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q (gcd(0, q) = monic q)."""
    a, b = p, q
    if b.is_zero():
        return a.monic()
    while b:
        a, b = b, a.divmod(b)[1]
        if b:
            b = b.primitive()
    return a.monic()


def xgcd_uni(p: UniPoly, q: UniPoly):
    """Monic g with s*p + t*q = g."""
    r0, r1 = p, q
    s0, s1 = UniPoly([1], p.var), UniPoly([], p.var)
    t0, t1 = UniPoly([], p.var), UniPoly([1], p.var)
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = Fraction(1) / Fraction(r0.lc())
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), primitive."""
    if p.degree <= 0:
        return p.primitive()
    g = gcd_uni(p, p.diff())
    return p.divexact(g).primitive()


def squarefree_decomposition(p: UniPoly):
    """Yun's algorithm: list of (factor, multiplicity) with primitive squarefree coprime factors."""
    if p.degree <= 0:
        return []
    out = []
    a = p.primitive()
    b = a.diff()
    c = gcd_uni(a, b)
    w = a.divexact(c)
    y = b.divexact(c)
    i = 1
    z = y - w.diff()
    while w.degree > 0:
        g = gcd_uni(w, z)
        if g.degree > 0:
            out.append((g.primitive(), i))
        w = w.divexact(g)
        y = z.divexact(g)
        z = y - w.diff()
        i += 1
    return out


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [0]
    from sympy import divisors

    return divisors(n)


def rational_roots(p: UniPoly):
    """All rational roots with multiplicity, as a dict root -> multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    out = {}
    q = p.primitive()
    # strip x^k
    k = 0
    while q.coeffs and q.coeffs[0] == 0:
        q = UniPoly._raw(q.coeffs[1:], q.var)
        k += 1
    if k:
        out[0] = k
    if q.degree <= 0:
        return out
    cs = q.int_coeffs()
    lead, const = cs[-1], cs[0]
    cands = set()
    for a in _divisors(const):
        for b in _divisors(lead):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        if q.degree <= 0:
            break
        m = 0
        lin = UniPoly([-r, 1], q.var)
        while q.degree > 0 and q(r) == 0:
            q = q.divexact(lin)
            m += 1
        if m:
            out[norm(r)] = m
    return out


class NotASquare(Exception):
    pass


def poly_sqrt(p: UniPoly):
    """q with q*q == p and positive leading coefficient, or None when p is not a square."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    d = p.degree
    if d % 2:
        return None
    lc = Fraction(p.lc())
    if lc < 0:
        return None
    num, den = lc.numerator, lc.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    m = d // 2
    # coefficients from the top down: p = q^2, q monic-scaled by sqrt(lc)
    q = [Fraction(0)] * (m + 1)
    q[m] = Fraction(rn, rd)
    pc = [Fraction(c) for c in p.coeffs]
    for k in range(1, m + 1):
        # coefficient of x^(2m-k) in q^2
        s = sum(q[m - i] * q[m - k + i] for i in range(1, k))
        q[m - k] = (pc[2 * m - k] - s) / (2 * q[m])
    cand = UniPoly([norm(c) for c in q], p.var)
    if cand * cand != p:
        return None
    return cand


def integer_gcd_list(xs):
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g
