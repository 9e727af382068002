"""Real-root isolation with Sturm sequences, and exact interval arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil

from .multipoly import MultiPoly
from .upoly import UniPoly, gcd_uni, squarefree_part


@dataclass(frozen=True)
class IntervalQ:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, c):
        c = Fraction(c)
        return cls(c, c)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, c):
        return self.lo <= c <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def sign(self):
        """+1 / -1 when certified, 0 when the interval straddles or touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def __add__(self, o):
        o = _iv(o)
        return IntervalQ(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return IntervalQ(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-_iv(o))

    def __rsub__(self, o):
        return _iv(o) - self

    def __mul__(self, o):
        o = _iv(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalQ(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k == 0:
            return IntervalQ.point(1)
        if k % 2 == 0 and self.lo < 0 < self.hi:
            return IntervalQ(Fraction(0), max(self.lo ** k, self.hi ** k))
        a, b = self.lo ** k, self.hi ** k
        return IntervalQ(min(a, b), max(a, b))

    def inverse(self):
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return IntervalQ(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o):
        return self * _iv(o).inverse()

    def round_out(self, bits):
        """Outward rounding of both endpoints to multiples of 2**-bits."""
        s = 1 << bits
        lo = Fraction(floor(self.lo * s), s)
        hi = Fraction(ceil(self.hi * s), s)
        return IntervalQ(lo, hi)

    def __float__(self):
        return float(self.mid)


def _iv(o):
    if isinstance(o, IntervalQ):
        return o
    return IntervalQ.point(o)


def sturm_sequence(p: UniPoly):
    seq = [p, p.diff()]
    while seq[-1].degree > 0:
        r = seq[-2].divmod(seq[-1])[1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _variations(seq, x):
    prev = 0
    count = 0
    for s in seq:
        v = s(x)
        if v == 0:
            continue
        sg = 1 if v > 0 else -1
        if prev and sg != prev:
            count += 1
        prev = sg
    return count


def _cauchy_bound(p: UniPoly):
    lc = abs(Fraction(p.lc()))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def count_roots(p: UniPoly, lo, hi, seq=None):
    """Distinct real roots of p in (lo, hi]."""
    p = squarefree_part(p) if seq is None else p
    seq = seq or sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


@dataclass(frozen=True)
class RealAlgebraic:
    """A real root of ``minpoly`` (squarefree, primitive), the only one in ``[lo, hi]``."""

    minpoly: UniPoly
    lo: Fraction
    hi: Fraction

    @property
    def interval(self):
        return IntervalQ(self.lo, self.hi)

    @property
    def is_rational(self):
        return self.lo == self.hi

    def rational_value(self):
        if self.lo != self.hi:
            raise ValueError("not known to be rational")
        return self.lo

    def refine(self, width) -> "RealAlgebraic":
        width = Fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        lo, hi = self.lo, self.hi
        p = self.minpoly
        if lo == hi:
            return self
        slo = _sgn(p(lo))
        while hi - lo >= width:
            mid = (lo + hi) / 2
            sm = _sgn(p(mid))
            if sm == 0:
                return RealAlgebraic(p, mid, mid)
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return RealAlgebraic(p, lo, hi)

    def bisect(self) -> "RealAlgebraic":
        """One bisection step (width at least halves)."""
        if self.lo == self.hi:
            return self
        p = self.minpoly
        mid = (self.lo + self.hi) / 2
        sm = _sgn(p(mid))
        if sm == 0:
            return RealAlgebraic(p, mid, mid)
        if sm == _sgn(p(self.lo)):
            return RealAlgebraic(p, mid, self.hi)
        return RealAlgebraic(p, self.lo, mid)

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def approx(self, digits=30):
        r = self.refine(Fraction(1, 10 ** digits))
        return (r.lo + r.hi) / 2

    def __str__(self):
        if self.lo == self.hi:
            return str(self.lo)
        return f"root of {self.minpoly} in [{self.lo}, {self.hi}] (~{float(self):.6g})"


def _sgn(v):
    return (v > 0) - (v < 0)


def sturm_isolate(p: UniPoly):
    """Isolating intervals for all real roots of p, sorted increasingly."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    b = _cauchy_bound(q)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(seq, lo) - _variations(seq, hi)
        if n == 0:
            continue
        if q(hi) == 0:
            out.append(RealAlgebraic(q, hi, hi))
            n -= 1
            if n == 0:
                continue
            # remaining roots lie strictly below hi
            hi2 = hi - (hi - lo) / 4
            while q(hi2) == 0 or count_roots(q, hi2, hi, seq) != 1:
                hi2 = (hi2 + hi) / 2
            stack.append((lo, hi2))
            continue
        if n == 1:
            if q(lo) == 0:
                lo2 = lo + (hi - lo) / 4
                while q(lo2) == 0 or count_roots(q, lo2, hi, seq) != 1:
                    lo2 = (lo + lo2) / 2
                lo = lo2
            out.append(RealAlgebraic(q, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out, key=lambda r: (r.lo, r.hi))


def refine(r: RealAlgebraic, width) -> RealAlgebraic:
    return r.refine(width)


def eval_interval(q: MultiPoly, point, width, max_steps=400) -> IntervalQ:
    """Enclosure of q at a point of RealAlgebraics / rationals, narrower than ``width``."""
    width = Fraction(width)
    pts = dict(point)
    for _ in range(max_steps):
        env = {}
        for v, val in pts.items():
            env[v] = val.interval if isinstance(val, RealAlgebraic) else IntervalQ.point(val)
        iv = _eval_poly_interval(q, env)
        if iv.width < width:
            return iv
        pts = {
            v: (val.bisect() if isinstance(val, RealAlgebraic) else val)
            for v, val in pts.items()
        }
    raise ArithmeticError("interval evaluation did not converge")


def _eval_poly_interval(q: MultiPoly, env):
    acc = IntervalQ.point(0)
    cache = {}
    for e, c in q.terms.items():
        t = IntervalQ.point(c)
        for v, k in zip(q.vars, e):
            if k:
                key = (v, k)
                if key not in cache:
                    cache[key] = env[v] ** k
                t = t * cache[key]
        acc = acc + t
    return acc


def sign_at(q: UniPoly, r: RealAlgebraic) -> int:
    """Exact sign of q at the real algebraic number r."""
    if r.is_rational:
        return _sgn(q(r.lo))
    g = gcd_uni(q, r.minpoly)
    if g.degree > 0 and count_roots(g, r.lo, r.hi) > 0:
        return 0
    cur = r
    while True:
        iv = _eval_poly_interval(q.to_multi(), {q.var: cur.interval})
        s = iv.sign()
        if s:
            return s
        cur = cur.bisect()
