"""Rational functions num/den over Q."""

from __future__ import annotations

from fractions import Fraction

from ..core.mgcd import mgcd
from ..core.multipoly import MultiPoly
from ..core.rational import to_rational


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if den is None:
            den = MultiPoly.const(1, num.vars)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(den, num.vars)
        if den.is_zero():
            raise ZeroDivisionError("identically zero denominator")
        num, den = num._align(den)
        if reduce and not den.is_const():
            g = mgcd(num, den)
            if not g.is_const():
                num, den = num.divexact(g), den.divexact(g)
        # canonical scaling: denominator primitive with positive leading coefficient
        c = den.content()
        if den.lc() < 0:
            c = -c
        if c != 1:
            inv = Fraction(1) / Fraction(c)
            num, den = num.scale(inv), den.scale(inv)
        if num.is_zero():
            den = MultiPoly.const(1, num.vars)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c, vars=()):
        return cls(MultiPoly.const(c, vars))

    @classmethod
    def var(cls, name, vars=None):
        return cls(MultiPoly.var(name, vars))

    @property
    def vars(self):
        return self.num.vars

    def with_vars(self, vars):
        return RationalFunction(self.num.with_vars(vars), self.den.with_vars(vars), reduce=False)

    def free_vars(self):
        fv = set(self.num.free_vars()) | set(self.den.free_vars())
        return tuple(v for v in self.vars if v in fv)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_const()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return Fraction(self.num.const_value()) / Fraction(self.den.const_value())

    def reduced(self):
        return RationalFunction(self.num, self.den, reduce=True)

    def _coerce(self, o):
        if isinstance(o, RationalFunction):
            return o
        if isinstance(o, MultiPoly):
            return RationalFunction(o, reduce=False)
        return RationalFunction(MultiPoly.const(to_rational(o), self.vars), reduce=False)

    def __add__(self, o):
        o = self._coerce(o)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den, reduce=False)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return RationalFunction(self.num * o.num, self.den * o.den, reduce=False)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num, reduce=False)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, o):
        if not isinstance(o, (RationalFunction, MultiPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(o)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def diff(self, var):
        n, d = self.num, self.den
        if d.is_const():
            return RationalFunction(n.diff(var), d, reduce=False)
        return RationalFunction(n.diff(var) * d - n * d.diff(var), d * d, reduce=True)

    def subs(self, mapping, reduce=False):
        """Substitute variables by scalars, MultiPolys or RationalFunctions."""
        mapping = {k: v for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        if all(not isinstance(v, RationalFunction) or v.is_polynomial() for v in mapping.values()):
            simple = {k: (v.num.scale(Fraction(1) / Fraction(v.den.const_value())) if isinstance(v, RationalFunction) else v)
                      for k, v in mapping.items()}
            return RationalFunction(self.num.subs(simple), self.den.subs(simple), reduce=reduce)
        return RationalFunction(*_subs_rational(self, mapping), reduce=reduce)

    def evaluate(self, point):
        """Exact value at a full rational assignment; raises PoleError on a vanishing denominator."""
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at {point}")
        n = self.num.evaluate(point)
        return n / d if not isinstance(n, int) or not isinstance(d, int) else Fraction(n, d)

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        ns = str(self.num)
        ds = str(self.den)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if not _atomic(self.den):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _atomic(p: MultiPoly):
    if len(p.terms) != 1:
        return False
    (e, c), = p.terms.items()
    if not any(e):
        return True
    return c == 1 and sum(1 for k in e if k) == 1


def _subs_rational(rf: RationalFunction, mapping):
    """Homogenized substitution: numerator and denominator both multiplied by prod d_k^deg_k."""
    degs = {}
    for k in mapping:
        degs[k] = max(rf.num.degree(k), rf.den.degree(k), 0)
    num = _subs_poly(rf.num, mapping, degs)
    den = _subs_poly(rf.den, mapping, degs)
    # both carry the factor prod d_k^(deg_k); it cancels
    return num, den


def _subs_poly(p: MultiPoly, mapping, degs):
    """p with each mapped variable k replaced by n_k/d_k, multiplied through by d_k^degs[k]."""
    vals = {}
    for k, v in mapping.items():
        if isinstance(v, RationalFunction):
            vals[k] = (v.num, v.den)
        elif isinstance(v, MultiPoly):
            vals[k] = (v, MultiPoly.const(1, v.vars))
        else:
            vals[k] = (MultiPoly.const(to_rational(v)), MultiPoly.const(1))
    keep = tuple(v for v in p.vars if v not in mapping)
    total = MultiPoly.const(0, keep)
    num_pow, den_pow = {}, {}

    def npow(k, e):
        if (k, e) not in num_pow:
            num_pow[(k, e)] = vals[k][0] ** e
        return num_pow[(k, e)]

    def dpow(k, e):
        if (k, e) not in den_pow:
            den_pow[(k, e)] = vals[k][1] ** e
        return den_pow[(k, e)]

    for e, c in p.terms.items():
        mono = {}
        for v, k in zip(p.vars, e):
            if v not in mapping and k:
                mono[v] = k
        term = MultiPoly._raw(keep, {tuple(mono.get(v, 0) for v in keep): c})
        for k in mapping:
            i = p.vars.index(k)
            ek = e[i]
            term = term * npow(k, ek) * dpow(k, degs[k] - ek)
        total = total + term
    return total
