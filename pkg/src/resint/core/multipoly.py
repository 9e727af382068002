"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` carries an ordered tuple of variable names and a map
from exponent tuples to nonzero rational coefficients.  Binary operations
align the operands' variable universes by name, so ``x + y`` works without
declaring a common ring up front.  Values are immutable.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .rational import content_of, norm, rational_str, to_rational


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


def _grlex_key(exps):
    return (sum(exps), exps)


def _merge_vars(a, b):
    if a == b:
        return a
    extra = tuple(v for v in b if v not in a)
    return a + extra


class MultiPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars=(), terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c == 0:
                    continue
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                clean[e] = norm(c) if type(c) is Fraction else c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c, vars=()):
        c = to_rational(c)
        vars = tuple(vars)
        if c == 0:
            return cls._raw(vars, {})
        return cls._raw(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name, vars=None):
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: 1})

    @classmethod
    def from_coeffs(cls, coeffs, var, vars=None):
        """Build sum(coeffs[i] * var**i); coefficients may be scalars or MultiPolys."""
        base = tuple(vars) if vars is not None else ()
        for c in coeffs:
            if isinstance(c, MultiPoly):
                base = _merge_vars(base, c.vars)
        if var not in base:
            base = base + (var,)
        k = base.index(var)
        terms = {}
        for i, c in enumerate(coeffs):
            if isinstance(c, MultiPoly):
                c = c.with_vars(base)
                for e, v in c.terms.items():
                    e2 = list(e)
                    e2[k] += i
                    terms[tuple(e2)] = v
            else:
                c = to_rational(c)
                if c != 0:
                    e = [0] * len(base)
                    e[k] = i
                    terms[tuple(e)] = c
        return cls._raw(base, terms)

    # variable universe -----------------------------------------------------
    def with_vars(self, vars):
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            try:
                idx.append(vars.index(v))
            except ValueError:
                idx.append(None)
        n = len(vars)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for j, k in enumerate(idx):
                if e[j]:
                    if k is None:
                        raise ValueError(f"variable {self.vars[j]!r} missing from {vars}")
                    new[k] = e[j]
            terms[tuple(new)] = c
        return MultiPoly._raw(vars, terms)

    def _align(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
            return self, other
        if self.vars == other.vars:
            return self, other
        vars = _merge_vars(self.vars, other.vars)
        return self.with_vars(vars), other.with_vars(vars)

    def free_vars(self):
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def drop_unused(self):
        return self.with_vars(self.free_vars())

    # predicates -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        for c in self.terms.values():
            return c
        return 0

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self.drop_unused(), other.drop_unused()
        if set(a.vars) != set(b.vars):
            return False
        return a.terms == b.with_vars(a.vars).terms

    def __hash__(self):
        if self._hash is None:
            a = self.drop_unused()
            order = sorted(range(len(a.vars)), key=lambda i: a.vars[i])
            names = tuple(a.vars[i] for i in order)
            items = frozenset((tuple(e[i] for i in order), c) for e, c in a.terms.items())
            self._hash = hash((names, items))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = norm(s)
            else:
                terms.pop(e, None)
        return MultiPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) - c
            if s:
                terms[e] = norm(s)
            else:
                terms.pop(e, None)
        return MultiPoly._raw(a.vars, terms)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = to_rational(c)
        if c == 0:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        bt = list(b.terms.items())
        if len(bt) == 1:
            (f, d), = bt
            return MultiPoly._raw(
                a.vars,
                {tuple(x + y for x, y in zip(e, f)): norm(c * d) for e, c in a.terms.items()},
            )
        terms = {}
        get = terms.get
        for e, c in a.terms.items():
            for f, d in bt:
                k = tuple(x + y for x, y in zip(e, f))
                terms[k] = get(k, 0) + c * d
        out = {}
        for k, v in terms.items():
            if v:
                out[k] = norm(v) if type(v) is Fraction else v
        return MultiPoly._raw(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_const() and not other.is_zero():
                return self.scale(Fraction(1) / Fraction(other.const_value()))
            return self.divexact(other)
        c = to_rational(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return self.scale(Fraction(1) / Fraction(c))

    # orderings ------------------------------------------------------------
    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def lc(self):
        return self.leading_term()[1]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var):
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        k = self.vars.index(var)
        return max(e[k] for e in self.terms)

    def min_degree(self, var):
        if not self.terms or var not in self.vars:
            return 0
        k = self.vars.index(var)
        return min(e[k] for e in self.terms)

    # exact division ---------------------------------------------------------
    def divmod_lt(self, other):
        """Multivariate division by a single divisor in graded-lex order."""
        a, b = self._align(other)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = b.leading_term()
        inv = Fraction(1) / Fraction(lt_c)
        rem = dict(a.terms)
        heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
        heapq.heapify(heap)
        quot = {}
        out_rem = {}
        bterms = [(e, c) for e, c in b.terms.items() if e != lt_e]
        while heap:
            _, neg = heapq.heappop(heap)
            e = tuple(-x for x in neg)
            c = rem.pop(e, None)
            if c is None or c == 0:
                continue
            if any(x < y for x, y in zip(e, lt_e)):
                out_rem[e] = c
                continue
            q_e = tuple(x - y for x, y in zip(e, lt_e))
            q_c = norm(c * inv)
            quot[q_e] = q_c
            for f, d in bterms:
                k = tuple(x + y for x, y in zip(q_e, f))
                old = rem.get(k)
                if old is None:
                    rem[k] = -q_c * d
                    heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
                else:
                    s = old - q_c * d
                    rem[k] = s
        out_rem = {e: norm(c) for e, c in out_rem.items() if c}
        return MultiPoly._raw(a.vars, {e: norm(c) for e, c in quot.items()}), MultiPoly._raw(a.vars, out_rem)

    def divexact(self, other):
        if not isinstance(other, MultiPoly):
            return self / other
        q, r = self.divmod_lt(other)
        if not r.is_zero():
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        """True iff self divides other."""
        _, r = other.divmod_lt(self) if isinstance(other, MultiPoly) else MultiPoly.const(other).divmod_lt(self)
        return r.is_zero()

    # calculus and substitution -------------------------------------------
    def diff(self, var):
        if var not in self.vars:
            return MultiPoly._raw(self.vars, {})
        k = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                terms[tuple(e2)] = norm(c * e[k])
        return MultiPoly._raw(self.vars, terms)

    def subs(self, mapping):
        """Substitute variables by scalars or MultiPolys; result keeps the merged universe."""
        mapping = {k: v for k, v in mapping.items() if k in self.vars}
        if not mapping:
            return self
        keep = tuple(v for v in self.vars if v not in mapping)
        vals = {}
        universe = keep
        for k, v in mapping.items():
            if isinstance(v, MultiPoly):
                universe = _merge_vars(universe, v.vars)
            else:
                v = to_rational(v)
            vals[k] = v
        for k, v in vals.items():
            vals[k] = v.with_vars(universe) if isinstance(v, MultiPoly) else MultiPoly.const(v, universe)
        keep_idx = [(self.vars.index(v), universe.index(v)) for v in keep]
        sub_idx = [(self.vars.index(k), vals[k]) for k in vals]
        power_cache = {}

        def power(i, p):
            key = (i, p)
            if key not in power_cache:
                power_cache[key] = sub_idx[i][1] ** p
            return power_cache[key]

        result = MultiPoly._raw(universe, {})
        acc = {}
        n = len(universe)
        for e, c in self.terms.items():
            mono = [0] * n
            for j, k in keep_idx:
                mono[k] = e[j]
            term = MultiPoly._raw(universe, {tuple(mono): c})
            for i, (j, _) in enumerate(sub_idx):
                if e[j]:
                    term = term * power(i, e[j])
            for f, d in term.terms.items():
                acc[f] = acc.get(f, 0) + d
        result = MultiPoly._raw(universe, {f: norm(d) for f, d in acc.items() if d})
        return result

    def evaluate(self, point):
        """Evaluate at a full assignment var -> value (values may be any ring elements)."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(self.vars, e):
                if k:
                    t = t * point[v] ** k
            total = total + t
        return total

    # univariate views ------------------------------------------------------
    def coeffs_in(self, var):
        """Dense coefficient list [c0, c1, ...] in ``var``; entries are MultiPolys."""
        if var not in self.vars:
            return [self] if self.terms else []
        k = self.vars.index(var)
        d = self.degree(var)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            p = e2[k]
            e2[k] = 0
            buckets[p][tuple(e2)] = c
        return [MultiPoly._raw(self.vars, b) for b in buckets]

    def lc_in(self, var):
        cs = self.coeffs_in(var)
        if not cs:
            raise ValueError("zero polynomial")
        return cs[-1]

    # normalization ----------------------------------------------------------
    def content(self):
        return content_of(self.terms.values())

    def primitive(self):
        """Integer primitive part with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        g = self.content()
        if self.lc() < 0:
            g = -g
        return self.scale(Fraction(1) / Fraction(g))

    def monic(self):
        return self.scale(Fraction(1) / Fraction(self.lc()))

    # rendering ----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                s = mono if a == 1 else f"{rational_str(a)}*{mono}"
            else:
                s = rational_str(a)
            parts.append(("-" if neg else "+", s))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_vars(*names):
    """Convenience: ``x, y = poly_vars("x", "y")``."""
    return tuple(MultiPoly.var(n, names) for n in names)
