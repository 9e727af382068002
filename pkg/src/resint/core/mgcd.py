"""Multivariate gcd over Q by recursive primitive pseudo-remainder sequences."""

from __future__ import annotations

from .multipoly import MultiPoly


def _monomial_gcd(m: MultiPoly, p: MultiPoly) -> MultiPoly:
    (e, _), = m.terms.items()
    low = list(e)
    for f in p.terms:
        low = [min(a, b) for a, b in zip(low, f)]
    return MultiPoly._raw(m.vars, {tuple(low): 1})


def prem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Pseudo-remainder of a by b in ``var``."""
    da, db = a.degree(var), b.degree(var)
    if da < db:
        return a
    bc = b.coeffs_in(var)
    lcb = bc[-1]
    ac = list(a.coeffs_in(var))
    for i in range(da, db - 1, -1):
        t = ac[i]
        ac = [c * lcb for c in ac]
        if not t.is_zero():
            for j in range(db + 1):
                if not bc[j].is_zero():
                    ac[i - db + j] = ac[i - db + j] - t * bc[j]
        ac[i] = MultiPoly.const(0, a.vars)
    return MultiPoly.from_coeffs(ac[:db], var, a.vars)


def content_in(p: MultiPoly, var: str) -> MultiPoly:
    g = MultiPoly.const(0, p.vars)
    for c in p.coeffs_in(var):
        if not c.is_zero():
            g = mgcd(g, c)
            if g.is_const():
                return MultiPoly.const(1, p.vars)
    return g


def mgcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, primitive with positive graded-lex leading coefficient."""
    a, b = a._align(b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_const() or b.is_const():
        return MultiPoly.const(1, a.vars)
    if len(a.terms) == 1:
        return _monomial_gcd(a, b)
    if len(b.terms) == 1:
        return _monomial_gcd(b, a)
    fa, fb = set(a.free_vars()), set(b.free_vars())
    common = [v for v in a.vars if v in fa and v in fb]
    if not common:
        # any common factor would have to be free of every variable
        return MultiPoly.const(1, a.vars)
    only_a = [v for v in a.vars if v in fa and v not in fb]
    if only_a:
        return mgcd(content_in(a, only_a[0]), b)
    only_b = [v for v in b.vars if v in fb and v not in fa]
    if only_b:
        return mgcd(a, content_in(b, only_b[0]))
    var = min(common, key=lambda v: (max(a.degree(v), b.degree(v)), a.vars.index(v)))
    ca, cb = content_in(a, var), content_in(b, var)
    pa, pb = a.divexact(ca), b.divexact(cb)
    g_cont = mgcd(ca, cb)
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while True:
        r = prem(pa, pb, var)
        if r.is_zero():
            break
        if r.degree(var) == 0:
            pb = MultiPoly.const(1, a.vars)
            break
        pa, pb = pb, r.divexact(content_in(r, var))
    if pb.degree(var) <= 0:
        return g_cont.primitive()
    pb = pb.divexact(content_in(pb, var))
    return (g_cont * pb).primitive()
