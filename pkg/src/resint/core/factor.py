"""Factorization of univariate rational polynomials up to a degree budget.

Squarefree decomposition first, then linear factors from rational roots,
then factors of degree 2..budget found by recombining numerically computed
complex roots; every recombined candidate is confirmed by exact division,
so a reported factor is always a true divisor.  Pieces that were not split
completely carry ``irreducible=False``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, log10

import mpmath

from .upoly import UniPoly, rational_roots, squarefree_decomposition


@dataclass(frozen=True)
class Factor:
    poly: UniPoly
    multiplicity: int
    irreducible: bool


@dataclass(frozen=True)
class Factorization:
    scalar: Fraction
    factors: tuple

    def expand(self) -> UniPoly:
        var = self.factors[0].poly.var if self.factors else "x"
        out = UniPoly([self.scalar], var)
        for f in self.factors:
            out = out * f.poly ** f.multiplicity
        return out

    @property
    def complete(self):
        return all(f.irreducible for f in self.factors)

    def pairs(self):
        return [(f.poly, f.multiplicity) for f in self.factors]


def _mignotte_digits(p: UniPoly):
    norm2 = sum(Fraction(c) ** 2 for c in p.coeffs) ** 0.5
    return p.degree * log10(2) + log10(float(norm2) + 1)


def _numeric_roots(p: UniPoly, dps):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(int(c)) for c in reversed(p.int_coeffs())]
        return mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps)


def _split_by_roots(g: UniPoly, budget: int):
    """Split a squarefree primitive integer polynomial without rational roots."""
    n = g.degree
    if n <= 1:
        return [(g, True)]
    if n <= 3:
        return [(g, True)]
    dps = int(_mignotte_digits(g)) + 40
    try:
        roots = list(_numeric_roots(g, dps))
    except mpmath.libmp.NoConvergence:
        return [(g, False)]
    found = []
    rest = g
    remaining = roots
    lead = int(g.int_coeffs()[-1])
    d = 2
    while d <= min(budget, rest.degree // 2):
        hit = None
        if comb(len(remaining), d) > 200000:
            break
        with mpmath.workdps(dps):
            tol = mpmath.mpf(10) ** (-(dps // 3))
            for subset in combinations(range(len(remaining)), d):
                rs = [remaining[i] for i in subset]
                s = mpmath.fsum(rs)
                if abs(mpmath.im(s)) > tol * (1 + abs(s)):
                    continue
                coeffs = [mpmath.mpc(1)]
                for r in rs:
                    new = [mpmath.mpc(0)] * (len(coeffs) + 1)
                    for i, c in enumerate(coeffs):
                        new[i] += c
                        new[i + 1] -= c * r
                    coeffs = new
                ints = []
                ok = True
                for c in coeffs:
                    v = c * lead
                    if abs(mpmath.im(v)) > mpmath.mpf("0.25"):
                        ok = False
                        break
                    ints.append(int(mpmath.nint(mpmath.re(v))))
                if not ok:
                    continue
                cand = UniPoly(list(reversed(ints)), g.var).primitive()
                if cand.degree == d and cand.divides(rest):
                    hit = (cand, subset)
                    break
        if hit is None:
            d += 1
            continue
        cand, subset = hit
        found.append((cand, True))
        rest = rest.divexact(cand).primitive()
        remaining = [r for i, r in enumerate(remaining) if i not in subset]
    searched_all = d > rest.degree // 2
    if rest.degree > 0:
        found.append((rest, searched_all or rest.degree <= 3))
    return found


def factor_uni_bounded(p: UniPoly, degree_budget: int = 6) -> Factorization:
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    prim = p.primitive()
    scalar = Fraction(p.lc()) / Fraction(prim.lc())
    out = []
    for sqf, mult in squarefree_decomposition(prim):
        g = sqf
        for r, _ in sorted(rational_roots(g).items()):
            lin = UniPoly([-Fraction(r), 1], g.var).primitive()
            out.append(Factor(lin, mult, True))
            g = g.divexact(lin)
        g = g.primitive()
        if g.degree <= 0:
            continue
        for piece, irred in _split_by_roots(g, degree_budget):
            out.append(Factor(piece, mult, irred))
    # fix the scalar so that the product reproduces p exactly
    prod = UniPoly([1], p.var)
    for f in out:
        prod = prod * f.poly ** f.multiplicity
    scalar = Fraction(p.lc()) / Fraction(prod.lc())
    out.sort(key=lambda f: (f.poly.degree, [Fraction(c) for c in f.poly.coeffs], f.multiplicity))
    return Factorization(scalar, tuple(out))
