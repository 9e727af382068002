"""Cyclotomic polynomials, totients and minimal polynomials of cos(2*pi*n/p)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from sympy import totient as _sympy_totient

from .core.multipoly import MultiPoly
from .core.resultant import resultant
from .core.upoly import UniPoly, poly_sqrt, squarefree_part


def totient(p: int) -> int:
    if p < 1:
        raise ValueError("totient needs p >= 1")
    return int(_sympy_totient(p))


def _divisors(n):
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(p: int):
    num = UniPoly([-1] + [0] * (p - 1) + [1])
    for d in _divisors(p):
        if d < p:
            num = num.divexact(UniPoly(_cyclotomic_coeffs(d)))
    return tuple(num.coeffs)


def cyclotomic_poly(p: int, var: str = "x") -> UniPoly:
    """Phi_p, by exact division of x^p - 1 by Phi_d for the proper divisors d of p."""
    if p < 1:
        raise ValueError("cyclotomic index must be >= 1")
    return UniPoly(_cyclotomic_coeffs(p), var)


def indices_with_totient_at_most(k: int):
    """All p with phi(p) <= k.  phi(p) >= sqrt(p/2) bounds the search by p <= 2k^2."""
    if k < 1:
        return []
    return [p for p in range(1, 2 * k * k + 7) if totient(p) <= k]


@dataclass(frozen=True)
class CyclotomicIndexSet:
    bound: int
    threshold: int
    indices: tuple


def indices_with_cos_degree_at_most(k: int) -> CyclotomicIndexSet:
    """Indices p whose cos-minimal polynomial has degree <= k (degree 1 for p = 1, 2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    idx = tuple(p for p in indices_with_totient_at_most(2 * k) if cos_degree(p) <= k)
    return CyclotomicIndexSet(k, 2 * k, idx)


def indices_with_cyclotomic_degree_at_most(k: int) -> CyclotomicIndexSet:
    return CyclotomicIndexSet(k, k, tuple(indices_with_totient_at_most(k)))


def cos_degree(p: int) -> int:
    return 1 if p <= 2 else totient(p) // 2


@dataclass(frozen=True)
class MinPolyCos:
    p: int
    poly: UniPoly

    @property
    def degree(self):
        return self.poly.degree


class InvariantViolation(AssertionError):
    pass


@lru_cache(maxsize=None)
def _min_poly_cos_coeffs(p: int):
    if p == 1:
        return (-1, 1)
    if p == 2:
        return (1, 1)
    x = MultiPoly.var("x", ("x", "v"))
    v = MultiPoly.var("v", ("x", "v"))
    r = resultant(cyclotomic_poly(p).to_multi(("x", "v")), x * x - 2 * x * v + 1, "x")
    r = UniPoly.from_multi(r, "v")
    root = poly_sqrt(r)
    if root is None:
        raise InvariantViolation(f"Res_x(Phi_{p}, x^2-2xv+1) is not a perfect square")
    return tuple(root.primitive().coeffs)


def min_poly_cos(p: int, var: str = "x") -> MinPolyCos:
    """Minimal polynomial of cos(2*pi*n/p), gcd(n, p) = 1, as a primitive integer polynomial."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return MinPolyCos(p, UniPoly(_min_poly_cos_coeffs(p), var))


def cos_battery(k: int, var: str = "x"):
    """The minimal polynomials of all cos(2*pi*n/p) of degree <= k, keyed by p."""
    return {p: min_poly_cos(p, var).poly for p in indices_with_cos_degree_at_most(k).indices}


def rational_cos_values():
    """p -> cos(2*pi/p) for the p where the value is rational, computed from degree-1 minimal polynomials."""
    from fractions import Fraction

    out = {}
    for p in indices_with_cos_degree_at_most(1).indices:
        m = min_poly_cos(p).poly
        out[p] = Fraction(-m.coeffs[0]) / Fraction(m.coeffs[1])
    return out


def _strip_cyclotomic(q: UniPoly):
    """Divide q by cyclotomic polynomials while possible; return (remainder, witness)."""
    witness = []
    deg = q.degree
    for d in indices_with_totient_at_most(max(deg, 1)):
        phi = cyclotomic_poly(d, q.var)
        while q.degree >= phi.degree and phi.divides(q):
            q = q.divexact(phi)
            witness.append(d)
    return q, witness


@dataclass(frozen=True)
class CyclotomicTest:
    is_product: bool
    witness: tuple
    reason: str = ""


def is_cyclotomic_product(p: UniPoly) -> CyclotomicTest:
    """True iff the primitive part of p is, up to sign, a product of cyclotomic polynomials."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    prim = p.primitive()
    if prim.degree == 0:
        return CyclotomicTest(True, ())
    if abs(prim.lc()) != 1:
        return CyclotomicTest(False, (), f"primitive part has leading coefficient {prim.lc()}")
    if abs(prim.coeffs[0]) != 1:
        return CyclotomicTest(False, (), f"constant term {prim.coeffs[0]} is not a unit")
    rest, witness = _strip_cyclotomic(prim)
    if rest.degree > 0:
        return CyclotomicTest(False, tuple(sorted(witness)), f"non-cyclotomic remainder {rest.primitive()}")
    return CyclotomicTest(True, tuple(sorted(witness)))


@dataclass(frozen=True)
class RootOfUnityTest:
    is_root_of_unity: bool
    order: int | None
    witness: tuple


def is_root_of_unity(minpoly: UniPoly) -> RootOfUnityTest:
    """Every root of the given polynomial is a root of unity (squarefree primitive part tested)."""
    if minpoly.is_zero():
        raise ValueError("zero polynomial")
    t = is_cyclotomic_product(squarefree_part(minpoly))
    if not t.is_product:
        return RootOfUnityTest(False, None, t.witness)
    order = None
    if len(t.witness) == 1:
        order = t.witness[0]
    elif t.witness:
        order = 1
        for d in t.witness:
            order = order * d // gcd(order, d)
    return RootOfUnityTest(True, order, t.witness)
