"""Resonance lattices {k in Z^n : mu^k = 1} and the resulting bound on independent first integrals."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
import math

import mpmath
from sympy import factorint

from .core.multipoly import MultiPoly
from .core.numfield import NFElement, QuotientRing
from .core.resultant import resultant
from .core.upoly import UniPoly, rational_roots, squarefree_part
from .cyclotomic import indices_with_cos_degree_at_most, min_poly_cos


class Status(str, Enum):
    EXACT = "Exact"
    HEURISTIC_VERIFIED = "HeuristicVerified"
    HEURISTIC_UNVERIFIED = "HeuristicUnverified"


class HypothesisError(ValueError):
    """An input violates the precondition of the requested method."""


@dataclass(frozen=True)
class ResonanceLattice:
    basis: tuple
    status: Status
    bound: int | None = None  # exponent bound B of a heuristic search
    note: str = ""

    @property
    def rank(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.basis[0]) if self.basis else None

    def to_dict(self):
        return {
            "rank": self.rank,
            "basis": [list(b) for b in self.basis],
            "status": self.status.value,
            "bound": self.bound,
            "note": self.note,
        }


@dataclass(frozen=True)
class EigenTuple:
    """Eigenvalues of a Jacobian: rational values, a conjugate pair (T, D), or polynomial data."""

    kind: str  # "rational" | "conjugate_pair" | "polynomial"
    values: tuple = ()
    T: object = None
    D: object = None
    charpoly: UniPoly | None = None


# integer lattices ----------------------------------------------------------------------------


def integer_kernel(A, ncols):
    """Basis of {k in Z^ncols : A k = 0} by unimodular column operations."""
    A = [list(r) for r in A]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(j, i, q):  # col_j -= q * col_i
        for row in A:
            row[j] -= q * row[i]
        for row in U:
            row[j] -= q * row[i]

    def swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    piv = 0
    for r in range(len(A)):
        if piv >= ncols:
            break
        for j in range(piv + 1, ncols):
            while A[r][j] != 0:
                if A[r][piv] == 0:
                    swap(piv, j)
                    continue
                col_op(j, piv, A[r][j] // A[r][piv])
                if A[r][j] != 0:
                    swap(piv, j)
        if A[r][piv] != 0:
            piv += 1
    return [tuple(U[i][j] for i in range(ncols)) for j in range(piv, ncols)]


def hermite_rows(vectors):
    """Row Hermite normal form of the lattice spanned by integer vectors (zero rows dropped)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return ()
    n = len(rows[0])
    out = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            new = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        rows = rest
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        c = next(k for k, a in enumerate(out[i]) if a)
        for j in range(i):
            q = out[j][c] // out[i][c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return tuple(tuple(r) for r in out)


def lattice_rank(vectors):
    return len(hermite_rows(vectors))


# exact rational eigenvalues ----------------------------------------------------------------------


def _prime_exponents(q: Fraction):
    out = {}
    for p, e in factorint(abs(q.numerator)).items():
        out[p] = out.get(p, 0) + e
    for p, e in factorint(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return out


def rank_rational_eigs(mu) -> ResonanceLattice:
    mu = [Fraction(m) for m in mu]
    if any(m == 0 for m in mu):
        raise ValueError("eigenvalues must be nonzero")
    n = len(mu)
    exps = [_prime_exponents(m) for m in mu]
    primes = sorted(set().union(*exps)) if exps else []
    A = [[e.get(p, 0) for e in exps] + [0] for p in primes]
    # parity of the sign: sum k_i s_i - 2 t = 0
    A.append([1 if m < 0 else 0 for m in mu] + [-2])
    kern = integer_kernel(A, n + 1)
    basis = hermite_rows([k[:n] for k in kern])
    return ResonanceLattice(basis, Status.EXACT)


def brute_force_rank(mu, bound):
    """Rank of the relations with all |k_i| <= bound, by enumeration (test oracle)."""
    mu = [Fraction(m) for m in mu]
    rel = []
    for k in product(range(-bound, bound + 1), repeat=len(mu)):
        if not any(k):
            continue
        v = Fraction(1)
        for m, e in zip(mu, k):
            v *= m ** e
        if v == 1:
            rel.append(k)
    return lattice_rank(rel)


# conjugate pairs ------------------------------------------------------------------------------------


def _sign(x):
    if isinstance(x, NFElement):
        return x.sign()
    return (x > 0) - (x < 0)


def _is_zero(x):
    return x.is_zero() if isinstance(x, NFElement) else x == 0


def _field_degree(x):
    return x.field.degree if isinstance(x, NFElement) else 1


def cos_order(v) -> int | None:
    """The p with v = cos(2*pi*n/p), gcd(n, p) = 1, or None.  v is rational or an NFElement."""
    k = _field_degree(v)
    for p in indices_with_cos_degree_at_most(k).indices:
        m = min_poly_cos(p).poly
        val = 0
        for c in reversed(m.coeffs):
            val = val * v + c
        if _is_zero(val):
            return p
    return None


def rank_conjugate_pair(T, D) -> ResonanceLattice:
    """Relations among (mu, conj(mu)) for mu^2 - T mu + D with T^2 - 4D < 0."""
    if not isinstance(T, NFElement):
        T = Fraction(T)
    if not isinstance(D, NFElement):
        D = Fraction(D)
    disc = T * T - 4 * D
    if _sign(disc) >= 0:
        raise HypothesisError("T^2 - 4D must be negative for a complex conjugate pair")
    if _is_zero(D - 1):
        # |mu| = 1: (1, 1) is always a relation; rank 2 iff mu is a root of unity
        p = cos_order(T * Fraction(1, 2))
        if p is None:
            return ResonanceLattice(((1, 1),), Status.EXACT, note="|mu| = 1, mu not a root of unity")
        return ResonanceLattice(hermite_rows([(1, 1), (p, 0)]), Status.EXACT, note=f"|mu| = 1, mu^{p} = 1")
    v = T * T / (2 * D) - 1
    p = cos_order(v)
    if p is None:
        return ResonanceLattice((), Status.EXACT, note="|mu| != 1 and mu/conj(mu) is not a root of unity")
    return ResonanceLattice(((p, -p),), Status.EXACT, note=f"|mu| != 1, (mu/conj(mu))^{p} = 1")


# heuristic search with exact verification -----------------------------------------------------------


def _lll(basis, delta=Fraction(3, 4)):
    """Textbook LLL on integer row vectors with exact rational Gram-Schmidt."""
    b = [list(v) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gso():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / dot(bs[j], bs[j]) if any(bs[j]) else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def _numeric_eigs(charpoly: UniPoly, dps):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(charpoly.coeffs)]
        return list(mpmath.polyroots(cs, maxsteps=500, extraprec=4 * dps))


def _power_charpoly(m: UniPoly, k: int, var="z") -> UniPoly:
    """Polynomial whose roots are beta^k over the roots beta of m."""
    ring = QuotientRing(squarefree_part(m))
    t = ring.name
    e = ring.power(UniPoly([0, 1], t), k)
    r = resultant(ring.modulus.to_multi((t, var)), MultiPoly.var(var, (t, var)) - e.to_multi((t, var)), t)
    return UniPoly.from_multi(r, var)


def _product_poly(a: UniPoly, b: UniPoly, var="z") -> UniPoly:
    """Roots alpha*beta over roots alpha of a and beta of b."""
    w = "w_"
    A = a.rename(w).to_multi((w, var))
    db = b.degree
    # w^db * b(z / w)
    terms = {}
    for i, c in enumerate(b.coeffs):
        if c:
            terms[(db - i, i)] = c
    B = MultiPoly((w, var), terms)
    return UniPoly.from_multi(resultant(A, B, w), var)


def _separation_bound(p: UniPoly):
    """Lower bound on the distance between distinct complex roots of p."""
    q = squarefree_part(p).primitive()
    d = q.degree
    if d < 2:
        return mpmath.mpf(1)
    norm2 = mpmath.sqrt(sum(mpmath.mpf(int(c)) ** 2 for c in q.int_coeffs()))
    return mpmath.sqrt(3) * mpmath.mpf(d) ** (-(d + 2) / mpmath.mpf(2)) * norm2 ** (1 - d)


def verify_relation(k, eig_polys, approx, dps=200, max_degree=12) -> bool | None:
    """Exact check of prod mu_i^k_i = 1; None when the check is out of reach."""
    support = [i for i, e in enumerate(k) if e]
    if not support:
        return True
    polys = [eig_polys[i] for i in support]
    if all(p.degree == 1 for p in polys):
        val = Fraction(1)
        for i in support:
            p = eig_polys[i]
            val *= (-Fraction(p.coeffs[0]) / Fraction(p.coeffs[1])) ** k[i]
        return val == 1
    if len(support) == 1:
        i = support[0]
        ring = QuotientRing(eig_polys[i])
        return ring.power(UniPoly([0, 1], ring.name), k[i]) == UniPoly([1], ring.name)
    if len(support) == 2 and polys[0] == polys[1] and polys[0].degree == 2:
        # the two roots of one quadratic: conj = T - t in Q[t]/(m)
        m = polys[0].monic()
        ring = QuotientRing(m)
        t = UniPoly([0, 1], ring.name)
        other = UniPoly([-m.coeffs[1], -1], ring.name)
        a = ring.power(t, k[support[0]])
        b = ring.power(other, k[support[1]])
        if approx[support[0]] == approx[support[1]]:
            b = ring.power(t, k[support[1]])
        return ring.mul(a, b) == UniPoly([1], ring.name)
    # composed polynomial whose roots include the product; close enough to 1 and 1 a root => equal
    acc = None
    for i in support:
        piece = _power_charpoly(eig_polys[i], k[i])
        acc = piece if acc is None else _product_poly(acc, piece)
        if acc.degree > max_degree:
            return None
    if acc(1) != 0:
        return False
    with mpmath.workdps(dps):
        val = mpmath.mpf(1)
        for i in support:
            val *= approx[i] ** k[i]
        return bool(abs(val - 1) < _separation_bound(acc) / 2)


def rank_heuristic(eig_polys, approx=None, bound=20, dps=60) -> ResonanceLattice:
    """Integer-relation search on (log|mu_i|, arg mu_i) by LLL, each relation verified exactly.

    ``eig_polys[i]`` is a rational polynomial vanishing at the i-th eigenvalue and
    ``approx[i]`` a complex approximation to it (computed from the polynomials if omitted).
    """
    n = len(eig_polys)
    if approx is None:
        raise ValueError("approximations are required")
    with mpmath.workdps(dps):
        if any(abs(a) < mpmath.mpf(10) ** (-dps // 2) for a in approx):
            raise HypothesisError("zero eigenvalue")
        scale = mpmath.mpf(2) ** (int(dps * 3.32) - 20)
        logs = [mpmath.log(abs(a)) for a in approx]
        args = [mpmath.arg(a) for a in approx]
        rows = []
        for i in range(n):
            r = [int(i == j) for j in range(n)] + [0]
            r += [int(mpmath.nint(scale * logs[i])), int(mpmath.nint(scale * args[i]))]
            rows.append(r)
        rows.append([0] * n + [1, 0, int(mpmath.nint(scale * 2 * mpmath.pi))])
    red = _lll(rows)
    candidates = []
    for r in red:
        k = tuple(r[:n])
        if not any(k) or max(abs(e) for e in k) > bound:
            continue
        candidates.append(k)
    # also try unit vectors and pairwise sums (cheap, catches roots of unity)
    verified = []
    unverifiable = False
    for k in candidates:
        ok = verify_relation(k, eig_polys, approx)
        if ok:
            verified.append(k)
        elif ok is None:
            unverifiable = True
    # individual roots of unity: order search up to the bound
    for i in range(n):
        if any(v[i] and not any(v[j] for j in range(n) if j != i) for v in verified):
            continue
        for e in range(1, bound + 1):
            k = tuple(e if j == i else 0 for j in range(n))
            with mpmath.workdps(dps):
                if abs(approx[i] ** e - 1) > mpmath.mpf(10) ** (-dps // 3):
                    continue
            if verify_relation(k, eig_polys, approx):
                verified.append(k)
                break
    basis = hermite_rows(verified)
    if not basis and unverifiable:
        return ResonanceLattice((), Status.HEURISTIC_UNVERIFIED, bound, "candidate relations could not be verified")
    note = f"rank >= {len(basis)} with exponents bounded by {bound}"
    return ResonanceLattice(basis, Status.HEURISTIC_VERIFIED, bound, note)


def eigen_polys_from_charpoly(charpoly: UniPoly, dps=60):
    """Numeric eigenvalues with, for each, a squarefree rational factor that vanishes there."""
    from .core.factor import factor_uni_bounded

    fac = factor_uni_bounded(charpoly)
    polys, approx = [], []
    for f in fac.factors:
        roots = _numeric_eigs(f.poly, dps)
        for r in roots:
            for _ in range(f.multiplicity):
                polys.append(f.poly)
                approx.append(r)
    return polys, approx


# bound dispatch --------------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    bound: int
    lattice: ResonanceLattice
    eigen: EigenTuple
    method: str

    def to_dict(self):
        d = {"bound": self.bound, "method": self.method, "lattice": self.lattice.to_dict()}
        if self.eigen.charpoly is not None:
            d["charpoly"] = str(self.eigen.charpoly)
        return d


def _charpoly_at(f, point, mu="mu"):
    cp = f.char_poly(mu)
    env = dict(zip(f.state_vars, point))
    return cp, env


def integral_bound(f, fp, bound=20) -> BoundReport:
    """Upper bound on independent meromorphic first integrals at a fixed point.

    ``fp`` is a tuple of rationals or a planar ``FixedPoint`` with number-field coordinates.
    """
    from .dynmap.rmap import FixedPoint

    n = f.n
    if isinstance(fp, FixedPoint):
        cp = f.char_poly()
        T = fp.evaluate(cp.T)
        D = fp.evaluate(cp.D)
        if D.is_zero():
            raise HypothesisError("Jacobian is singular at the fixed point")
        if fp.is_rational():
            return integral_bound(f, fp.rational_coords(), bound)
        if (T * T - 4 * D).sign() < 0:
            lat = rank_conjugate_pair(T, D)
            return BoundReport(lat.rank, lat, EigenTuple("conjugate_pair", T=T, D=D), "conjugate_pair")
        # real eigenvalues in Q(alpha): rational defining polynomial by a resultant
        t = fp.field.name
        m = fp.field.modulus.to_multi((t, "mu"))
        mu = MultiPoly.var("mu", (t, "mu"))
        q = mu * mu - T.reduced().to_multi((t, "mu")) * mu + D.reduced().to_multi((t, "mu"))
        big = UniPoly.from_multi(resultant(m, q, t), "mu")
        polys, approx_all = eigen_polys_from_charpoly(big)
        tf, df = float(T), float(D)
        s = math.sqrt(max(tf * tf - 4 * df, 0.0))
        targets = [(tf - s) / 2, (tf + s) / 2]
        chosen_p, chosen_a = [], []
        for tg in targets:
            j = min(range(len(approx_all)), key=lambda i: abs(complex(approx_all[i]) - tg))
            chosen_p.append(polys[j])
            chosen_a.append(approx_all[j])
        lat = rank_heuristic(chosen_p, chosen_a, bound)
        return BoundReport(lat.rank, lat, EigenTuple("polynomial", charpoly=big), "heuristic")

    point = tuple(Fraction(c) for c in fp)
    if f.params:
        raise ValueError("integral_bound needs a parameter-free map")
    env = dict(zip(f.state_vars, point))
    J = [[Fraction(e.evaluate(env)) for e in row] for row in f.jacobian()]
    cpd = f.char_poly("mu")
    R = cpd.R.subs(env)
    charpoly = UniPoly.from_multi(R.drop_unused(), "mu") if not R.is_const() else UniPoly.from_multi(R, "mu")
    charpoly = charpoly.monic()
    if charpoly.coeffs[0] == 0:
        raise HypothesisError("Jacobian is singular at the fixed point")
    roots = rational_roots(charpoly)
    if sum(roots.values()) == n:
        vals = []
        for r, mlt in sorted(roots.items()):
            vals += [r] * mlt
        lat = rank_rational_eigs(vals)
        return BoundReport(lat.rank, lat, EigenTuple("rational", values=tuple(vals), charpoly=charpoly), "rational")
    if n == 2:
        T = J[0][0] + J[1][1]
        D = J[0][0] * J[1][1] - J[0][1] * J[1][0]
        if T * T - 4 * D < 0:
            lat = rank_conjugate_pair(T, D)
            return BoundReport(lat.rank, lat, EigenTuple("conjugate_pair", T=T, D=D, charpoly=charpoly), "conjugate_pair")
    polys, approx = eigen_polys_from_charpoly(charpoly)
    lat = rank_heuristic(polys, approx, bound)
    return BoundReport(lat.rank, lat, EigenTuple("polynomial", charpoly=charpoly), "heuristic")
