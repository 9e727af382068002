from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.core.factor import factor_uni_bounded
from resint.core.mgcd import content_in, mgcd, prem
from resint.core.multipoly import MultiPoly, NotDivisible, poly_vars
from resint.core.numfield import NFElement, QuotientRing, RealNumberField, nf_poly_gcd
from resint.core.rational import make_rational, norm, to_rational
from resint.core.realroots import count_roots, sturm_isolate
from resint.core.resultant import det_bareiss, resultant, resultant_uni, sylvester_matrix
from resint.core.upoly import (
    UniPoly,
    gcd_uni,
    poly_sqrt,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    xgcd_uni,
)

X = sp.Symbol("x")

small_int = st.integers(-9, 9)
rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def upoly(min_deg=0, max_deg=5, coeff=small_int):
    return st.lists(coeff, min_size=min_deg + 1, max_size=max_deg + 1).map(lambda cs: UniPoly(cs, "x"))


def to_sympy(p: UniPoly):
    return sp.Poly(list(reversed([sp.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in p.coeffs]))
                   or [0], X)


# rationals -----------------------------------------------------------------------------------------------


def test_norm_collapses_integral_fractions():
    assert norm(Fraction(6, 3)) == 2 and type(norm(Fraction(6, 3))) is int
    assert to_rational("-3/4") == Fraction(-3, 4)
    with pytest.raises(ZeroDivisionError):
        make_rational(1, 0)
    with pytest.raises(TypeError):
        to_rational(True)


# multivariate ---------------------------------------------------------------------------------------------


def test_multipoly_ring_identities():
    x, y = poly_vars("x", "y")
    p = (x + y) ** 3
    assert p == x**3 + 3 * x**2 * y + 3 * x * y**2 + y**3
    assert p.divexact(x + y) == (x + y) ** 2
    assert p.degree("x") == 3 and p.total_degree() == 3
    with pytest.raises(NotDivisible):
        p.divexact(x + 2 * y)
    assert p.subs({"y": 1}) == (x + 1) ** 3
    assert p.diff("x") == 3 * (x + y) ** 2


@given(st.lists(st.tuples(small_int, small_int, small_int), min_size=1, max_size=5),
       st.lists(st.tuples(small_int, small_int, small_int), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_multipoly_product_matches_sympy(ta, tb):
    x, y = poly_vars("x", "y")
    sx, sy = sp.symbols("x y")

    def build(terms):
        p = MultiPoly.const(0, ("x", "y"))
        s = 0
        for c, i, j in terms:
            p = p + c * x ** abs(i % 4) * y ** abs(j % 3)
            s += c * sx ** abs(i % 4) * sy ** abs(j % 3)
        return p, s

    pa, sa = build(ta)
    pb, sb = build(tb)
    prod = pa * pb
    expected = sp.expand(sa * sb)
    assert sp.expand(sp.sympify(str(prod).replace("^", "**")) - expected) == 0


def sympy_sylvester_det(p, q):
    # built by hand: sympy.resultant disagrees in sign on some inputs with a constant-like operand
    a, b = p.all_coeffs(), q.all_coeffs()
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return sp.Matrix(rows).det()


# resultants ----------------------------------------------------------------------------------------------


@given(upoly(1, 5), upoly(1, 5))
@settings(max_examples=200, deadline=None)
def test_resultant_matches_numeric_root_product(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    r = Fraction(resultant_uni(p, q))
    roots = mpmath.polyroots([float(c) for c in reversed(p.coeffs)], maxsteps=200, extraprec=200)
    prod = mpmath.mpf(float(p.lc())) ** q.degree
    for a in roots:
        prod *= sum(float(c) * a**i for i, c in enumerate(q.coeffs))
    approx = complex(prod)
    scale = max(1.0, abs(float(r)))
    assert abs(approx - float(r)) / scale < 1e-6


@given(upoly(1, 4), upoly(1, 4))
@settings(max_examples=80, deadline=None)
def test_resultant_matches_sympy(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    expected = sympy_sylvester_det(to_sympy(p), to_sympy(q))
    assert Fraction(resultant_uni(p, q)) == Fraction(int(sp.numer(expected)), int(sp.denom(expected)))


def test_sylvester_and_companion_routes_agree():
    x, y, a = poly_vars("x", "y", "a")
    p = x**3 - a * x + y
    q = 2 * x**2 + y * x - a
    r1 = resultant(p, q, "x", method="sylvester")
    r2 = resultant(p, q, "x", method="companion")
    assert r1 == r2
    sx, sy, sa = sp.symbols("x y a")
    ref = sp.resultant(sx**3 - sa * sx + sy, 2 * sx**2 + sy * sx - sa, sx)
    assert sp.expand(sp.sympify(str(r1).replace("^", "**")) - ref) == 0


def test_det_bareiss_small():
    m = [[MultiPoly.const(c) for c in row] for row in ((2, 1, 0), (1, 3, 1), (0, 1, 4))]
    assert det_bareiss(m).const_value() == 2 * (12 - 1) - 1 * 4
    assert len(sylvester_matrix(UniPoly([1, 0, 1]).to_multi(), UniPoly([-1, 1]).to_multi(), "x")) == 3


# univariate toolkit ----------------------------------------------------------------------------------------


@given(upoly(0, 5), upoly(0, 5))
@settings(max_examples=80, deadline=None)
def test_gcd_and_xgcd(p, q):
    if p.is_zero() and q.is_zero():
        return
    g = gcd_uni(p, q)
    ref = sp.gcd(to_sympy(p), to_sympy(q))
    assert g.degree == ref.degree()
    g2, s, t = xgcd_uni(p, q)
    assert s * p + t * q == g2


@given(upoly(1, 3), upoly(1, 3))
@settings(max_examples=60, deadline=None)
def test_squarefree_and_sqrt(p, q):
    if p.degree < 1:
        return
    sq = p * p
    root = poly_sqrt(sq)
    assert root is not None and root * root == sq
    parts = squarefree_decomposition(sq * q if not q.is_zero() else sq)
    assert all(m >= 1 for _, m in parts)
    assert squarefree_part(sq).degree <= p.degree


def test_poly_sqrt_rejects_non_squares():
    assert poly_sqrt(UniPoly([1, 0, 2])) is None
    assert poly_sqrt(UniPoly([-1, 0, 1])) is None


@given(st.lists(rat, min_size=1, max_size=4), st.integers(1, 5))
@settings(max_examples=60, deadline=None)
def test_rational_roots_recovers_planted_roots(roots, lc):
    p = UniPoly.from_roots(roots, "x", lc) * UniPoly([1, 0, 1])
    found = rational_roots(p)
    for r in set(roots):
        assert found[Fraction(r)] == roots.count(r)
    assert sum(found.values()) == len(roots)


def test_factor_bounded_against_sympy():
    p = UniPoly([1, -1, 6, -2, 5, -1], "x").to_multi()  # -x^5 + 5x^4 - 2x^3 + 6x^2 - x + 1 reversed signs
    u = UniPoly.from_multi(p, "x")
    fac = factor_uni_bounded(u)
    assert fac.expand() == u
    ref = sp.factor_list(to_sympy(u))
    assert sorted(f.poly.degree for f in fac.factors) == sorted(g.degree() for g, _ in ref[1])
    assert fac.complete


def test_factor_reports_multiplicities():
    u = UniPoly.from_roots([1, 1, 2], "x") * UniPoly([1, 1, 1])
    fac = factor_uni_bounded(u)
    assert fac.expand() == u
    assert sorted((f.poly.degree, f.multiplicity) for f in fac.factors) == [(1, 1), (1, 2), (2, 1)]


# real roots ---------------------------------------------------------------------------------------------------


def test_sturm_single_root_and_refinement():
    p = UniPoly([-1, 1, -5, 1], "t")
    roots = sturm_isolate(p)
    assert len(roots) == 1
    r = roots[0].refine(Fraction(1, 10**21))
    assert r.hi - r.lo < Fraction(1, 10**20)
    assert abs(float(r.lo) - 4.83597591908132) < 1e-12


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5, unique=True))
@settings(max_examples=50, deadline=None)
def test_sturm_counts_planted_roots(roots):
    p = UniPoly.from_roots(roots, "x") * UniPoly([1, 0, 1])
    iso = sturm_isolate(p)
    assert len(iso) == len(roots)
    assert count_roots(p, -100, 100) == len(roots)
    for r, exact in zip(iso, sorted(roots)):
        assert r.lo <= exact <= r.hi


# number fields and multivariate gcd ------------------------------------------------------------------------


def test_number_field_arithmetic_and_signs():
    (alpha,) = [r for r in sturm_isolate(UniPoly([-2, 0, 1], "t")) if r.hi > 0]
    K = RealNumberField(alpha, "t")
    s = K.gen()
    assert (s * s - 2).is_zero()
    assert (1 / s * s - 1).is_zero()
    assert (s - 1).sign() == 1 and (s - 2).sign() == -1
    assert isinstance((s + 1) ** 2, NFElement)
    assert (s + 1).charpoly("v") == UniPoly([-1, -2, 1], "v")
    g = nf_poly_gcd([s * -1, K(1)], [K(-2), K(0), K(1)])  # gcd(x - s, x^2 - 2) = x - s
    assert len(g) == 2


def test_quotient_ring_power():
    R = QuotientRing(UniPoly([1, 1, 1], "x"))  # x^3 = 1 modulo x^2+x+1
    assert R.power(UniPoly([0, 1], "x"), 3) == UniPoly([1], "x")


def test_mgcd_and_prem():
    x, y = poly_vars("x", "y")
    a = (x + y) ** 2 * (x - 2 * y)
    b = (x + y) * (x + 3)
    g = mgcd(a, b)
    assert g.divides(a) and g.divides(b) and g.total_degree() == 1
    assert content_in((x + 1) * y**2 + (x + 1) * y, "y").total_degree() == 1
    r = prem(x**3 + y, x - y, "x")
    assert r == y**3 + y
