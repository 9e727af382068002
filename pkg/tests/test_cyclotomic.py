import math

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.core.multipoly import MultiPoly
from resint.core.resultant import resultant
from resint.core.upoly import UniPoly, poly_sqrt
from resint.cyclotomic import (
    cos_battery,
    cos_degree,
    cyclotomic_poly,
    indices_with_cos_degree_at_most,
    indices_with_totient_at_most,
    is_cyclotomic_product,
    is_root_of_unity,
    min_poly_cos,
    rational_cos_values,
    totient,
)

X = sp.Symbol("x")


def test_cyclotomic_matches_sympy_up_to_120():
    for p in range(1, 121):
        ours = cyclotomic_poly(p).coeffs
        ref = list(reversed(sp.Poly(sp.cyclotomic_poly(p, X), X).all_coeffs()))
        assert ours == [int(c) for c in ref]
        assert cyclotomic_poly(p).degree == totient(p)


def test_product_over_divisors_is_x_n_minus_1():
    for n in range(1, 101):
        prod = UniPoly([1])
        for d in sp.divisors(n):
            prod = prod * cyclotomic_poly(d)
        assert prod == UniPoly([-1] + [0] * (n - 1) + [1])


def test_bounded_totient_inverse_is_complete():
    for k in range(1, 13):
        got = set(indices_with_totient_at_most(k))
        assert got == {p for p in range(1, 1000) if totient(p) <= k}


def test_cos_tables():
    assert str(min_poly_cos(5).poly) == "4*x^2 + 2*x - 1"
    assert str(min_poly_cos(7).poly) == "8*x^3 + 4*x^2 - 4*x - 1"
    assert str(min_poly_cos(9).poly) == "8*x^3 - 6*x + 1"
    assert str(min_poly_cos(14).poly) == "8*x^3 - 4*x^2 - 4*x + 1"
    assert str(min_poly_cos(18).poly) == "8*x^3 - 6*x - 1"
    assert indices_with_cos_degree_at_most(1).indices == (1, 2, 3, 4, 6)
    assert indices_with_cos_degree_at_most(2).indices == (1, 2, 3, 4, 5, 6, 8, 10, 12)
    assert indices_with_cos_degree_at_most(3).indices == (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18)
    assert len(set(map(str, cos_battery(3).values()))) == 13


@given(st.integers(1, 60))
@settings(max_examples=60, deadline=None)
def test_cos_minpoly_vanishes_at_all_conjugates(p):
    m = min_poly_cos(p).poly
    assert m.degree == cos_degree(p)
    for n in range(p):
        if math.gcd(n, p) == 1:
            c = math.cos(2 * math.pi * n / p)
            val = sum(float(a) * c**i for i, a in enumerate(m.coeffs))
            assert abs(val) < 1e-6 * max(1.0, sum(abs(float(a)) for a in m.coeffs))


def test_square_identity_for_p_up_to_50():
    vars_ = ("x", "v")
    x, v = MultiPoly.var("x", vars_), MultiPoly.var("v", vars_)
    for p in range(3, 51):
        r = UniPoly.from_multi(resultant(cyclotomic_poly(p).to_multi(vars_), x * x - 2 * x * v + 1, "x"), "v")
        root = poly_sqrt(r)
        assert root is not None and root.degree == totient(p) // 2
        assert root.primitive() == min_poly_cos(p, "v").poly or -root.primitive() == min_poly_cos(p, "v").poly


def test_rational_cos_values():
    vals = rational_cos_values()
    assert sorted(vals.values()) == [-1, -0.5, 0, 0.5, 1]


def test_cyclotomic_product_detection():
    phi = cyclotomic_poly
    assert is_cyclotomic_product(phi(8) * phi(3) * phi(1)).is_product
    assert is_cyclotomic_product(phi(8) * phi(3)).witness == (3, 8)
    t = is_cyclotomic_product(UniPoly([5, -7, 5]))
    assert not t.is_product and "leading" in t.reason
    assert not is_cyclotomic_product(UniPoly([1, -3, 1])).is_product
    with pytest.raises(ValueError):
        is_cyclotomic_product(UniPoly([]))


def test_root_of_unity():
    assert is_root_of_unity(cyclotomic_poly(12)).is_root_of_unity
    assert is_root_of_unity(cyclotomic_poly(12)).order == 12
    assert not is_root_of_unity(UniPoly([2, 0, 1])).is_root_of_unity


def test_invalid_indices():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)
    with pytest.raises(ValueError):
        min_poly_cos(0)
