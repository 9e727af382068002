from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.corpus import MAPS, PERIODS
from resint.dynmap.parse import MapSyntaxError, UndeclaredVariable, parse_expr
from resint.dynmap.ratfunc import PoleError
from resint.dynmap.rmap import ContinuumError, RationalMap


@pytest.mark.parametrize(
    "text, exc",
    [
        ("vars x; f = (x+)", MapSyntaxError),
        ("vars x; f = (y)", UndeclaredVariable),
        ("vars x, y; f = (x)", MapSyntaxError),
        ("vars x; f = (x$)", MapSyntaxError),
        ("vars x; f = (1/(x - x))", MapSyntaxError),
    ],
)
def test_parser_rejects(text, exc):
    with pytest.raises(exc):
        RationalMap.parse(text)


def test_syntax_error_carries_position():
    with pytest.raises(MapSyntaxError) as e:
        RationalMap.parse("vars x;\nf = (x + * 2)")
    assert e.value.line == 2


@pytest.mark.parametrize("name", sorted(MAPS))
def test_render_round_trip(name):
    f = RationalMap.parse(MAPS[name])
    assert RationalMap.parse(f.render()) == f


def test_expression_syntax_variants():
    a = parse_expr("x**2 / (x*y)^(1) - x^-1", ("x", "y"))
    b = parse_expr("x/y - 1/x", ("x", "y"))
    assert (a - b).reduced().is_zero()


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_components_agree_with_sympy(i, j, k):
    src = MAPS["planar_cubic"]
    f = RationalMap.parse(src)
    x, y = Fraction(i), Fraction(j, k)
    sx, sy = sp.symbols("x y")
    den = sx**2 - 3 * sy + 1
    if den.subs({sx: x, sy: y}) == 0:
        with pytest.raises(PoleError):
            f.evaluate((x, y))
        return
    ref = (sx + sy**2 - sx * sy, (sx**2 + sx * sy + 1) / den)
    got = f.evaluate((x, y))
    for g, r in zip(got, ref):
        assert sp.Rational(g.numerator, g.denominator) == r.subs({sx: sp.Rational(i), sy: sp.Rational(j, k)})


def test_fixed_points_are_exact_roots():
    f = RationalMap.parse(MAPS["planar_cubic"])
    fps = f.real_fixed_points()
    assert len(fps) == 1
    fp = fps[0]
    for c, v in zip(f.components, f.state_vars):
        assert (fp.evaluate(c) - fp.evaluate(parse_expr(v, f.universe))).is_zero()
    assert abs(fp.approx()[0] - 4.83597591908132) < 1e-10


def test_rational_fixed_points_higher_dimension():
    f = RationalMap.parse(MAPS["todd"]).specialize({"a": 3})
    pts = f.rational_fixed_points()
    for p in pts:
        assert f.evaluate(p) == p
    assert (Fraction(3), Fraction(3), Fraction(3)) in pts


def test_char_poly_planar_trace_and_det():
    f = RationalMap.parse("vars x, y; f = (y, -x + 1/y)")
    cp = f.char_poly()
    env = {"x": Fraction(2), "y": Fraction(1, 2)}
    T, D = cp.T.evaluate(env), cp.D.evaluate(env)
    J = [[e.evaluate(env) for e in row] for row in f.jacobian()]
    assert T == J[0][0] + J[1][1]
    assert D == J[0][0] * J[1][1] - J[0][1] * J[1][0]
    with pytest.raises(ValueError):
        f.char_poly("x")


def test_char_poly_matches_sympy_at_points():
    f = RationalMap.parse(MAPS["todd"]).specialize({"a": 2})
    cp = f.char_poly("mu")
    sx, sy, sz, mu = sp.symbols("x y z mu")
    F = sp.Matrix([sy, sz, (2 + sy + sz) / sx])
    J = F.jacobian([sx, sy, sz])
    for pt in [(1, 2, 3), (-2, 5, 7)]:
        env = dict(zip("xyz", map(Fraction, pt)))
        ours = cp.R.subs(env)
        ours_s = sp.sympify(str(ours).replace("^", "**"))
        ref = (mu * sp.eye(3) - J.subs(dict(zip((sx, sy, sz), pt)))).det()
        assert sp.simplify(ours_s / ours_s.as_poly(mu).LC() - sp.expand(ref)) == 0


@pytest.mark.parametrize("name, period", sorted(PERIODS.items()))
def test_periodic_maps(name, period):
    f = RationalMap.parse(MAPS[name])
    assert f.power(period).is_identity()
    assert not any(f.power(k).is_identity() for k in range(1, period))


def test_compose_matches_iteration():
    f = RationalMap.parse(MAPS["planar_cubic"])
    g = f.power(2)
    p = (Fraction(1, 2), Fraction(1, 3))
    assert g.evaluate(p) == f.iterate(p, 2)[-1]


def test_specialize_pole_and_continuum():
    f = RationalMap.parse("vars x; params a; f = (x/a)")
    with pytest.raises(PoleError):
        f.specialize({"a": 0})
    g = RationalMap.parse(MAPS["rotation"]).power(4)
    with pytest.raises((ContinuumError, ValueError)):
        g.real_fixed_points()
