from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.corpus import INTEGRALS, MAPS
from resint.dynmap.rmap import RationalMap
from resint.verifier import (
    CandidateIntegral,
    functional_independence,
    orbit_invariance_numeric,
    verify_first_integral,
)


def _map(name):
    return RationalMap.parse(MAPS[name])


@pytest.mark.parametrize("name, integral", [(n, r) for n, rs in sorted(INTEGRALS.items()) for r in rs])
def test_known_integrals_hold(name, integral):
    res = verify_first_integral(_map(name), integral)
    assert res.holds and res.residual.is_zero()


def test_negative_control_reports_residual():
    res = verify_first_integral(_map("lyness"), "x")
    assert not res
    assert str(res.residual) == "-x + y"


@given(st.integers(-5, 5).filter(bool), st.integers(-5, 5))
@settings(max_examples=25, deadline=None)
def test_affine_images_of_integrals_are_integrals(a, b):
    f = _map("f6")
    H = INTEGRALS["f6"][0]
    assert verify_first_integral(f, f"({a})*({H}) + ({b})")


def test_independence():
    assert functional_independence(_map("f6"), INTEGRALS["f6"]).label == "independent"
    assert functional_independence(_map("todd"), INTEGRALS["todd"]).independent
    H = INTEGRALS["lyness"][0]
    dep = functional_independence(_map("lyness"), [H, f"({H})^2"])
    assert dep.label == "dependent" and not dep
    r1 = functional_independence(_map("f6"), INTEGRALS["f6"], seed=7)
    r2 = functional_independence(_map("f6"), INTEGRALS["f6"], seed=7)
    assert r1.to_dict() == r2.to_dict()


def test_more_candidates_than_dimension_are_dependent():
    f = _map("f6")
    assert not functional_independence(f, INTEGRALS["f6"] + ["x*y"])


def test_candidate_parse_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        CandidateIntegral.parse("x + w", _map("f6"))


def test_orbit_invariance():
    f = _map("lyness")
    rep = orbit_invariance_numeric(f, INTEGRALS["lyness"][0], (Fraction(1, 3), Fraction(2)), 40, params={"c": 3},
                                   exact=True)
    assert rep.max_deviation == 0 and rep.steps == 40
    rep = orbit_invariance_numeric(_map("doubling"), "x*y", (1, 1), 10)
    assert rep.max_deviation == 1023


@given(st.fractions(Fraction(1, 10), 5, max_denominator=10), st.fractions(Fraction(1, 10), 5, max_denominator=10))
@settings(max_examples=20, deadline=None)
def test_exact_orbit_agrees_with_float_orbit(x, y):
    f = _map("f6")
    H = INTEGRALS["f6"][0]
    ex = orbit_invariance_numeric(f, H, (x, y), 12, exact=True)
    fl = orbit_invariance_numeric(f, H, (x, y), 12)
    assert ex.max_deviation == 0
    assert fl.max_deviation < 1e-9
