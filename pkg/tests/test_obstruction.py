from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.core.upoly import UniPoly
from resint.corpus import MAPS
from resint.dynmap.rmap import RationalMap
from resint.obstruction import (
    Kind,
    ParamConstraint,
    PipelineOptions,
    analyze,
    distinct_cos_battery,
    fast_path_quadratic_fp,
    fast_path_rational_fp,
    full_route,
    monomial_sweep,
    quadratic_field,
    quadratic_targets,
    two_integral_classification,
)

CUBIC_RESULTANTS = {
    1: -42964, 2: 2, 3: -3773, 4: -4874, 5: -4635971, 6: -140639, 7: 285285073151, 8: 10312361,
    9: 958519048339, 10: 2925766841, 12: -28163447, 14: -27527910259639, 18: -455408582831,
}


def _map(name):
    return RationalMap.parse(MAPS[name])


@pytest.fixture(scope="module")
def cubic_verdict():
    return analyze(_map("planar_cubic"))


def test_planar_cubic_is_excluded(cubic_verdict):
    v = cubic_verdict
    assert v.kind is Kind.EXCLUDED
    cert = v.certificate
    assert str(UniPoly.from_multi(cert.get("U_sel"), "v")) == "5833*v^3 + 16607*v^2 + 15650*v + 4874"
    assert cert.get("W").total_degree() == 10
    got = {p: cert.get(f"Res(U_sel,V_{p})").const_value() for p in CUBIC_RESULTANTS}
    assert got == CUBIC_RESULTANTS


def test_elimination_order_does_not_change_verdict(cubic_verdict):
    alt = analyze(_map("planar_cubic"), options=PipelineOptions(elimination_order="yx", full_route=False))
    assert alt.kind is cubic_verdict.kind


def test_full_route_is_consistent_with_refined_route():
    fr = full_route(_map("planar_cubic"))
    assert fr.covers_point and fr.degree == 3
    assert set(fr.indices) == set()
    assert "y" in fr.to_dict()["dropped_T1_factors"]


def test_battery_has_thirteen_distinct_polys():
    assert len(distinct_cos_battery(3)) == 13


def test_todd_candidates():
    v = analyze(_map("todd"))
    assert v.kind is Kind.CANDIDATE_PARAMS
    assert v.params == (-1, 1)
    cands = [Fraction(c) for c in v.details["candidates"]]
    assert set(cands) >= {Fraction(-1), Fraction(7, 9), Fraction(5, 4), Fraction(3), Fraction(1)}


def test_todd_resultants_factor_as_expected():
    res = _map_todd_resultants()
    assert res[3] == "16*a^2 - 40*a + 25"
    assert res[8] == "a^4 - 4*a^3 + 6*a^2 - 4*a + 1"


def _map_todd_resultants():
    v = analyze(_map("todd"))
    return {int(k): s for k, s in v.details["resultants"].items()}


def test_xy_family_under_constraint():
    v = analyze(_map("xy_family"), ParamConstraint.parse("a > 9/8"))
    assert v.kind is Kind.CANDIDATE_PARAMS
    assert v.params == (Fraction(3, 2), 2, Fraction(9, 4), Fraction(9, 2))


def test_xy_family_specialized_off_candidates_is_excluded():
    assert analyze(_map("xy_family").specialize({"a": Fraction(7, 4)})).kind is Kind.EXCLUDED


def test_rotation_is_inconclusive_and_diagonal_is_excluded():
    assert analyze(_map("rotation")).kind is Kind.INCONCLUSIVE
    assert analyze(_map("diag235")).kind is Kind.EXCLUDED


def test_constraint_parsing():
    c = ParamConstraint.parse("a >= -3/2")
    assert c.holds(Fraction(-3, 2)) and not c.holds(-2)
    assert ParamConstraint.parse("b = 1").op == "=="
    with pytest.raises(ValueError):
        ParamConstraint.parse("a >> 1")


def test_quadratic_fast_path():
    s = quadratic_field(2).gen()
    v = fast_path_quadratic_fp(1 + s, (2 + s) * Fraction(1, 2))
    assert v.kind is Kind.CANDIDATE_INDICES and v.indices == (8,)
    assert fast_path_quadratic_fp(1 + s, 3 + 0 * s).kind is Kind.EXCLUDED
    assert [str(m) for _, m in quadratic_targets()] == [
        "r^2 - 3*r + 1", "r^2 - 4*r + 2", "r^2 - 5*r + 5", "r^2 - 4*r + 1"]


@pytest.mark.parametrize("T, D, kind", [(2, 2, Kind.CANDIDATE_INDICES), (1, 2, Kind.EXCLUDED),
                                        (0, 5, Kind.CANDIDATE_INDICES), (1, 1, Kind.INCONCLUSIVE), (3, 2, Kind.INCONCLUSIVE)])
def test_rational_fast_path(T, D, kind):
    assert fast_path_rational_fp(T, D).kind is kind


@given(st.integers(-4, 4), st.integers(1, 4))
@settings(max_examples=15, deadline=None)
def test_fast_path_agrees_with_pipeline(t, d):
    # analyze_planar raises ArithmeticError if the two routes disagree at a rational fixed point
    f = RationalMap.parse(f"vars x, y; f = (y, {-d}*x + ({t})*y + x*y)")
    v = analyze(f)
    assert v.kind in set(Kind)
    fast = fast_path_rational_fp(t, d)
    if fast.kind is Kind.EXCLUDED:
        assert v.kind is Kind.EXCLUDED


def test_two_integral_classification():
    assert two_integral_classification(-1, 1).possible
    assert not two_integral_classification(0, 2).possible
    assert two_integral_classification(0, -1).possible
    assert not two_integral_classification(-3, 2).possible
    assert not two_integral_classification(1, 0).possible


def test_monomial_sweep():
    assert monomial_sweep() == [(-1, -2), (-1, -1), (-1, 0), (-1, 1), (-1, 2), (1, 0)]


@pytest.mark.parametrize("name", sorted(MAPS))
def test_every_corpus_map_gets_a_verdict(name):
    v = analyze(_map(name))
    assert isinstance(v.kind, Kind)
    if v.excluded:
        assert v.certificate.replay() == []


def test_two_parameter_planar_map_is_inconclusive():
    v = analyze(_map("lyness_bc"))
    assert v.kind is Kind.INCONCLUSIVE
