from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint.corpus import MAPS
from resint.dynmap.rmap import RationalMap
from resint.resonance import (
    HypothesisError,
    Status,
    brute_force_rank,
    integral_bound,
    lattice_rank,
    rank_conjugate_pair,
    rank_rational_eigs,
)

eig = st.builds(lambda n, d: Fraction(n, d), st.sampled_from([1, -1, 2, -2, 3, 4, 6, 9, -8]),
                st.sampled_from([1, 2, 3, 4]))


@given(st.lists(eig, min_size=1, max_size=3))
@settings(max_examples=150, deadline=None)
def test_rank_matches_brute_force(mu):
    lat = rank_rational_eigs(mu)
    assert lat.status is Status.EXACT
    reach = max([abs(e) for k in lat.basis for e in k] + [1])
    assert lat.rank == brute_force_rank(mu, min(reach, 12))
    for k in lat.basis:
        v = Fraction(1)
        for m, e in zip(mu, k):
            v *= m**e
        assert v == 1


def test_rank_examples():
    assert rank_rational_eigs([2, 3, 5]).rank == 0
    assert rank_rational_eigs([2, Fraction(1, 2)]).rank == 1
    assert rank_rational_eigs([-1, -1]).rank == 2
    assert rank_rational_eigs([4, 8, 2]).rank == 2
    with pytest.raises(ValueError):
        rank_rational_eigs([0, 2])
    assert lattice_rank([(1, 2), (2, 4)]) == 1


@pytest.mark.parametrize(
    "T, D, rank",
    [
        (1, 1, 2),  # primitive 6th root of unity
        (0, 1, 2),  # i
        (Fraction(1, 2), 1, 1),  # |mu| = 1, not a root of unity
        (0, 2, 1),  # mu/conj(mu) = -1
        (2, 2, 1),  # mu = 1 + i, ratio i
        (1, 3, 0),
    ],
)
def test_conjugate_pair(T, D, rank):
    assert rank_conjugate_pair(T, D).rank == rank


def test_conjugate_pair_requires_complex():
    with pytest.raises(HypothesisError):
        rank_conjugate_pair(3, 1)


def test_integral_bound_dispatch():
    assert integral_bound(RationalMap.parse(MAPS["diag235"]), (0, 0, 0)).bound == 0
    assert integral_bound(RationalMap.parse(MAPS["rotation"]), (0, 0)).bound == 2
    rep = integral_bound(RationalMap.parse(MAPS["lyness"]).specialize({"c": 2}), (1, 1))
    assert rep.method == "rational" and rep.eigen.values == (-1, -1) and rep.bound == 2
    rep = integral_bound(RationalMap.parse(MAPS["linear_shift"]).specialize({"b": 2}), (0, 0))
    assert rep.method == "conjugate_pair" and rep.bound == 1
    f = RationalMap.parse(MAPS["planar_cubic"])
    rep = integral_bound(f, f.real_fixed_points()[0])
    assert rep.bound == 0
