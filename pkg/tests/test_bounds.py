"""Closed-form bounds against values frozen from a 50-digit mpmath oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_schwarz import bounds as bnd
from harmonic_schwarz.bounds import FOUR_OVER_PI, BoundQuery
from harmonic_schwarz.errors import CoefficientBoundError, DomainError
from harmonic_schwarz.harmonic import HarmonicMap

# frozen with mpmath at 50 digits
ORACLE = {
    "analytic(2,0.3,0.6)": 0.27457627118644068,
    "arctan(1,0.5)": 0.5903344706017331,
    "improved(2,0.5,0.8)": 0.67000215216843916,
    "boundary(1,1)": 0.71314039122360531,
    "boundary(2,1)": 1.3497601635911867,
    "boundary(1,4/pi)": 0.63661977236758134,
    "boundary(3,0.5)": 2.1874639895320585,
    "slope(1,1)": 1.4262807824472106,
    "slope(1,0)": 2.5464790894703254,
    "slope(3,0.7)": 4.1896034051194775,
    "general(a=0.5)": 2.1394211736708159,
}


class TestAnalyticBound:
    def test_unit_coefficient(self):
        assert bnd.analytic_schwarz_pick_bound(1, 1.0, 0.7) == pytest.approx(0.7, rel=1e-15)

    def test_zero_coefficient(self):
        assert bnd.analytic_schwarz_pick_bound(2, 0.0, 0.5) == pytest.approx(0.125, rel=1e-15)

    def test_oracle(self):
        assert bnd.analytic_schwarz_pick_bound(2, 0.3, 0.6) == pytest.approx(ORACLE["analytic(2,0.3,0.6)"], rel=1e-14)

    def test_rejects_large_coefficient(self):
        with pytest.raises(DomainError):
            bnd.analytic_schwarz_pick_bound(1, 1.5, 0.5)


class TestClassicalBound:
    def test_endpoints(self):
        assert bnd.classical_harmonic_bound(3, 1.0) == pytest.approx(1.0, rel=1e-15)
        assert bnd.classical_harmonic_bound(3, 0.0) == 0.0

    def test_oracle(self):
        assert bnd.classical_harmonic_bound(1, 0.5) == pytest.approx(ORACLE["arctan(1,0.5)"], rel=1e-14)

    def test_radius_out_of_range(self):
        with pytest.raises(DomainError):
            bnd.classical_harmonic_bound(1, 1.01)


class TestImprovedBound:
    @pytest.mark.parametrize("p", [1, 2, 5])
    @pytest.mark.parametrize("r", [0.0, 0.3, 0.9])
    def test_collapses_at_max_aggregate(self, p, r):
        assert bnd.improved_harmonic_bound(p, FOUR_OVER_PI, r) == pytest.approx(
            bnd.classical_harmonic_bound(p, r), rel=1e-14, abs=1e-300
        )

    @pytest.mark.parametrize("s", [0.0, 0.5, 1.0])
    def test_unit_radius(self, s):
        assert bnd.improved_harmonic_bound(4, s, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_oracle(self):
        assert bnd.improved_harmonic_bound(2, 0.5, 0.8) == pytest.approx(ORACLE["improved(2,0.5,0.8)"], rel=1e-14)

    def test_array_matches_scalar(self):
        r = np.linspace(0, 1, 11)
        arr = bnd.improved_harmonic_bound_array(3, 0.7, r)
        assert np.allclose(arr, [bnd.improved_harmonic_bound(3, 0.7, x) for x in r], rtol=1e-15)

    def test_aggregate_cap(self):
        with pytest.raises(CoefficientBoundError):
            bnd.improved_harmonic_bound(1, 1.3, 0.5)

    def test_order_must_be_positive(self):
        with pytest.raises(DomainError):
            bnd.improved_harmonic_bound(0, 0.5, 0.5)


class TestMoebiusRatio:
    def test_zero(self):
        assert bnd.moebius_ratio(0.0, 0.37) == pytest.approx(0.37)

    def test_full(self):
        assert bnd.moebius_ratio(FOUR_OVER_PI, 0.37) == pytest.approx(1.0, rel=1e-15)


class TestCoefficientMargin:
    def test_identity(self):
        w = HarmonicMap.from_coeffs([0, 1], [0], 4)
        assert bnd.coefficient_margin(w, 1) == pytest.approx(FOUR_OVER_PI - 1)
        assert bnd.coefficient_margin(w, 2) == pytest.approx(FOUR_OVER_PI)


class TestBoundaryBound:
    def test_four_over_pi_gives_two_over_pi(self):
        assert bnd.boundary_lower_bound(1, FOUR_OVER_PI) == pytest.approx(2 / math.pi, abs=1e-15)

    def test_zero_aggregate(self):
        assert bnd.boundary_lower_bound(1, 0.0) == pytest.approx(4 / math.pi, rel=1e-15)

    @pytest.mark.parametrize("key,p,s", [("boundary(1,1)", 1, 1.0), ("boundary(2,1)", 2, 1.0), ("boundary(3,0.5)", 3, 0.5)])
    def test_oracle(self, key, p, s):
        assert bnd.boundary_lower_bound(p, s) == pytest.approx(ORACLE[key], rel=1e-14)


class TestLimitSlope:
    @pytest.mark.parametrize("key,p,s", [("slope(1,1)", 1, 1.0), ("slope(1,0)", 1, 0.0), ("slope(3,0.7)", 3, 0.7)])
    def test_oracle(self, key, p, s):
        assert bnd.limit_slope(p, s) == pytest.approx(ORACLE[key], rel=1e-14)

    @pytest.mark.parametrize("p", [1, 2, 4])
    @pytest.mark.parametrize("s", [0.0, 0.6, FOUR_OVER_PI])
    def test_numeric_route(self, p, s):
        assert bnd.limit_slope_numeric(p, s) == pytest.approx(bnd.limit_slope(p, s), rel=1e-6)

    def test_twice_boundary_bound(self):
        for p in range(1, 6):
            for s in (0.0, 0.3, 1.0):
                assert bnd.limit_slope(p, s) == pytest.approx(2 * bnd.boundary_lower_bound(p, s), rel=1e-15)

    def test_table_converges(self):
        table = bnd.limit_slope_table(2, 0.5)
        errs = [abs(q - bnd.limit_slope(2, 0.5)) for _, q in table]
        assert errs[-1] < errs[0]


class TestGeneralBound:
    @pytest.mark.parametrize("p", range(1, 6))
    @pytest.mark.parametrize("s", [0.0, 0.5, 1.0, FOUR_OVER_PI])
    def test_reduces_at_origin(self, p, s):
        assert abs(bnd.general_boundary_lower_bound(BoundQuery(p, s)) - bnd.boundary_lower_bound(p, s)) <= 1e-15

    def test_mobius_witness(self):
        s = bnd.transported_aggregate(4 / 3, 0.5, 1)
        assert s == pytest.approx(1.0, rel=1e-15)
        q = BoundQuery(1, s, a=0.5 + 0j, alpha=1 + 0j)
        assert bnd.general_boundary_lower_bound(q) == pytest.approx(ORACLE["general(a=0.5)"], rel=1e-14)

    def test_rotation(self):
        q = BoundQuery(1, 0.8, a=0j, alpha=-1 + 0j, beta=-1 + 0j)
        assert bnd.general_boundary_lower_bound(q) == pytest.approx(bnd.boundary_lower_bound(1, 0.8), rel=1e-15)

    def test_alpha_on_circle(self):
        with pytest.raises(DomainError):
            BoundQuery(1, 0.5, alpha=0.5 + 0j)

    def test_zero_inside_disk(self):
        with pytest.raises(DomainError):
            BoundQuery(1, 0.5, a=1.0 + 0j)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.floats(0, FOUR_OVER_PI), st.floats(0, 1))
def test_bound_ordering(p, s, r):
    improved = bnd.improved_harmonic_bound(p, s, r)
    classical = bnd.classical_harmonic_bound(p, r)
    assert 0 <= improved <= classical + 1e-15
    assert classical <= FOUR_OVER_PI * r**p + 1e-15


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.floats(0, FOUR_OVER_PI), st.floats(0, 0.999), st.floats(0.0005, 0.001))
def test_improved_monotone_in_radius(p, s, r, dr):
    assert bnd.improved_harmonic_bound(p, s, r) <= bnd.improved_harmonic_bound(p, s, min(1.0, r + dr)) + 1e-15


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.floats(0, FOUR_OVER_PI))
def test_boundary_bound_range(p, s):
    # decreasing in s from (2/pi)(p+1) down to (2/pi) p
    b = bnd.boundary_lower_bound(p, s)
    assert 2 * p / math.pi - 1e-14 <= b <= 2 * (p + 1) / math.pi + 1e-14
