import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_schwarz import harmonic as hm
from harmonic_schwarz.errors import CanonicalizationError, CriticalPointError, NotAZeroError, NotSensePreservingError
from harmonic_schwarz.harmonic import GridSpec, HarmonicMap

Z = 0.3 + 0.4j


def hmap(h, g, order=8):
    return HarmonicMap.from_coeffs(h, g, order)


class TestEvaluate:
    def test_analytic(self):
        assert hm.evaluate(hmap([0, 1], [0]), Z) == pytest.approx(Z)

    def test_pure_conjugate(self):
        assert hm.evaluate(hmap([0], [0, 1]), Z) == pytest.approx(Z.conjugate())

    def test_hand_value(self):
        assert hm.evaluate(hmap([0, 0, 1], [0, 0, 0.5]), 0.5) == pytest.approx(0.375)

    def test_grid_shape(self):
        w = hmap([0, 1, 0.2], [0, 0, 0.1])
        z = GridSpec(4, 8).nodes()
        assert w(z).shape == (4, 8)


class TestDerivatives:
    def test_wirtinger_identity(self):
        assert hm.wirtinger(hmap([0, 1], [0]), Z) == pytest.approx((1, 0))

    def test_wirtinger_square(self):
        wz, wzb = hm.wirtinger(hmap([0, 0, 1], [0, 0, 0.5]), 1.0)
        assert (wz, wzb) == pytest.approx((2, 1))

    def test_wirtinger_against_finite_differences(self):
        w = hmap([0, 1, 0.3j, -0.1], [0, 0, 0.2, 0.05j])
        z, h = 0.2 - 0.3j, 1e-6
        dx = (w(z + h) - w(z - h)) / (2 * h)
        dy = (w(z + 1j * h) - w(z - 1j * h)) / (2 * h)
        wz, wzb = hm.wirtinger(w, z)
        assert wz == pytest.approx(0.5 * (dx - 1j * dy), abs=1e-8)
        assert wzb == pytest.approx(0.5 * (dx + 1j * dy), abs=1e-8)

    def test_extremes_identity(self):
        assert hm.directional_extremes(hmap([0, 1], [0]), Z) == pytest.approx((1, 1))

    def test_extremes_affine(self):
        assert hm.directional_extremes(hmap([0, 1], [0, 0.5]), Z) == pytest.approx((1.5, 0.5))

    def test_extremes_bracket_every_direction(self):
        w = hmap([0, 1, 0.3j, -0.1], [0, 0, 0.2, 0.05j])
        z = 0.1 + 0.2j
        big, small = hm.directional_extremes(w, z)
        t = np.linspace(0, 2 * np.pi, 720, endpoint=False)
        mags = np.abs(hm.directional_derivative(w, z, t))
        assert np.max(mags) <= big + 1e-12 and np.min(mags) >= small - 1e-12
        assert np.max(mags) == pytest.approx(big, rel=1e-4)

    def test_jacobian(self):
        assert hm.jacobian(hmap([0, 1], [0]), Z) == pytest.approx(1)
        assert hm.jacobian(hmap([0, 1], [0, 1]), Z) == pytest.approx(0)

    def test_jacobian_is_product_of_extremes(self):
        w = hmap([0, 1, 0.3j], [0, 0, 0.2])
        big, small = hm.directional_extremes(w, Z)
        assert hm.jacobian(w, Z) == pytest.approx(big * small)

    def test_dilatation(self):
        assert hm.dilatation(hmap([0, 1], [0, 0, 0.5]), Z) == pytest.approx(Z)
        assert hm.dilatation(hmap([0, 1], [0]), Z) == 0

    def test_dilatation_critical_point(self):
        with pytest.raises(CriticalPointError):
            hm.dilatation(hmap([0, 0, 1], [0]), 0.0)


class TestZeroOrder:
    def test_read_off(self):
        zo = hm.zero_order_at(hmap([0, 0, 1], [0, 0, 0.5]))
        assert (zo.p, zo.a_p, zo.b_p) == (2, 1, 0.5)
        assert zo.lambda_p == pytest.approx(1.5)

    def test_higher_coanalytic_order(self):
        zo = hm.zero_order_at(hmap([0, 0, 0, 1], [0, 0, 0, 0, 0, 1]))
        assert (zo.p, zo.a_p, zo.b_p) == (3, 1, 0)

    def test_off_center(self):
        # h = (z-0.2)^2, g = 0.1 (z-0.2)^3
        h = [0.04, -0.4, 1]
        g = [-0.0008, 0.012, -0.06, 0.1]
        zo = hm.zero_order_at(hmap(h, g), 0.2)
        assert zo.p == 2
        # oracle: second derivative of h by central differences at 0.2
        hs = np.polynomial.Polynomial(h)
        d = 1e-4
        second = (hs(0.2 + d) - 2 * hs(0.2) + hs(0.2 - d)) / d**2
        assert zo.a_p == pytest.approx(second / 2, abs=1e-6)
        assert abs(zo.b_p) < 1e-12

    def test_not_a_zero(self):
        with pytest.raises(NotAZeroError):
            hm.zero_order_at(hmap([0.1, 1], [0]))

    def test_dominance_required(self):
        with pytest.raises(NotSensePreservingError):
            hm.zero_order_at(hmap([0, 0.5], [0, 1]))
        with pytest.raises(NotSensePreservingError):
            hm.zero_order_at(hmap([0, 0, 1], [0, 0.1]))


class TestSensePreservation:
    def test_identity(self):
        rep = hm.is_sense_preserving(hmap([0, 1], [0]))
        assert rep.sense_preserving and rep.min_jacobian == pytest.approx(1)

    @pytest.mark.parametrize("rmax,expected", [(0.49, True), (0.6, False)])
    def test_dilatation_disk(self, rmax, expected):
        # h = z, g = z^2 has |omega| = |2z|, so J > 0 exactly for |z| < 1/2
        w = hmap([0, 1], [0, 0, 1])
        grid = GridSpec(32, 64, rmax)
        assert bool(hm.is_sense_preserving(w, grid)) is expected
        z = grid.nodes()
        assert bool(np.all(np.abs(2 * z) < 1)) is expected


class TestCanonical:
    def test_moves_constant(self):
        w = hmap([0.1, 1], [0.2j, 0.3])
        c = hm.canonical(w)
        assert hm.is_canonical(c)
        z = np.array([0.1, -0.3j, 0.5 + 0.2j])
        assert np.allclose(c(z), w(z))

    def test_require(self):
        with pytest.raises(CanonicalizationError):
            hm.require_canonical(hmap([0, 1], [0.1, 0.2]))


class TestBoundaryMaximum:
    def test_rotation(self):
        w = hmap([0, 0.5], [0, 0, 0.25])
        m, t = hm.boundary_maximum(w)
        zs = np.exp(1j * np.linspace(0, 2 * np.pi, 20001))
        assert m == pytest.approx(np.max(np.abs(w(zs))), rel=1e-8)
        assert abs(w(np.exp(1j * t))) == pytest.approx(m, rel=1e-14)


class TestGridSpec:
    def test_nodes_exclude_origin(self):
        g = GridSpec(4, 8, 0.8)
        r, t = g.polar()
        assert r[0] == pytest.approx(0.2) and r[-1] == pytest.approx(0.8)
        assert g.size == 32

    def test_json_round_trip(self, tmp_path):
        w = hmap([0, 1, 0.3j], [0, 0, 0.2])
        w.save(tmp_path / "w.json")
        v = HarmonicMap.load(tmp_path / "w.json")
        assert np.array_equal(v.h.coeffs, w.h.coeffs) and np.array_equal(v.g.coeffs, w.g.coeffs)


coeffs = st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, st.floats(0, 0.9), st.floats(0, 2 * math.pi))
def test_jacobian_equals_extremes_product(h, g, r, t):
    w = hmap([0] + h, [0] + g)
    z = r * np.exp(1j * t)
    big, small = hm.directional_extremes(w, z)
    assert abs(hm.jacobian(w, z)) == pytest.approx(big * small, rel=1e-9, abs=1e-12)
    assert big >= small >= 0
