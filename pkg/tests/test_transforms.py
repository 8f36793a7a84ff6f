import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_schwarz import series as ser
from harmonic_schwarz import transforms as tr
from harmonic_schwarz.errors import CanonicalizationError, DomainError, NormalizationError
from harmonic_schwarz.harmonic import HarmonicMap, zero_order_at
from harmonic_schwarz.transforms import MobiusAutomorphism


class TestMobius:
    def test_swaps_zero_and_a(self):
        m = MobiusAutomorphism(0.3 - 0.4j)
        assert abs(m(0.3 - 0.4j)) < 1e-16
        assert m(0) == pytest.approx(0.3 - 0.4j)

    def test_involution(self):
        m = MobiusAutomorphism(0.6j)
        z = np.array([0.1, -0.5 + 0.2j, 0.9j])
        assert np.allclose(m(m(z)), z)

    def test_derivative_at_origin(self):
        assert tr.mobius_derivative(MobiusAutomorphism(0.5), 0) == pytest.approx(-0.75)

    def test_derivative_at_zero_a(self):
        m = MobiusAutomorphism(0)
        assert np.allclose(m.derivative(np.array([0.2, 0.7j])), -1)

    def test_derivative_finite_differences(self):
        m = MobiusAutomorphism(0.4 + 0.2j)
        z, h = 0.1 - 0.3j, 1e-6
        assert m.derivative(z) == pytest.approx((m(z + h) - m(z - h)) / (2 * h), rel=1e-8)

    def test_series_matches_values(self):
        m = MobiusAutomorphism(0.5 - 0.2j)
        s = m.series(60)
        for z in (0.3, -0.2j, 0.4 + 0.1j):
            assert s(z) == pytest.approx(m(z), abs=1e-14)

    def test_maps_circle_to_circle(self):
        m = MobiusAutomorphism(0.8)
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 50))
        assert np.allclose(np.abs(m(z)), 1)

    def test_rejects_boundary_point(self):
        with pytest.raises(DomainError):
            MobiusAutomorphism(1.0)


class TestPrecompose:
    def test_origin_is_reflection(self):
        w = HarmonicMap.from_coeffs([0, 1, 0.5, 0.25], [0, 0, 0.1, -0.2j], 6)
        W = tr.precompose_mobius(w, 0j)
        signs = (-1.0) ** np.arange(7)
        assert np.allclose(W.h.coeffs, w.h.coeffs * signs)
        assert np.allclose(W.g.coeffs, w.g.coeffs * signs)

    def test_pointwise(self):
        w = HarmonicMap.from_coeffs([0.1, 1, 0.5j], [0, 0.2, 0.1], 8)
        a = 0.3 + 0.2j
        W = tr.precompose_mobius(w, a, 80)
        m = MobiusAutomorphism(a)
        for z in (0.1, 0.4j, -0.3 + 0.2j):
            assert W(z) == pytest.approx(w(m(z)), abs=1e-12)

    def test_moves_zero_to_origin(self):
        a = -0.4 + 0.3j
        m = MobiusAutomorphism(a)
        # w = phi_a^2 + conj(0.3 phi_a^2) vanishes to order 2 at a
        base = HarmonicMap.from_coeffs([0, 0, 1], [0, 0, 0.3], 2)
        w = tr.precompose_mobius(base, a, 80)
        back = tr.precompose_mobius(w, a, 80)
        zo = zero_order_at(back, 0)
        assert zo.p == 2
        assert zo.a_p == pytest.approx(1, abs=1e-12) and zo.b_p == pytest.approx(0.3, abs=1e-12)
        assert m(a) == 0


class TestProjection:
    def test_theta_zero(self):
        w = HarmonicMap.from_coeffs([0, 1, 0.3j], [0, 0, 0.2], 4)
        f = tr.projection(w, 0.0)
        assert np.allclose(f.coeffs, (w.h + w.g).coeffs)

    def test_quarter_turn(self):
        w = HarmonicMap.from_coeffs([0, 0, 1], [0, 0, 0.5], 4)
        f = tr.projection(w, math.pi / 2)
        assert np.allclose(f.coeffs, [0, 0, -0.5j, 0, 0])
        rng = np.random.default_rng(5)
        z = 0.9 * np.sqrt(rng.uniform(size=50)) * np.exp(2j * np.pi * rng.uniform(size=50))
        assert np.max(np.abs(f(z).real - (-1j * w(z)).real)) < 1e-12

    def test_requires_canonical(self):
        with pytest.raises(CanonicalizationError):
            tr.projection(HarmonicMap.from_coeffs([0, 1], [0.1, 0]), 0.0)


class TestStripToDisk:
    def test_linear(self):
        d = tr.strip_to_disk(ser.polynomial([0, 1], 16))
        assert d.derivative_at(1) == pytest.approx(math.pi / 4, rel=1e-15)

    def test_cubic(self):
        d = tr.strip_to_disk(ser.polynomial([0, 0, 0, 1], 16))
        assert abs(d.coeffs[1]) == 0 and abs(d.coeffs[2]) == 0
        assert d.derivative_at(3) / 6 == pytest.approx(math.pi / 4, rel=1e-15)

    def test_values(self):
        f = ser.polynomial([0, 0.6, 0.2j], 64)
        d = tr.strip_to_disk(f)
        z = 0.5 - 0.3j
        assert d(z) == pytest.approx(cmath.tan(math.pi * f(z) / 4), abs=1e-13)

    def test_normalization(self):
        with pytest.raises(NormalizationError):
            tr.strip_to_disk(ser.polynomial([0.1, 1], 8))

    def test_cayley(self):
        f = np.array([0.3, -0.9 + 2j, 0.5j])
        assert np.allclose(tr.cayley_of_strip(f), 1j * np.tan(np.pi * f / 4))


class TestTangentHalf:
    def test_real_equality(self):
        lhs, rhs = tr.tangent_half_inequality(1.1)
        assert lhs == pytest.approx(math.tan(0.55)) and rhs == pytest.approx(lhs)

    def test_imaginary(self):
        lhs, rhs = tr.tangent_half_inequality(0.7j)
        assert lhs == 0 and rhs > 0

    def test_domain(self):
        with pytest.raises(DomainError):
            tr.tangent_half_inequality(2.0)


class TestOrderForTail:
    def test_tail_below_eps(self):
        n = tr.order_for_tail(0.8, base=3)
        assert 0.8 ** (n + 1) * (n + 2) < 1e-15


@settings(max_examples=100, deadline=None)
@given(st.floats(-math.pi / 2, math.pi / 2), st.floats(-5, 5))
def test_tangent_half_holds(x, y):
    lhs, rhs = tr.tangent_half_inequality(complex(x, y))
    assert lhs <= rhs * (1 + 1e-12) + 1e-15


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=0.85, allow_nan=False), st.floats(0, 0.9))
def test_mobius_derivative_modulus(a, r):
    # |phi_a'(z)| = (1 - |phi_a(z)|^2) / (1 - |z|^2)
    m = MobiusAutomorphism(a)
    z = r * cmath.exp(0.3j)
    assert abs(m.derivative(z)) == pytest.approx((1 - abs(m(z)) ** 2) / (1 - r * r), rel=1e-9)
