"""Tests for the diagonal-operator models, orbits, and resolvent envelopes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ingham_rates.quadrature import ExponentialDecay, integrate_semi_infinite
from ingham_rates.semigroup_lab import (
    DiagonalOperator,
    ORBIT_KINDS,
    Scenario,
    boundary_function,
    cluster_infinity,
    cluster_zero,
    mixed_cluster,
    mode_weights,
    orbit_argmax,
    orbit_norm,
    orbit_values,
    resolvent_envelope_decay,
    resolvent_envelope_growth,
    resolvent_norm,
    single_mode,
)


class TestConstruction:
    def test_eigenvalues_must_be_strictly_stable(self):
        with pytest.raises(ValueError, match="negative real part"):
            DiagonalOperator(np.array([-1.0 + 1j, 0.5 + 2j]))
        with pytest.raises(ValueError, match="negative real part"):
            single_mode(1j)

    def test_cluster_parameter_validation(self):
        with pytest.raises(ValueError, match="positive"):
            cluster_infinity(0.0, 10)
        with pytest.raises(ValueError, match="exceed 1"):
            cluster_zero(1.0, 10)
        with pytest.raises(ValueError, match="at least 1"):
            cluster_infinity(1.0, 0)

    def test_cluster_infinity_eigenvalue_formula(self):
        op = cluster_infinity(0.5, 5)
        n = np.arange(1, 6)
        assert np.allclose(op.eigenvalues, -n ** -0.5 + 1j * n)

    def test_cluster_zero_eigenvalue_formula(self):
        op = cluster_zero(2.0, 4)
        n = np.arange(1, 5)
        assert np.allclose(op.eigenvalues, -n ** -2.0 + 1j / n)

    def test_mixed_cluster_concatenates_families(self):
        op = mixed_cluster(1.0, 2.0, 3, 4)
        assert op.eigenvalues.size == 7
        assert np.allclose(op.eigenvalues[:3], cluster_infinity(1.0, 3).eigenvalues)
        assert np.allclose(op.eigenvalues[3:], cluster_zero(2.0, 4).eigenvalues)
        # per-family bookkeeping survives the concatenation
        assert set(op.family_size.tolist()) == {3, 4}

    def test_scenario_validation(self):
        op = single_mode(-1.0)
        with pytest.raises(ValueError, match="orbit"):
            Scenario(op, "sideways")
        with pytest.raises(ValueError, match="omega"):
            Scenario(op, "ar_omega", omega=0.0)
        with pytest.raises(ValueError):
            Scenario(op, "vector", x=np.ones(3))  # length mismatch

    def test_orbit_kind_listing(self):
        assert ORBIT_KINDS == ("ainv", "ar_omega", "ar_omega_sq", "vector")


class TestOrbits:
    def test_inverse_orbit_at_time_zero(self):
        sc = Scenario(single_mode(-1.0), "ainv")
        assert orbit_norm(sc, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_inverse_orbit_single_mode_closed_form(self):
        sc = Scenario(single_mode(-1.0 + 1j), "ainv")
        assert orbit_norm(sc, 1.0) == pytest.approx(
            math.exp(-1.0) / math.sqrt(2.0), rel=1e-12)

    def test_cluster_infinity_maximiser_near_n_equals_t(self):
        sc = Scenario(cluster_infinity(1.0, 10 ** 4), "ainv")
        measured = orbit_norm(sc, 100.0)
        assert measured == pytest.approx(math.exp(-1.0) / 100.0, rel=0.01)
        _, idx, size = orbit_argmax(sc, 100.0)
        assert size == 10 ** 4
        assert 80 <= idx <= 125

    def test_resolvent_smoothed_orbit_formulas(self):
        lam = -0.5 + 2.0j
        op = single_mode(lam)
        t = 1.7
        expected = abs(lam) * math.exp(lam.real * t) / abs(1.0 - lam)
        assert orbit_norm(Scenario(op, "ar_omega"), t) == pytest.approx(
            expected, rel=1e-12)
        expected_sq = abs(lam) * math.exp(lam.real * t) / abs(1.0 - lam) ** 2
        assert orbit_norm(Scenario(op, "ar_omega_sq"), t) == pytest.approx(
            expected_sq, rel=1e-12)

    def test_vector_orbit_uses_supplied_amplitudes(self):
        op = cluster_zero(2.0, 3)
        x = np.array([0.0, 2.0, 0.0])
        sc = Scenario(op, "vector", x=x)
        lam = op.eigenvalues[1]
        assert orbit_norm(sc, 3.0) == pytest.approx(
            2.0 * math.exp(lam.real * 3.0), rel=1e-12)

    def test_contraction_never_exceeds_initial_norm(self):
        for sc in (Scenario(cluster_infinity(1.0, 50), "ainv"),
                   Scenario(cluster_zero(2.0, 50), "ar_omega"),
                   Scenario(mixed_cluster(1.0, 2.0, 30, 30), "ar_omega_sq")):
            t = np.linspace(0.0, 30.0, 40)
            vals = orbit_norm(sc, t)
            assert np.all(vals <= vals[0] * (1.0 + 1e-12))

    def test_orbit_norm_is_vectorised(self):
        sc = Scenario(cluster_infinity(1.0, 20), "ainv")
        t = np.array([0.0, 1.0, 5.0])
        batched = orbit_norm(sc, t)
        assert batched.shape == (3,)
        for i, ti in enumerate(t):
            assert batched[i] == pytest.approx(orbit_norm(sc, float(ti)))

    @given(st.floats(min_value=0.0, max_value=20.0),
           st.floats(min_value=0.0, max_value=20.0))
    @settings(max_examples=30, deadline=None)
    def test_semigroup_property_componentwise(self, t, s):
        sc = Scenario(cluster_zero(2.0, 8), "vector")
        both = orbit_values(sc, t + s)
        left = orbit_values(sc, t)
        # divide out the weights once: e^{lam(t+s)} w = e^{lam t} e^{lam s} w
        factor = np.exp(sc.operator.eigenvalues * s)
        assert np.allclose(both, left * factor, rtol=1e-12, atol=1e-300)

    def test_truncation_stability_of_cluster_norms(self):
        # doubling the mode count changes the norm by < 1% on the safe range
        for family, kind in ((cluster_infinity, "ainv"), (cluster_zero, "ar_omega")):
            base = Scenario(family(1.0 if family is cluster_infinity else 2.0, 400), kind)
            double = Scenario(family(1.0 if family is cluster_infinity else 2.0, 800), kind)
            for t in (5.0, 20.0, 100.0):
                a = orbit_norm(base, t)
                b = orbit_norm(double, t)
                assert abs(a - b) <= 0.01 * max(a, b)


class TestResolvent:
    def test_single_mode_distances(self):
        op = single_mode(-1.0 + 1j)
        assert resolvent_norm(op, 1.0) == pytest.approx(1.0, rel=1e-14)
        assert resolvent_norm(op, 0.0) == pytest.approx(1.0 / math.sqrt(2.0),
                                                        rel=1e-14)

    def test_cluster_infinity_peak_heights(self):
        op = cluster_infinity(1.0, 100)
        for n in (1, 7, 50):
            assert resolvent_norm(op, float(n)) == pytest.approx(float(n),
                                                                 rel=1e-12)

    def test_equals_reciprocal_spectral_distance(self):
        op = mixed_cluster(0.7, 1.5, 40, 40)
        lam = op.eigenvalues
        for s in (-3.2, 0.11, 4.9, 60.0):
            exact = 1.0 / np.min(np.abs(1j * s - lam))
            assert resolvent_norm(op, s) == pytest.approx(exact, rel=1e-12)


class TestEnvelopes:
    def test_growth_envelope_single_mode_is_clamped_at_one(self):
        M = resolvent_envelope_growth(single_mode(-1.0 + 1j))
        assert float(M(1.0)) == pytest.approx(1.0)
        # resolvent of a single damped mode never exceeds 1/|Re lambda|
        assert float(M(50.0)) <= 1.0 + 1e-12

    def test_growth_envelope_tracks_floor_for_cluster(self):
        op = cluster_infinity(1.0, 200)
        M = resolvent_envelope_growth(op)
        for R in (3.0, 17.0, 99.5, 200.0):
            assert float(M(R)) == pytest.approx(math.floor(R), rel=0.02)

    def test_growth_envelope_at_zero_is_running_max_start(self):
        op = cluster_infinity(1.0, 10)
        M = resolvent_envelope_growth(op)
        assert float(M(0.0)) == pytest.approx(
            max(1.0, resolvent_norm(op, 0.0)), rel=1e-9)

    def test_growth_envelope_dominates_and_is_monotone(self):
        op = mixed_cluster(1.0, 2.0, 100, 100)
        M = resolvent_envelope_growth(op)
        s = np.linspace(0.0, 120.0, 1500)
        vals = M(s)
        assert np.all(np.diff(vals) >= -1e-12)
        norms = np.array([resolvent_norm(op, float(v)) for v in s])
        assert np.all(vals >= norms * (1.0 - 1e-9))
        # eigenvalue ordinates are the peaks; they must be dominated exactly
        for lam in op.eigenvalues[:20]:
            assert float(M(abs(lam.imag))) >= resolvent_norm(op, lam.imag) - 1e-9

    def test_growth_envelope_s_min_ignores_inner_peaks(self):
        # restricting to |s| >= 1 must not see the huge peaks near s = 0
        op = mixed_cluster(1.0, 2.0, 50, 500)
        full = resolvent_envelope_growth(op)
        outer = resolvent_envelope_growth(op, s_min=1.0)
        assert float(full(0.5)) > 100.0
        assert float(outer(0.5)) <= float(outer(1.5)) + 1e-12
        assert float(outer(0.0)) < 10.0

    def test_decay_envelope_power_law_cluster(self):
        # peaks at s = 1/n have height n^beta once n is large enough that a
        # mode's own damping distance beats the spacing to its neighbour
        # (for small n the neighbour is closer and the peak is higher)
        op = cluster_zero(2.0, 1000)
        m = resolvent_envelope_decay(op)
        ns = np.arange(4, 41)
        vals = np.array([float(m(1.0 / n)) for n in ns])
        assert np.all(vals >= ns ** 2.0 - 1e-9)
        assert np.all(vals <= 1.2 * ns ** 2.0)
        slope = np.polyfit(np.log(1.0 / ns), np.log(vals), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.05)

    def test_decay_envelope_reciprocal_clamp(self):
        m = resolvent_envelope_decay(single_mode(-1.0))
        r = np.geomspace(1e-3, 1.0, 100)
        vals = m(r)
        assert np.allclose(vals, np.maximum(1.0, 1.0 / r), rtol=1e-12)

    def test_decay_envelope_non_increasing_and_dominating(self):
        # domination is guaranteed at supplied grid points, so probe there
        op = cluster_zero(1.5, 300)
        r = np.geomspace(2e-3, 1.0, 800)
        m = resolvent_envelope_decay(op, r_grid=r)
        vals = m(r)
        assert np.all(np.diff(vals) <= 1e-9 * vals[:-1])
        norms = np.array([resolvent_norm(op, float(v)) for v in r])
        assert np.all(vals >= norms * (1.0 - 1e-9))
        assert np.all(vals >= 1.0 / r - 1e-9)


class TestBoundaryFunction:
    def test_inverse_orbit_values_at_origin(self):
        # F is the transform int_0^inf e^{-ist} f(t) dt of the damped orbit
        # f(t) = e^{lam t} x / lam, so for lam = -1, x = 1:
        # F(0) = (1/lam)/( -lam) ... componentwise w/(is - lam) with w = x/lam
        sc = Scenario(single_mode(-1.0), "ainv")
        assert boundary_function(sc, 0.0, 0)[0] == pytest.approx(-1.0, rel=1e-14)
        assert boundary_function(sc, 0.0, 1)[0] == pytest.approx(1j, rel=1e-14)

    def test_matches_laplace_transform_quadrature(self):
        # dual route: closed form vs direct transform of the orbit
        lam = -0.8 + 1.5j
        sc = Scenario(single_mode(lam), "ar_omega", omega=1.0)
        for s in (0.0, 0.7, -2.3):
            closed = boundary_function(sc, s, 0)[0]
            res = integrate_semi_infinite(
                lambda t: np.exp((-1j * s + lam) * t), 0.0,
                ExponentialDecay(-lam.real))
            direct = res.value * mode_weights(sc)[0]
            assert closed == pytest.approx(direct, abs=1e-9)

    def test_derivative_order_scaling(self):
        # each derivative multiplies by (-i) j / (is - lam)
        sc = Scenario(single_mode(-2.0 + 1j), "vector")
        lam = -2.0 + 1j
        s = 0.4
        f0 = boundary_function(sc, s, 0)[0]
        f1 = boundary_function(sc, s, 1)[0]
        f2 = boundary_function(sc, s, 2)[0]
        assert f1 == pytest.approx(f0 * (-1j) / (1j * s - lam), rel=1e-12)
        assert f2 == pytest.approx(f1 * (-1j) * 2.0 / (1j * s - lam), rel=1e-12)

    def test_cluster_zero_derivative_growth_bound(self):
        # |F^(j)(s)| <= C j! |s| m(|s|)^{j+1} near s = 0 for the
        # resolvent-smoothed orbit over the zero-cluster model
        op = cluster_zero(2.0, 200)
        sc = Scenario(op, "ar_omega")
        m = resolvent_envelope_decay(op)
        for s in (0.05, 0.2, 0.9):
            env = float(m(abs(s)))
            for j in (0, 1, 2):
                norm = np.max(np.abs(boundary_function(sc, s, j)))
                bound = math.factorial(j) * abs(s) * env ** (j + 1)
                assert norm <= 4.0 * bound


class TestArgmax:
    def test_reports_family_bookkeeping(self):
        sc = Scenario(mixed_cluster(1.0, 2.0, 100, 50), "ainv")
        value, idx, size = orbit_argmax(sc, 10.0)
        assert value == pytest.approx(float(orbit_norm(sc, 10.0)))
        assert size in (100, 50)
        assert 1 <= idx <= size
