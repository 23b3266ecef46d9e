"""Beam families: eigenspinors, closed forms, and their quadrature oracles."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spinbeam import (
    BeamSpec,
    Configuration,
    CylPoint,
    Finite,
    FiniteMethod,
    GaussianSpectrum,
    HalfInt,
    NonDiffractive,
    Spinor,
    eigenspinor_azimuthal,
    eigenspinor_radial,
    evaluate_finite,
    evaluate_nondiffractive,
    integrate,
    reconstruct_from_momentum,
    spectral_profile,
    weighted_spectral_profile,
)

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def as_vec(psi: Spinor) -> np.ndarray:
    return np.array([psi.up, psi.down], dtype=complex)


def pauli_dot(direction: np.ndarray) -> np.ndarray:
    return direction[0] * SIGMA_X + direction[1] * SIGMA_Y + direction[2] * SIGMA_Z


class TestEigenspinors:
    def test_radial_reference_values(self):
        s = eigenspinor_radial(1, 0.0)
        inv = 1.0 / math.sqrt(2.0)
        assert abs(s.up - inv) < 1e-15 and abs(s.down + 1j * inv) < 1e-15
        s = eigenspinor_radial(-1, 0.0)
        assert abs(s.up + 1j * inv) < 1e-15 and abs(s.down - inv) < 1e-15

    @given(st.floats(min_value=0.0, max_value=2.0 * math.pi))
    @settings(max_examples=40, deadline=None)
    def test_radial_orthogonal_unit(self, phi):
        a = eigenspinor_radial(1, phi)
        b = eigenspinor_radial(-1, phi)
        overlap = a.up.conjugate() * b.up + a.down.conjugate() * b.down
        assert abs(overlap) < 1e-15
        assert abs(a.norm_sq - 1.0) < 1e-14 and abs(b.norm_sq - 1.0) < 1e-14

    @given(st.floats(min_value=0.0, max_value=2.0 * math.pi),
           st.sampled_from([1, -1]))
    @settings(max_examples=40, deadline=None)
    def test_radial_is_sigma_v_eigenvector(self, phi, sigma):
        v = np.array([math.sin(phi), -math.cos(phi), 0.0])  # -e_phi
        psi = as_vec(eigenspinor_radial(sigma, phi))
        residual = pauli_dot(v) @ psi - sigma * psi
        assert np.max(np.abs(residual)) <= 1e-14

    @given(st.floats(min_value=0.0, max_value=2.0 * math.pi),
           st.floats(min_value=0.0, max_value=1.0),
           st.sampled_from([1, -1]))
    @settings(max_examples=60, deadline=None)
    def test_azimuthal_is_sigma_u_eigenvector(self, phi, w_rho, sigma):
        w_z = math.sqrt(max(0.0, 1.0 - w_rho * w_rho))
        u = np.array([-w_z * math.cos(phi), -w_z * math.sin(phi), w_rho])
        psi = as_vec(eigenspinor_azimuthal(sigma, phi, w_rho))
        residual = pauli_dot(u) @ psi - sigma * psi
        assert np.max(np.abs(residual)) <= 1e-14
        assert abs(abs(psi[0]) ** 2 + abs(psi[1]) ** 2 - 1.0) <= 1e-14

    def test_azimuthal_limits(self):
        s = eigenspinor_azimuthal(1, 0.0, 1.0)
        assert s.up == 1.0 and s.down == 0.0
        # at zero transverse fraction the weights equalize
        inv = 1.0 / math.sqrt(2.0)
        for phi in (0.0, 0.3, 4.0):
            s = eigenspinor_azimuthal(1, phi, 0.0)
            assert abs(s.up - inv) < 1e-15
            assert abs(s.down + cmath.exp(1j * phi) * inv) < 1e-15
            t = eigenspinor_azimuthal(-1, phi, 0.0)
            assert abs(t.up - cmath.exp(-1j * phi) * inv) < 1e-15
            assert abs(t.down - inv) < 1e-15

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            eigenspinor_radial(0, 0.0)
        with pytest.raises(ValueError):
            eigenspinor_azimuthal(2, 0.0, 0.5)
        with pytest.raises(ValueError):
            eigenspinor_azimuthal(1, 0.0, 1.5)


class TestSpecValidation:
    def test_j_must_be_half_odd(self, spectrum):
        with pytest.raises(ValueError):
            BeamSpec(Configuration.RADIAL, HalfInt(2), 1, 2.0, NonDiffractive(1.0))

    def test_sigma_values(self):
        with pytest.raises(ValueError):
            BeamSpec(Configuration.RADIAL, HalfInt(1), 0, 2.0, NonDiffractive(1.0))

    def test_kappa_window(self):
        with pytest.raises(ValueError):
            BeamSpec(Configuration.RADIAL, HalfInt(1), 1, 2.0, NonDiffractive(2.5))
        with pytest.raises(ValueError):
            BeamSpec(Configuration.RADIAL, HalfInt(1), 1, 2.0, NonDiffractive(0.0))

    def test_paraxial_needs_radial_and_wide_waist(self, spectrum):
        with pytest.raises(ValueError):
            BeamSpec(Configuration.AZIMUTHAL, HalfInt(1), 1, 100.0,
                     Finite(spectrum, FiniteMethod.PARAXIAL_CLOSED_FORM))
        with pytest.raises(ValueError):
            BeamSpec(Configuration.RADIAL, HalfInt(1), 1, 5.0,
                     Finite(spectrum, FiniteMethod.PARAXIAL_CLOSED_FORM))

    def test_quantum_numbers(self, nd_radial):
        assert nd_radial.m == 0
        assert nd_radial.order_minus == 0 and nd_radial.order_plus == 1
        assert abs(nd_radial.kz - math.sqrt(3.0)) < 1e-15

    def test_cylpoint_normalization(self):
        p = CylPoint(1.0, 2.0 * math.pi + 0.25, -1.0)
        assert abs(p.phi - 0.25) < 1e-12
        p = CylPoint(1.0, -0.25, 0.0)
        assert abs(p.phi - (2.0 * math.pi - 0.25)) < 1e-12
        with pytest.raises(ValueError):
            CylPoint(-0.1, 0.0, 0.0)

    def test_spectrum_validation(self):
        with pytest.raises(ValueError):
            GaussianSpectrum(0.0)

    def test_spectrum_norm_truncation(self):
        # truncating the normalization integral to [0, k] loses < 1e-12
        # of the norm once k * w0 >= 10
        w0, k = 1.0, 10.0
        spec = GaussianSpectrum(w0)
        res = integrate(lambda kap: np.square(np.abs(spec.amplitude(kap))) * kap,
                        0.0, k, abs_tol=1e-14, rel_tol=1e-13, initial_panels=8)
        assert abs(res.value - 1.0) < 1e-12


class TestNonDiffractive:
    def test_axis_values_j_half(self, nd_radial):
        kappa = nd_radial.kind.kappa
        pt = CylPoint(0.0, 1.1, 0.7)
        psi = evaluate_nondiffractive(nd_radial, pt)
        want_up = math.sqrt(kappa / (4.0 * math.pi)) * cmath.exp(1j * nd_radial.kz * 0.7)
        assert abs(psi.up - want_up) < 1e-14
        assert psi.down == 0.0

    def test_upper_component_dies_at_first_zero(self, nd_radial):
        r = 2.4048 / nd_radial.kind.kappa
        psi = evaluate_nondiffractive(nd_radial, CylPoint(r, 0.0, 0.0))
        amp = math.sqrt(nd_radial.kind.kappa / (4.0 * math.pi))
        assert abs(psi.up) < 5e-5 * amp
        assert abs(psi.down) > 0.1 * amp

    def test_probability_density_z_invariant(self, nd_radial, nd_azimuthal):
        for spec in (nd_radial, nd_azimuthal):
            for r in (0.4, 1.9, 3.3):
                rho0 = evaluate_nondiffractive(spec, CylPoint(r, 0.5, 0.0)).norm_sq
                for z in (1.0, 17.3, 240.0):
                    rho = evaluate_nondiffractive(spec, CylPoint(r, 0.5, z)).norm_sq
                    assert abs(rho - rho0) <= 1e-13 * rho0

    def test_azimuthal_weights(self, nd_azimuthal):
        kappa, k = nd_azimuthal.kind.kappa, nd_azimuthal.k
        pt = CylPoint(0.0, 0.0, 0.0)
        psi = evaluate_nondiffractive(nd_azimuthal, pt)
        want = math.sqrt(kappa / (4.0 * math.pi)) * math.sqrt(1.0 + kappa / k)
        assert abs(psi.up - want) < 1e-14
        assert psi.down == 0.0

    def test_rejects_finite_spec(self, finite_radial):
        with pytest.raises(ValueError):
            evaluate_nondiffractive(finite_radial, CylPoint(1.0, 0.0, 0.0))


class TestReconstructionOracle:
    def test_matches_closed_form_both_configurations(self, rng):
        for config in (Configuration.RADIAL, Configuration.AZIMUTHAL):
            for twice_j, sigma in [(1, 1), (-1, -1), (3, 1), (-3, -1), (1, -1)]:
                spec = BeamSpec(config, HalfInt(twice_j), sigma, 2.0, NonDiffractive(1.2))
                for _ in range(4):
                    pt = CylPoint(rng.uniform(0.0, 7.0), rng.uniform(0.0, 2.0 * math.pi),
                                  rng.uniform(-4.0, 4.0))
                    a = evaluate_nondiffractive(spec, pt)
                    b = reconstruct_from_momentum(spec, pt)
                    assert abs(a.up - b.up) < 1e-8
                    assert abs(a.down - b.down) < 1e-8

    def test_on_axis(self, nd_radial):
        a = evaluate_nondiffractive(nd_radial, CylPoint(0.0, 0.0, 0.0))
        b = reconstruct_from_momentum(nd_radial, CylPoint(0.0, 0.0, 0.0))
        assert abs(a.up - b.up) < 1e-12 and abs(b.down) < 1e-12

    def test_rejects_finite_spec(self, finite_radial):
        with pytest.raises(ValueError):
            reconstruct_from_momentum(finite_radial, CylPoint(1.0, 0.0, 0.0))


class TestSpectralProfile:
    def test_order_zero_at_origin_against_gaussian_integral(self, spectrum):
        # the spectral integral at r = z = 0 has the elementary value
        # sqrt(2) (1 - exp(-(k w0)^2 / 2)) / w0
        k = 100.0
        want = math.sqrt(2.0) * (1.0 - math.exp(-0.5 * (k * spectrum.w0) ** 2)) / spectrum.w0
        got = spectral_profile(0, 0.0, 0.0, spectrum, k, FiniteMethod.QUADRATURE)
        assert abs(got - want) < 1e-11
        closed = spectral_profile(0, 0.0, 0.0, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
        assert abs(closed - got) <= 1e-10 * abs(got)

    def test_vanishes_at_origin_for_positive_order(self, spectrum):
        for method in FiniteMethod:
            val = spectral_profile(1, 0.0, 0.3, spectrum, 100.0, method)
            assert abs(val) < 1e-12

    def test_closed_form_rejects_negative_order(self, spectrum):
        with pytest.raises(ValueError):
            spectral_profile(-1, 1.0, 0.0, spectrum, 100.0, FiniteMethod.PARAXIAL_CLOSED_FORM)

    def test_quadrature_reflects_negative_order(self, spectrum):
        plus = spectral_profile(1, 1.3, 0.4, spectrum, 100.0, FiniteMethod.QUADRATURE)
        minus = spectral_profile(-1, 1.3, 0.4, spectrum, 100.0, FiniteMethod.QUADRATURE)
        assert minus == -plus
        plus2 = spectral_profile(2, 1.3, 0.4, spectrum, 100.0, FiniteMethod.QUADRATURE)
        minus2 = spectral_profile(-2, 1.3, 0.4, spectrum, 100.0, FiniteMethod.QUADRATURE)
        assert minus2 == plus2

    def test_closed_form_vs_quadrature_at_waist(self, spectrum):
        k = 100.0
        cf = spectral_profile(1, 1.0, 0.0, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
        q_para = spectral_profile(1, 1.0, 0.0, spectrum, k, FiniteMethod.QUADRATURE,
                                  paraxial_phase=True)
        q_exact = spectral_profile(1, 1.0, 0.0, spectrum, k, FiniteMethod.QUADRATURE)
        assert abs(cf - q_para) <= 1e-8 * abs(cf)
        assert abs(cf - q_exact) <= 1e-4 * abs(cf)

    def test_closed_form_vs_quadrature_off_waist(self, spectrum):
        k = 100.0
        z0 = spectrum.rayleigh_range(k)
        for n in (0, 1, 2):
            for r, z in [(0.5, z0 / 4.0), (3.0, z0)]:
                cf = spectral_profile(n, r, z, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
                qd = spectral_profile(n, r, z, spectrum, k, FiniteMethod.QUADRATURE,
                                      paraxial_phase=True)
                assert abs(cf - qd) <= 1e-6 * abs(cf)

    def test_real_at_waist(self, spectrum):
        for method in FiniteMethod:
            for n in (0, 1, 2):
                val = spectral_profile(n, 1.7, 0.0, spectrum, 100.0, method)
                assert abs(val.imag) <= 1e-13 * max(abs(val), 1e-30)

    def test_exact_phase_differs_downstream(self, spectrum):
        # at one Rayleigh range the exact and paraxial phases must not agree
        # to the closed form's accuracy, otherwise the toggle is dead code
        k, z = 100.0, 100.0
        exact = spectral_profile(1, 1.0, z, spectrum, k, FiniteMethod.QUADRATURE)
        para = spectral_profile(1, 1.0, z, spectrum, k, FiniteMethod.QUADRATURE,
                                paraxial_phase=True)
        assert abs(exact - para) > 1e-7 * abs(para)

    def test_weighted_profile_reduces_to_plain(self, spectrum):
        # the two cone weights bracket the unweighted profile at the waist
        plain = spectral_profile(0, 0.5, 0.0, spectrum, 100.0, FiniteMethod.QUADRATURE)
        up = weighted_spectral_profile(0, 0.5, 0.0, spectrum, 100.0, +1)
        dn = weighted_spectral_profile(0, 0.5, 0.0, spectrum, 100.0, -1)
        assert dn.real < plain.real < up.real
        assert abs(up - plain) < 0.1 * abs(plain)

    def test_weighted_profile_validation(self, spectrum):
        with pytest.raises(ValueError):
            weighted_spectral_profile(0, 0.5, 0.0, spectrum, 100.0, 0)


class TestEvaluateFinite:
    def test_waist_center_j_half(self, finite_radial):
        psi = evaluate_finite(finite_radial, CylPoint(0.0, 0.9, 0.0))
        assert psi.down == 0.0
        assert psi.up.imag == 0.0 and psi.up.real > 0.0
        want = math.sqrt(2.0) / math.sqrt(4.0 * math.pi)
        assert abs(psi.up.real - want) < 1e-12

    def test_negative_j_reflection_mapping(self, spectrum, rng):
        # components of the j = -1/2 beam are the reflected profiles of the
        # j = +1/2 orders, with the sign carried by the odd order
        k = 100.0
        for sigma in (1, -1):
            spec = BeamSpec(Configuration.RADIAL, HalfInt(-1), sigma, k,
                            Finite(spectrum, FiniteMethod.PARAXIAL_CLOSED_FORM))
            for _ in range(5):
                r = rng.uniform(0.1, 4.0)
                z = rng.uniform(-50.0, 50.0)
                phi = rng.uniform(0.0, 2.0 * math.pi)
                psi = evaluate_finite(spec, CylPoint(r, phi, z))
                f0 = spectral_profile(0, r, z, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
                f1 = spectral_profile(1, r, z, spectrum, k, FiniteMethod.PARAXIAL_CLOSED_FORM)
                c = 1.0 / math.sqrt(4.0 * math.pi)
                want_up = sigma * (-f1) * cmath.exp(-1j * phi) * c
                want_dn = f0 * c
                assert abs(psi.up - want_up) <= 1e-13 * abs(f1)
                assert abs(psi.down - want_dn) <= 1e-13 * abs(f0)

    def test_negative_j_closed_form_matches_quadrature(self, spectrum, rng):
        k = 100.0
        cf_spec = BeamSpec(Configuration.RADIAL, HalfInt(-1), 1, k,
                           Finite(spectrum, FiniteMethod.PARAXIAL_CLOSED_FORM))
        qd_spec = BeamSpec(Configuration.RADIAL, HalfInt(-1), 1, k,
                           Finite(spectrum, FiniteMethod.QUADRATURE))
        for _ in range(10):
            pt = CylPoint(rng.uniform(0.05, 4.0), rng.uniform(0.0, 2.0 * math.pi), 0.0)
            a = evaluate_finite(cf_spec, pt)
            b = evaluate_finite(qd_spec, pt)
            scale = math.sqrt(b.norm_sq)
            assert abs(a.up - b.up) <= 1e-8 * scale
            assert abs(a.down - b.down) <= 1e-8 * scale

    def test_azimuthal_center(self, finite_azimuthal):
        psi = evaluate_finite(finite_azimuthal, CylPoint(0.0, 0.0, 0.2))
        assert psi.down == 0.0
        want = weighted_spectral_profile(0, 0.0, 0.2, finite_azimuthal.kind.spectrum,
                                         finite_azimuthal.k, +1)
        assert abs(psi.up - want / math.sqrt(4.0 * math.pi)) < 1e-14

    def test_rejects_nondiffractive_spec(self, nd_radial):
        with pytest.raises(ValueError):
            evaluate_finite(nd_radial, CylPoint(1.0, 0.0, 0.0))


class TestJzEigenstate:
    @pytest.mark.parametrize("family", ["nd_radial", "nd_azimuthal", "finite_radial",
                                        "finite_azimuthal"])
    def test_total_angular_momentum(self, family, request):
        spec = request.getfixturevalue(family)
        is_nd = isinstance(spec.kind, NonDiffractive)
        ev = evaluate_nondiffractive if is_nd else evaluate_finite
        pt = CylPoint(1.4, 0.8, 0.3)
        h = 0.01
        stencil = [ev(spec, CylPoint(pt.r, pt.phi + k * h, pt.z)) for k in (-2, -1, 0, 1, 2)]
        dup = (stencil[0].up - 8 * stencil[1].up + 8 * stencil[3].up - stencil[4].up) / (12 * h)
        ddn = (stencil[0].down - 8 * stencil[1].down + 8 * stencil[3].down
               - stencil[4].down) / (12 * h)
        jf = float(spec.j)
        res_up = -1j * dup + 0.5 * stencil[2].up - jf * stencil[2].up
        res_dn = -1j * ddn - 0.5 * stencil[2].down - jf * stencil[2].down
        norm = math.sqrt(stencil[2].norm_sq)
        assert math.sqrt(abs(res_up) ** 2 + abs(res_dn) ** 2) <= 1e-6 * norm

    def test_rotation_covariance(self, nd_radial):
        # advancing phi by delta multiplies the spinor by
        # e^{i j delta} diag(e^{-i delta/2}, e^{+i delta/2})
        delta = 0.613
        pt = CylPoint(1.2, 0.4, 0.9)
        psi = evaluate_nondiffractive(nd_radial, pt)
        rot = evaluate_nondiffractive(nd_radial, CylPoint(pt.r, pt.phi + delta, pt.z))
        jf = float(nd_radial.j)
        want_up = cmath.exp(1j * (jf - 0.5) * delta) * psi.up
        want_dn = cmath.exp(1j * (jf + 0.5) * delta) * psi.down
        assert abs(rot.up - want_up) < 1e-13
        assert abs(rot.down - want_dn) < 1e-13
