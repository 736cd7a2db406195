from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import quad, simpson
from scipy.optimize import brentq

from errors import InvalidInputError
from evaluation import IntensityProfile, fringe_spacing, fringe_visibility
from optics import (
    FresnelKernel,
    SlitModulation,
    SpectralProfile,
    coherence_factor,
    detector_average,
    intensity_delta_slits,
    intensity_delta_slits_band_averaged,
    intensity_finite_slits,
    intensity_finite_slits_band_averaged,
    optical_profile,
    phenomenological_intensity,
    power_spectrum_before_slits,
    power_spectrum_delta_slits,
    sinc,
    slit_modulation,
)

LAM = 18.45e-10


def _random_pairs(seed=7, n=100, half_width=400e-6):
    rng = np.random.default_rng(seed)
    return rng.uniform(-half_width, half_width, size=(2, n))


# Spectral value types

def test_uniform_band_integrates_to_one(geometry):
    band = SpectralProfile.from_geometry(geometry)
    nodes = band.quadrature_nodes(129)
    assert simpson(band.density(nodes), x=nodes) == pytest.approx(1.0, rel=1e-12)
    assert band.density(geometry.lambda_db + 2e-10) == 0.0
    assert band.density(geometry.lambda_db) == pytest.approx(1 / geometry.delta_lambda)


def test_monochromatic_density():
    mono = SpectralProfile.monochromatic(LAM)
    assert mono.density(LAM) == 1.0
    assert mono.density(1.9e-9) == 0.0
    assert mono.quadrature_nodes().tolist() == [LAM]


def test_spectral_profile_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        SpectralProfile("gaussian", LAM)
    with pytest.raises(InvalidInputError):
        SpectralProfile.uniform_band(LAM, 0.0)
    with pytest.raises(InvalidInputError):
        SpectralProfile.uniform_band(LAM, 1e-10).quadrature_nodes(128)


def test_hat_pair_transmission(geometry):
    modulation = slit_modulation(geometry, "hat-pair")
    left, right = modulation.centers
    assert modulation.separation == pytest.approx(126.3e-6)
    assert modulation.transmission([left, right, 0.0]).tolist() == [1.0, 1.0, 0.0]
    with pytest.raises(InvalidInputError):
        slit_modulation(geometry, "delta-pair").transmission(0.0)
    with pytest.raises(InvalidInputError):
        SlitModulation("hat-pair", (1e-5, 1e-5), (1e-6, 1e-6))


def test_fresnel_kernel_is_pure_phase():
    kernel = FresnelKernel(5.0, 2 * np.pi / LAM)
    x1, x2 = _random_pairs()
    np.testing.assert_allclose(np.abs(kernel(x1, x2)), 1.0, rtol=1e-14)


def test_fresnel_cross_phase(geometry):
    kernel = FresnelKernel(geometry.z, 2 * np.pi / LAM)
    x1, x2 = _random_pairs(seed=3)
    np.testing.assert_allclose(kernel.cross_phase(x1, x2), kernel(x1) * np.conj(kernel(x2)), rtol=1e-9)
    diagonal = kernel.cross_phase(x1, x1)
    assert np.all(diagonal == 1.0 + 0.0j)


# Source coherence

def test_coherence_factor_values(geometry):
    assert coherence_factor(0.0, LAM, geometry) == 1.0
    assert coherence_factor(230.6e-6, LAM, geometry) == pytest.approx(2 / np.pi, abs=1e-3)
    x = np.linspace(-300e-6, 300e-6, 61)
    np.testing.assert_array_equal(coherence_factor(x, LAM, geometry), coherence_factor(-x, LAM, geometry))
    assert np.all(np.abs(coherence_factor(x, LAM, geometry)) <= 1.0)


def test_coherence_factor_first_zeros(geometry):
    root = brentq(lambda dx: coherence_factor(dx, LAM, geometry), 400e-6, 500e-6, xtol=1e-12)
    assert root == pytest.approx(461e-6, abs=1e-6)
    assert coherence_factor(-root, LAM, geometry) == pytest.approx(0.0, abs=1e-8)


# Power spectra

def test_power_spectrum_before_slits_properties(geometry):
    band = SpectralProfile.from_geometry(geometry)
    s = band.density(LAM)
    x1, x2 = _random_pairs()
    forward = power_spectrum_before_slits(x1, x2, LAM, geometry, band)
    backward = power_spectrum_before_slits(x2, x1, LAM, geometry, band)
    np.testing.assert_allclose(forward, np.conj(backward), rtol=1e-12, atol=1e-12 * s)
    np.testing.assert_allclose(np.abs(forward), np.abs(coherence_factor(x1 - x2, LAM, geometry)) * s, rtol=1e-12)

    diagonal = power_spectrum_before_slits(x1, x1, LAM, geometry, band)
    assert np.all(diagonal.imag == 0.0)
    np.testing.assert_allclose(diagonal.real, s, rtol=1e-14)

    pair = power_spectrum_before_slits(100e-6, -100e-6, LAM, geometry)
    assert abs(pair) == pytest.approx(coherence_factor(200e-6, LAM, geometry), rel=1e-12)


def test_power_spectrum_delta_slits_is_hermitian(geometry):
    x1, x2 = _random_pairs(seed=11)
    forward = power_spectrum_delta_slits(x1, x2, LAM, geometry)
    backward = power_spectrum_delta_slits(x2, x1, LAM, geometry)
    np.testing.assert_allclose(forward, np.conj(backward), rtol=1e-12, atol=1e-12)

    single = power_spectrum_delta_slits(50e-6, -30e-6, LAM, geometry)
    assert single == pytest.approx(np.conj(power_spectrum_delta_slits(-30e-6, 50e-6, LAM, geometry)))


def test_power_spectrum_delta_slits_diagonal(geometry, detector_grid):
    diagonal = power_spectrum_delta_slits(detector_grid, detector_grid, LAM, geometry)
    assert np.all(diagonal.imag == 0.0)
    assert np.all(diagonal.real >= 0.0)
    np.testing.assert_allclose(diagonal.real, intensity_delta_slits(detector_grid, LAM, geometry), rtol=1e-12)

    source = coherence_factor(126.3e-6, LAM, geometry)
    assert power_spectrum_delta_slits(0.0, 0.0, LAM, geometry).real == pytest.approx(1 + source)


def test_power_spectrum_delta_slits_rejects_hat_pair(geometry):
    with pytest.raises(InvalidInputError):
        power_spectrum_delta_slits(0.0, 0.0, LAM, geometry, modulation=slit_modulation(geometry, "hat-pair"))


# Delta slits

def test_delta_slit_intensity_values(geometry, derived):
    source = sinc(derived.source_sinc_argument)
    assert intensity_delta_slits(0.0, LAM, geometry) == pytest.approx(1 + source, rel=1e-14)
    assert intensity_delta_slits(0.0, LAM, geometry) == pytest.approx(1.8808, abs=1e-3)
    half = derived.fringe_spacing / 2
    assert intensity_delta_slits(half, LAM, geometry) == pytest.approx(1 - source, rel=1e-12)
    assert half == pytest.approx(36.5e-6, abs=0.1e-6)


def test_delta_slit_intensity_is_periodic(geometry, derived, detector_grid):
    shifted = intensity_delta_slits(detector_grid + derived.fringe_spacing, LAM, geometry)
    np.testing.assert_allclose(shifted, intensity_delta_slits(detector_grid, LAM, geometry), rtol=1e-9)


def test_delta_slit_fringe_spacing_and_visibility(geometry, derived, detector_grid):
    profile = optical_profile("optical-delta", geometry, detector_grid)
    assert fringe_spacing(profile) == pytest.approx(73e-6, abs=1e-6)
    result = fringe_visibility(profile)
    assert result.visibility == pytest.approx(0.881, abs=0.003)
    assert result.visibility == pytest.approx(sinc(derived.source_sinc_argument), abs=1e-3)


# Detector average

def test_detector_average_keeps_constant_profile():
    xs = np.linspace(-300e-6, 300e-6, 2001)
    averaged = detector_average(IntensityProfile(xs, np.full(xs.size, 2.5)), 20e-6)
    np.testing.assert_allclose(averaged.values, 2.5, rtol=1e-12)
    assert averaged.xs[0] >= xs[0] + 10e-6
    assert averaged.xs[-1] <= xs[-1] - 10e-6


def test_detector_average_damps_cosine_by_window_sinc(geometry, derived):
    q = 2 * np.pi / derived.fringe_spacing
    xs = np.linspace(-300e-6, 300e-6, 8001)
    averaged = detector_average(IntensityProfile(xs, 1 + np.cos(q * xs)), geometry.w0)
    damping = sinc(derived.detector_sinc_argument)
    assert damping == pytest.approx(0.8808, abs=1e-3)
    np.testing.assert_allclose(averaged.values, 1 + damping * np.cos(q * averaged.xs), rtol=1e-9)

    centre = averaged.xs[averaged.xs.size // 3]
    direct, _ = quad(lambda u: 1 + np.cos(q * u), centre - 10e-6, centre + 10e-6, epsabs=0, epsrel=1e-13)
    assert averaged.values[averaged.xs.size // 3] == pytest.approx(direct / 20e-6, rel=1e-9)


def test_detector_average_lowers_delta_slit_visibility(geometry, derived):
    xs = np.linspace(-520e-6, 520e-6, 4161)
    profile = optical_profile("optical-delta", geometry, xs)
    averaged = detector_average(profile, geometry.w0)
    product = sinc(derived.source_sinc_argument) * sinc(derived.detector_sinc_argument)
    assert product == pytest.approx(0.776, abs=1e-3)
    assert fringe_visibility(averaged).visibility == pytest.approx(product, abs=1e-3)


def test_detector_average_rejects_bad_windows():
    xs = np.linspace(-100e-6, 100e-6, 101)
    profile = IntensityProfile(xs, np.ones(xs.size))
    with pytest.raises(InvalidInputError):
        detector_average(profile, 300e-6)
    with pytest.raises(InvalidInputError):
        detector_average(profile, 10e-6)
    with pytest.raises(InvalidInputError):
        detector_average(profile, 0.0)


# Bandwidth average

def test_band_averaged_delta_slits(geometry, derived, detector_grid):
    product = sinc(derived.source_sinc_argument) * sinc(derived.detector_sinc_argument)
    assert intensity_delta_slits_band_averaged(0.0, geometry) == pytest.approx(1 + product, rel=1e-12)
    assert intensity_delta_slits_band_averaged(0.0, geometry) == pytest.approx(1.776, abs=1e-3)

    values = intensity_delta_slits_band_averaged(detector_grid, geometry)
    assert np.all(np.abs(values - 1) <= product + 1e-12)
    assert np.max(np.abs(values - 1)[np.abs(detector_grid) > 400e-6]) < 0.95 * product

    profile = optical_profile("optical-delta-avg", geometry, detector_grid)
    assert fringe_visibility(profile).visibility == pytest.approx(0.772, abs=0.005)


def test_band_average_matches_explicit_quadrature(geometry, detector_grid):
    approx = fringe_visibility(IntensityProfile(
        detector_grid, intensity_delta_slits_band_averaged(detector_grid, geometry))).visibility
    exact = fringe_visibility(IntensityProfile(
        detector_grid, intensity_delta_slits_band_averaged(detector_grid, geometry, exact=True))).visibility
    assert exact == pytest.approx(approx, rel=0.01)


def test_exact_band_average_accepts_scalar(geometry):
    value = intensity_delta_slits_band_averaged(0.0, geometry, exact=True)
    assert np.ndim(value) == 0
    assert value == pytest.approx(1.776, abs=5e-3)


# Finite slits

def test_finite_slits_tend_to_delta_slits(geometry):
    a_bar = (geometry.a1 + geometry.a2) / 2
    narrow = replace(geometry, a1=geometry.a1 * 1e-3, a2=geometry.a2 * 1e-3, d=geometry.d + a_bar * (1 - 1e-3))
    xs = np.linspace(-150e-6, 150e-6, 601)
    np.testing.assert_allclose(
        intensity_finite_slits(xs, LAM, narrow),
        intensity_delta_slits(xs, LAM, geometry),
        rtol=1e-6,
    )


def test_finite_slits_follow_the_modulation(geometry, detector_grid):
    default = intensity_finite_slits(detector_grid, LAM, geometry)
    explicit = intensity_finite_slits(detector_grid, LAM, geometry, modulation=slit_modulation(geometry, "hat-pair"))
    np.testing.assert_array_equal(explicit, default)

    wider = replace(geometry, a1=2 * geometry.a1, a2=2 * geometry.a2, d=geometry.d - (geometry.a1 + geometry.a2) / 2)
    modulation = slit_modulation(wider, "hat-pair")
    assert modulation.mean_width == pytest.approx(geometry.a1 + geometry.a2)
    assert modulation.separation == pytest.approx(126.3e-6)
    narrowed = intensity_finite_slits(detector_grid, LAM, geometry, modulation=modulation)
    far = np.abs(detector_grid) > 200e-6
    assert np.max(narrowed[far]) < np.max(default[far])

    averaged = intensity_finite_slits_band_averaged(detector_grid, geometry, modulation=slit_modulation(geometry, "hat-pair"))
    np.testing.assert_array_equal(averaged, intensity_finite_slits_band_averaged(detector_grid, geometry))
    with pytest.raises(InvalidInputError):
        intensity_finite_slits(0.0, LAM, geometry, modulation=slit_modulation(geometry, "delta-pair"))


def test_finite_slit_envelope_at_centre_with_unit_projection(geometry, derived):
    unit = replace(geometry, envelope_distance=geometry.z)
    envelope = intensity_finite_slits(0.0, LAM, unit) / (1 + sinc(derived.source_sinc_argument))
    assert envelope == pytest.approx(sinc(0.4774) ** 2, abs=1e-3)
    assert envelope == pytest.approx(0.9266, abs=1e-3)


def test_finite_slit_profiles_are_nonnegative(geometry, detector_grid):
    for model in ("optical-finite", "optical-finite-avg"):
        assert np.all(optical_profile(model, geometry, detector_grid).values >= 0.0)


def test_finite_slit_profile_is_even_for_equal_slits(geometry, detector_grid):
    equal = replace(geometry, a2=geometry.a1)
    values = intensity_finite_slits_band_averaged(detector_grid, equal)
    np.testing.assert_allclose(values, values[::-1], rtol=1e-12)


def test_finite_slit_band_averaged_visibility(geometry, detector_grid):
    profile = optical_profile("optical-finite-avg", geometry, detector_grid)
    assert fringe_visibility(profile).visibility == pytest.approx(0.760, abs=0.010)
    assert fringe_spacing(profile) == pytest.approx(73e-6, abs=2e-6)


def test_exact_finite_band_average_is_close(geometry, detector_grid):
    approx = intensity_finite_slits_band_averaged(detector_grid, geometry)
    exact = intensity_finite_slits_band_averaged(detector_grid, geometry, exact=True)
    v_approx = fringe_visibility(IntensityProfile(detector_grid, approx)).visibility
    v_exact = fringe_visibility(IntensityProfile(detector_grid, exact)).visibility
    assert v_exact == pytest.approx(v_approx, rel=0.01)


def test_visibility_ordering(geometry, detector_grid):
    v11, v13, v15 = (
        fringe_visibility(optical_profile(model, geometry, detector_grid)).visibility
        for model in ("optical-delta", "optical-delta-avg", "optical-finite-avg")
    )
    assert v11 > v13 > v15


# Phenomenological form

def test_phenomenological_intensity(geometry, detector_grid):
    xs = detector_grid
    no_cross = phenomenological_intensity(xs, 0.0, 0.5, 0.5, 0.5, geometry)
    np.testing.assert_allclose(no_cross, 1.0)

    full = phenomenological_intensity(xs, 1.0, 0.5, 0.5, 0.5, geometry)
    k = 2 * np.pi / geometry.lambda_db
    np.testing.assert_allclose(full, 1 + np.cos(k * 126.3e-6 * xs / geometry.v), rtol=1e-9, atol=1e-12)

    half = IntensityProfile(xs, phenomenological_intensity(xs, 0.5, 0.5, 0.5, 0.5, geometry))
    assert fringe_visibility(half).visibility == pytest.approx(0.5, abs=1e-6)


def test_phenomenological_intensity_accepts_callables(geometry):
    xs = np.linspace(-100e-6, 100e-6, 201)
    envelope = lambda x: np.exp(-(x / 200e-6) ** 2)  # noqa: E731
    values = phenomenological_intensity(xs, 1.0, envelope, envelope, envelope, geometry)
    assert np.all(values >= -1e-15)


def test_phenomenological_intensity_checks_cauchy_schwarz(geometry):
    with pytest.raises(InvalidInputError):
        phenomenological_intensity(0.0, 1.0, 0.25, 0.25, 0.5, geometry)
    with pytest.raises(InvalidInputError):
        phenomenological_intensity(0.0, 1.5, 0.5, 0.5, 0.5, geometry)


def test_optical_profile_tags(geometry, detector_grid):
    profile = optical_profile("finite-avg", geometry, detector_grid)
    assert profile.meta["model"] == "optical-finite-avg"
    assert profile.meta["geometry"]["a1"] == pytest.approx(21.9e-6)
    with pytest.raises(InvalidInputError):
        optical_profile("optical-laser", geometry, detector_grid)
