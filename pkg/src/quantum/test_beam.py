import math

import numpy as np
import pytest

from errors import InvalidInputError, NoFringesError
from evaluation import edge_ripple, fringe_spacing, fringe_visibility, visibility_or_zero
from physics import ExperimentGeometry
from quantum import (
    BeamState,
    DecoherenceModel,
    build_beam,
    detector_slice,
    intensity_coherent,
    intensity_decohered,
    quantum_profile,
)


@pytest.fixture
def gaussian_beam(geometry):
    return build_beam(geometry, "gaussian")


def test_detector_slice(geometry, derived):
    t, z = detector_slice(geometry)
    assert t == derived.t_flight
    assert z == geometry.v


def test_full_coherence_equals_coherent_intensity(geometry, gaussian_beam, detector_grid):
    t, z = detector_slice(geometry)
    coherent = intensity_coherent(gaussian_beam, t, detector_grid, z)
    damped = intensity_decohered(gaussian_beam, DecoherenceModel.direct(1.0), t, detector_grid, z)
    peak = float(np.max(coherent.values))
    np.testing.assert_allclose(damped.values, coherent.values, rtol=1e-12, atol=1e-12 * peak)


def test_no_coherence_removes_fringes(geometry, detector_grid):
    profile = quantum_profile(geometry, "gaussian", detector_grid, DecoherenceModel.direct(0.0))
    with pytest.raises(NoFringesError):
        fringe_visibility(profile)
    assert visibility_or_zero(profile) == 0.0


def test_visibility_at_fitted_coherence(geometry, detector_grid):
    profile = quantum_profile(geometry, "gaussian", detector_grid, DecoherenceModel.direct(0.63))
    assert fringe_visibility(profile).visibility == pytest.approx(0.607, abs=0.01)
    assert profile.meta["model"] == "quantum-gaussian"
    assert profile.meta["coherence"] == 0.63


def test_coherent_visibility_is_near_one(geometry, detector_grid):
    profile = quantum_profile(geometry, "gaussian", detector_grid)
    assert fringe_visibility(profile).visibility >= 0.95


def test_visibility_grows_with_coherence(geometry, gaussian_beam, detector_grid):
    t, z = detector_slice(geometry)
    visibilities = [
        visibility_or_zero(intensity_decohered(gaussian_beam, DecoherenceModel.direct(c), t, detector_grid, z))
        for c in (0.0, 0.25, 0.5, 0.75, 1.0)
    ]
    assert visibilities[0] == 0.0
    assert all(b > a for a, b in zip(visibilities, visibilities[1:]))


def test_fringe_spacing_without_kicks(geometry, detector_grid):
    profile = quantum_profile(geometry, "gaussian", detector_grid, kicks=False)
    assert fringe_spacing(profile) == pytest.approx(73e-6, abs=2e-6)
    assert profile.meta["kicks"] is False


def test_quasi_plane_and_gaussian_share_fringe_spacing(geometry, detector_grid):
    quasi = quantum_profile(geometry, "quasi-plane", detector_grid)
    gaussian = quantum_profile(geometry, "gaussian", detector_grid)
    assert quasi.meta["model"] == "quantum-quasiplane"
    assert fringe_spacing(quasi) == pytest.approx(fringe_spacing(gaussian), rel=0.02)


def test_edge_ripple_only_in_quasi_plane_mode(geometry):
    xs = np.linspace(-1200e-6, 1200e-6, 4801)
    incoherent = DecoherenceModel.direct(0.0)
    quasi = quantum_profile(geometry, "quasi-plane", xs, incoherent)
    gaussian = quantum_profile(geometry, "gaussian", xs, incoherent)
    quasi_ripple = edge_ripple(quasi, 400e-6)
    gaussian_ripple = edge_ripple(gaussian, 400e-6)
    assert quasi_ripple > 1e-3
    assert quasi_ripple > 5 * gaussian_ripple
    assert gaussian_ripple == 0.0


def test_interference_term_is_bounded(geometry, gaussian_beam, detector_grid):
    t, z = detector_slice(geometry)
    f1, f2 = gaussian_beam.amplitudes(t, detector_grid, z)
    direct, cross = gaussian_beam.components(t, detector_grid, z, env_phase=0.4)
    assert np.all(np.abs(cross) <= 2 * np.abs(f1) * np.abs(f2) * (1 + 1e-12) + 1e-300)
    coherent = intensity_coherent(gaussian_beam, t, detector_grid, z)
    np.testing.assert_allclose(coherent.values, direct + gaussian_beam.components(t, detector_grid, z)[1],
                               rtol=1e-10, atol=1e-12 * float(np.max(direct)))


def test_single_slit_beam_has_no_fringes(geometry, gaussian_beam, detector_grid):
    t, z = detector_slice(geometry)
    one_slit = BeamState(gaussian_beam.psi1, gaussian_beam.psi2, 1.0, 0.0)
    with pytest.raises(NoFringesError):
        fringe_visibility(intensity_coherent(one_slit, t, detector_grid, z))


def test_identical_waves_double_the_intensity(geometry, gaussian_beam, detector_grid):
    t, z = detector_slice(geometry)
    same = BeamState(gaussian_beam.psi1, gaussian_beam.psi1)
    single = np.abs(gaussian_beam.psi1.evaluate(detector_grid, z, t)) ** 2
    np.testing.assert_allclose(intensity_coherent(same, t, detector_grid, z).values, 2 * single,
                               rtol=1e-12, atol=1e-15 * float(np.max(single)))


def test_width_weighting(geometry):
    beam = build_beam(geometry, "gaussian", weighting="width")
    assert abs(beam.c1) ** 2 + abs(beam.c2) ** 2 == pytest.approx(1.0)
    assert abs(beam.c2) > abs(beam.c1)
    with pytest.raises(InvalidInputError):
        build_beam(geometry, "gaussian", weighting="counts")


def test_offset_centers_widen_the_fringes(detector_grid):
    geom = ExperimentGeometry(slit_centers="offset")
    profile = quantum_profile(geom, "gaussian", detector_grid, kicks=False)
    assert fringe_spacing(profile) == pytest.approx(geom.v * geom.lambda_db / 104.4e-6, rel=0.02)


def test_invalid_beams(geometry, gaussian_beam):
    with pytest.raises(InvalidInputError):
        BeamState(gaussian_beam.psi1, gaussian_beam.psi2, 1.0, 1.0)
    with pytest.raises(InvalidInputError):
        intensity_coherent(gaussian_beam, -1.0, np.linspace(-1e-4, 1e-4, 32), geometry.v)
    with pytest.raises(InvalidInputError):
        intensity_coherent(gaussian_beam, 0.0, np.array([]), geometry.v)
    with pytest.raises(InvalidInputError):
        quantum_profile(geometry, "plane", np.linspace(-1e-4, 1e-4, 32))
    assert math.isclose(abs(gaussian_beam.c1), 1 / math.sqrt(2))
