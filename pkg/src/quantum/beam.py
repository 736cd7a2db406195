"""
Two-slit beam built from Gaussian slit waves, and its detector intensity.

The detector profile is sampled along z = v at t = t_flight, the time the
packet centers reach the scanning slit.
"""

import math
from dataclasses import dataclass

import numpy as np

from errors import InvalidInputError
from evaluation.profile import IntensityProfile
from physics.parameters import NEUTRON_MASS, derive_parameters

from .decoherence import coherence_degree
from .packets import QUASI_PLANE_PACKETS, SlitAperture, build_slit_wave, normalize_mode

WEIGHTINGS = ("equal", "width")


@dataclass(frozen=True)
class BeamState:
    """c1|ψ1⟩ + c2|ψ2⟩ with |c1|² + |c2|² = 1."""

    psi1: object
    psi2: object
    c1: complex = 1 / math.sqrt(2)
    c2: complex = 1 / math.sqrt(2)

    def __post_init__(self):
        total = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(total - 1.0) > 1e-12:
            raise InvalidInputError(f"|c1|² + |c2|² must equal 1, got {total}")

    def amplitudes(self, t, xs, z_eval, mass=NEUTRON_MASS):
        """Weighted slit amplitudes c1ψ1 and c2ψ2 on the grid."""
        f1 = self.c1 * self.psi1.evaluate(xs, z_eval, t, mass)
        f2 = self.c2 * self.psi2.evaluate(xs, z_eval, t, mass)
        return f1, f2

    def components(self, t, xs, z_eval, env_phase=0.0, mass=NEUTRON_MASS):
        """
        Split the intensity into direct and interference parts.

        Returns:
            Tuple (direct, cross) with intensity = direct + Λ·cross
        """
        f1, f2 = self.amplitudes(t, xs, z_eval, mass)
        direct = np.abs(f1) ** 2 + np.abs(f2) ** 2
        cross = 2 * np.real(np.conj(f1) * f2 * np.exp(1j * env_phase))
        return direct, cross


def _check_grid(xs):
    xs = np.asarray(xs, dtype=float)
    if xs.size == 0:
        raise InvalidInputError("detector grid is empty")
    return xs


def interference_components(beam, t, xs, z_eval, env_phase=0.0, mass=NEUTRON_MASS):
    """
    Direct and cross intensity arrays, I(Λ) = direct + Λ·cross.

    Args:
        beam: BeamState
        t: Time in s
        xs: Detector grid
        z_eval: Longitudinal position of the sample line
        env_phase: Environment phase added to the fringe phase, rad

    Returns:
        Tuple (direct, cross) of arrays on xs
    """
    xs = _check_grid(xs)
    return beam.components(t, xs, z_eval, env_phase, mass)


def detector_slice(geom):
    """(t_flight, v): time and longitudinal position of the detector sample."""
    return derive_parameters(geom).t_flight, geom.v


def build_beam(geom, mode="gaussian", kicks=True, weighting="equal", n_packets=QUASI_PLANE_PACKETS):
    """
    Assemble the two slit waves.

    Args:
        geom: ExperimentGeometry
        mode: "quasi-plane" or "gaussian"
        kicks: Give each slit wave its transverse kick ∓ħ/a_i; otherwise both
            travel straight along z with the full beam momentum
        weighting: "equal" for c1 = c2 = 1/√2, "width" for c_i ∝ √a_i
        n_packets: Quasi-plane packet counts for the left and right slit

    Returns:
        BeamState
    """
    mode = normalize_mode(mode)
    params = derive_parameters(geom)
    if kicks:
        kick1, kick2 = (params.px1, params.pz1), (params.px2, params.pz2)
    else:
        kick1 = kick2 = (0.0, params.p_beam)

    # Build one wave per slit
    psi1 = build_slit_wave(SlitAperture(params.x1_center, geom.a1, "left"), mode, kick1, geom, n_packets[0])
    psi2 = build_slit_wave(SlitAperture(params.x2_center, geom.a2, "right"), mode, kick2, geom, n_packets[1])

    # Slit coefficients
    if weighting == "equal":
        c1 = c2 = 1 / math.sqrt(2)
    elif weighting == "width":
        c1 = math.sqrt(geom.a1 / (geom.a1 + geom.a2))
        c2 = math.sqrt(geom.a2 / (geom.a1 + geom.a2))
    else:
        raise InvalidInputError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")
    return BeamState(psi1, psi2, c1, c2)


def intensity_coherent(beam, t, xs, z_eval, mass=NEUTRON_MASS):
    """
    Fully coherent intensity |c1ψ1 + c2ψ2|² along z = z_eval.

    Args:
        beam: BeamState
        t: Time in s
        xs: Sorted detector grid
        z_eval: Longitudinal position of the sample line

    Returns:
        IntensityProfile
    """
    xs = _check_grid(xs)
    if t < 0:
        raise InvalidInputError(f"time must be nonnegative, got {t}")
    f1, f2 = beam.amplitudes(t, xs, z_eval, mass)
    return IntensityProfile(xs, np.abs(f1 + f2) ** 2,
                            {"model": "quantum-coherent", "t": t, "z_eval": z_eval})


def intensity_decohered(beam, deco, t, xs, z_eval, mass=NEUTRON_MASS):
    """
    Intensity with the interference term damped by the coherence degree.

    The global (1 + |α_t|²) factor is dropped; data comparisons always fit
    a scale.

    Args:
        beam: BeamState
        deco: DecoherenceModel
        t: Time in s
        xs: Sorted detector grid
        z_eval: Longitudinal position of the sample line

    Returns:
        IntensityProfile
    """
    xs = _check_grid(xs)
    coherence = coherence_degree(deco, t)
    if not 0.0 <= coherence <= 1.0:
        raise InvalidInputError(f"coherence degree must lie in [0, 1], got {coherence}")
    direct, cross = interference_components(beam, t, xs, z_eval, deco.env_phase, mass)
    values = np.clip(direct + coherence * cross, 0.0, None)
    meta = {
        "model": "quantum-decohered",
        "t": t,
        "z_eval": z_eval,
        "coherence": coherence,
        "env_phase": deco.env_phase,
    }
    return IntensityProfile(xs, values, meta)


def quantum_profile(geom, mode, xs, deco=None, kicks=True, weighting="equal"):
    """
    Detector profile of the quantum model at the packet arrival time.

    Args:
        geom: ExperimentGeometry
        mode: "quasi-plane" or "gaussian"
        xs: Detector grid
        deco: Optional DecoherenceModel; coherent when omitted
        kicks: Apply the per-slit transverse kicks
        weighting: Slit weighting, see build_beam

    Returns:
        IntensityProfile tagged quantum-<mode>
    """
    mode = normalize_mode(mode)
    beam = build_beam(geom, mode, kicks=kicks, weighting=weighting)
    # Sample the beam where it crosses the scanning slit
    t, z_eval = detector_slice(geom)
    if deco is None:
        profile = intensity_coherent(beam, t, xs, z_eval, geom.particle_mass)
    else:
        profile = intensity_decohered(beam, deco, t, xs, z_eval, geom.particle_mass)
    tag = "quantum-quasiplane" if mode == "quasi-plane" else "quantum-gaussian"
    return profile.with_values(profile.values, model=tag, kicks=kicks, weighting=weighting,
                               geometry=geom.as_record())
