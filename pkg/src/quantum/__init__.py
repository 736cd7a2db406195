"""
Quantum engine.

This package models each slit's outgoing wave as a superposition of
Gaussian packets, propagates them freely in closed form, and evaluates the
coherent and decoherence-damped detector intensity.
"""

from .packets import (
    QUASI_PLANE_PACKETS,
    SLIT_WAVE_MODES,
    GaussianPacket,
    PropagatedPacket,
    SlitAperture,
    WaveSuperposition,
    build_slit_wave,
    gaussian_overlap_1d,
    normalize_mode,
    propagate_free,
    spreading_width,
)
from .decoherence import (
    DECOHERENCE_MODES,
    DecoherenceModel,
    coherence_degree,
    lambda_from_overlap,
    overlap_magnitude,
    tau_c_from_lambda,
)
from .beam import (
    WEIGHTINGS,
    BeamState,
    build_beam,
    detector_slice,
    intensity_coherent,
    intensity_decohered,
    interference_components,
    quantum_profile,
)

__all__ = [
    'QUASI_PLANE_PACKETS',
    'SLIT_WAVE_MODES',
    'GaussianPacket',
    'PropagatedPacket',
    'SlitAperture',
    'WaveSuperposition',
    'build_slit_wave',
    'gaussian_overlap_1d',
    'normalize_mode',
    'propagate_free',
    'spreading_width',
    'DECOHERENCE_MODES',
    'DecoherenceModel',
    'coherence_degree',
    'lambda_from_overlap',
    'overlap_magnitude',
    'tau_c_from_lambda',
    'WEIGHTINGS',
    'BeamState',
    'build_beam',
    'detector_slice',
    'intensity_coherent',
    'intensity_decohered',
    'interference_components',
    'quantum_profile',
]
