"""
Classical-optics engine.

This package evaluates the partially coherent two-slit intensity: power
spectra before and after the slits, the delta-slit and finite-slit
intensities, and the scanning-slit and bandwidth averages.
"""

from .spectral import (
    FresnelKernel,
    SlitModulation,
    SpectralProfile,
    sinc,
    slit_modulation,
)
from .intensity import (
    OPTICAL_MODELS,
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
)

__all__ = [
    'FresnelKernel',
    'SlitModulation',
    'SpectralProfile',
    'sinc',
    'slit_modulation',
    'OPTICAL_MODELS',
    'coherence_factor',
    'detector_average',
    'intensity_delta_slits',
    'intensity_delta_slits_band_averaged',
    'intensity_finite_slits',
    'intensity_finite_slits_band_averaged',
    'optical_profile',
    'phenomenological_intensity',
    'power_spectrum_before_slits',
    'power_spectrum_delta_slits',
]
