"""
Physical model of the double-slit setup.

This package holds the experiment geometry, physical constants and the
derived quantities shared by the optical and quantum engines.
"""

from .parameters import (
    ATOMIC_MASS_UNIT,
    EXPERIMENTAL_VISIBILITY,
    HBAR,
    NEUTRON_MASS,
    PLANCK,
    REFERENCE_COHERENCE_DEGREE,
    REFERENCE_COHERENCE_TIME,
    SLIT_CENTER_CONVENTIONS,
    DerivedParams,
    ExperimentGeometry,
    derive_parameters,
    slit_center_positions,
    validate_geometry,
)

__all__ = [
    'ATOMIC_MASS_UNIT',
    'EXPERIMENTAL_VISIBILITY',
    'HBAR',
    'NEUTRON_MASS',
    'PLANCK',
    'REFERENCE_COHERENCE_DEGREE',
    'REFERENCE_COHERENCE_TIME',
    'SLIT_CENTER_CONVENTIONS',
    'DerivedParams',
    'ExperimentGeometry',
    'derive_parameters',
    'slit_center_positions',
    'validate_geometry',
]
