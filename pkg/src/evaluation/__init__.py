"""
Evaluation package for fringelab.

This package provides the sampled intensity profile, fringe metrics and
the least-squares fits that compare model profiles with measured scans.
"""

from .profile import (
    MIN_PROFILE_POINTS,
    IntensityProfile,
    ScanDataset
)
from .profile_metrics import (
    Extremum,
    ProfileComparison,
    VisibilityResult,
    compare_profiles,
    edge_ripple,
    fringe_spacing,
    fringe_visibility,
    local_extrema,
    refine_extremum,
    visibility_or_zero,
    visibility_sweep
)
from .fitting import (
    FitResult,
    ScaleFit,
    fit_coherence_degree,
    fit_scale_background,
    refine_minimum
)

__all__ = [
    'MIN_PROFILE_POINTS',
    'IntensityProfile',
    'ScanDataset',
    'Extremum',
    'ProfileComparison',
    'VisibilityResult',
    'compare_profiles',
    'edge_ripple',
    'fringe_spacing',
    'fringe_visibility',
    'local_extrema',
    'refine_extremum',
    'visibility_or_zero',
    'visibility_sweep',
    'FitResult',
    'ScaleFit',
    'fit_coherence_degree',
    'fit_scale_background',
    'refine_minimum'
]
