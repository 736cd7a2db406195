"""
Classical-optics intensity on the detector plane.

An incoherent source slit of width w illuminates the two slits from a
distance z; the pattern is observed a distance v behind them. Partial
coherence enters through the source-slit sinc factor, and the finite
scanning slit and the wavelength band wash the fringes out further.

Functions accept scalar or array positions and return arrays of the same
shape. Intensities are relative; ``spectrum`` defaults to unit weight at the
requested wavelength.
"""

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from errors import InvalidInputError
from evaluation.profile import IntensityProfile
from physics.parameters import derive_parameters

from .spectral import (
    DEFAULT_BAND_NODES,
    FresnelKernel,
    SpectralProfile,
    sinc,
    slit_modulation,
)

OPTICAL_MODELS = (
    "optical-delta",
    "optical-delta-avg",
    "optical-finite",
    "optical-finite-avg",
)

# Sliding windows narrower than this many samples are too coarse to average
MIN_WINDOW_SAMPLES = 8


def _wavenumber(wavelength):
    return 2 * np.pi / np.asarray(wavelength, dtype=float)


def _density(spectrum, wavelength):
    return 1.0 if spectrum is None else spectrum.density(wavelength)


def coherence_factor(dx, wavelength, geom):
    """
    Spatial coherence of the light reaching the slits, sinc(k·Δx·w/2z).

    Args:
        dx: Separation x1 - x2 of two points on the slit plane
        wavelength: Wavelength in m
        geom: ExperimentGeometry

    Returns:
        Real coherence factor, even in dx and bounded by 1
    """
    k = _wavenumber(wavelength)
    return sinc(k * np.asarray(dx, dtype=float) * geom.w / (2 * geom.z))


def power_spectrum_before_slits(x1, x2, wavelength, geom, spectrum=None):
    """
    Cross-spectral density just in front of the slits.

    Args:
        x1, x2: Positions on the slit plane
        wavelength: Wavelength in m
        geom: ExperimentGeometry
        spectrum: Optional SpectralProfile; unit weight when omitted

    Returns:
        Complex S(x1, x2); Hermitian with real diagonal s(λ)
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    kernel = FresnelKernel(geom.z, float(_wavenumber(wavelength)))
    phase = kernel.cross_phase(x1, x2)
    return coherence_factor(x1 - x2, wavelength, geom) * _density(spectrum, wavelength) * phase


def power_spectrum_delta_slits(x1, x2, wavelength, geom, spectrum=None, modulation=None):
    """
    Cross-spectral density on the detector plane behind two delta slits.

    Args:
        x1, x2: Detector positions
        wavelength: Wavelength in m
        geom: ExperimentGeometry
        spectrum: Optional SpectralProfile
        modulation: Optional delta-pair SlitModulation; slits at ±d̄/2 by default

    Returns:
        Complex S(x1, x2); its diagonal is intensity_delta_slits
    """
    if modulation is None:
        modulation = slit_modulation(geom, "delta-pair")
    if modulation.kind != "delta-pair":
        raise InvalidInputError("power_spectrum_delta_slits needs a delta-pair modulation")

    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    k = float(_wavenumber(wavelength))
    sep = modulation.separation
    source = coherence_factor(sep, wavelength, geom)
    bracket = np.cos(k * (x1 - x2) * sep / (2 * geom.v)) + source * np.cos(k * (x1 + x2) * sep / (2 * geom.v))
    kernel = FresnelKernel(geom.v, k)
    return bracket * _density(spectrum, wavelength) * kernel.cross_phase(x1, x2)


def intensity_delta_slits(x, wavelength, geom, spectrum=None):
    """Two-delta-slit intensity, [1 + sinc(k·d̄·w/2z)·cos(k·d̄·x/v)]·s(λ)."""
    x = np.asarray(x, dtype=float)
    k = _wavenumber(wavelength)
    d_bar = derive_parameters(geom).d_bar
    source = sinc(k * d_bar * geom.w / (2 * geom.z))
    return (1.0 + source * np.cos(k * d_bar * x / geom.v)) * _density(spectrum, wavelength)


def detector_average(profile, w0):
    """
    Average a profile over a scanning slit of width w0.

    The profile is interpolated with a cubic spline whose antiderivative
    gives the window integrals. Only positions whose full window lies inside
    the sampled range are kept.

    Args:
        profile: IntensityProfile
        w0: Scanning-slit width in m

    Returns:
        IntensityProfile on the interior positions
    """
    if not w0 > 0:
        raise InvalidInputError(f"detector width must be positive, got {w0}")
    xs = profile.xs
    if w0 >= profile.span:
        raise InvalidInputError("detector window is wider than the profile support")
    if w0 / float(np.max(np.diff(xs))) < MIN_WINDOW_SAMPLES:
        raise InvalidInputError(
            f"profile too coarse: the detector window must span at least {MIN_WINDOW_SAMPLES} samples")

    # Keep centers whose whole window is sampled
    half = w0 / 2
    inside = (xs - half >= xs[0]) & (xs + half <= xs[-1])
    centers = xs[inside]
    if centers.size < 16:
        raise InvalidInputError("too few positions remain after detector averaging")

    # Window integrals from the spline antiderivative
    antiderivative = CubicSpline(xs, profile.values).antiderivative()
    averaged = (antiderivative(centers + half) - antiderivative(centers - half)) / w0
    return IntensityProfile(centers, np.clip(averaged, 0.0, None),
                            dict(profile.meta, detector_width=w0))


def _band_sinc(x, k, d_bar, geom):
    return sinc((geom.delta_lambda / geom.lambda_db) * k * d_bar * np.asarray(x, dtype=float) / (2 * geom.v))


def _band_average(per_wavelength, geom, nodes):
    spectrum = SpectralProfile.from_geometry(geom)
    lams = spectrum.quadrature_nodes(nodes)
    values = np.array([per_wavelength(lam) for lam in lams])
    weights = spectrum.density(lams).reshape((-1,) + (1,) * (values.ndim - 1))
    return simpson(values * weights, x=lams, axis=0)


def intensity_delta_slits_band_averaged(x, geom, exact=False, nodes=DEFAULT_BAND_NODES):
    """
    Delta-slit intensity averaged over the scanning slit and the band.

    The default holds the aperture sincs at λ_dB and folds the uniform band
    into a sinc envelope on the fringe term. ``exact=True`` integrates the
    detector-averaged intensity over the band with Simpson's rule instead.

    Args:
        x: Detector positions
        geom: ExperimentGeometry
        exact: Use band quadrature instead of the constant-sinc form
        nodes: Quadrature node count for exact mode

    Returns:
        Relative intensity, equal to 1 + (modulation) in the constant-sinc form
    """
    x = np.asarray(x, dtype=float)
    d_bar = derive_parameters(geom).d_bar

    def averaged_at(lam):
        k = 2 * np.pi / lam
        source = sinc(k * d_bar * geom.w / (2 * geom.z))
        detector = sinc(k * d_bar * geom.w0 / (2 * geom.v))
        return 1.0 + source * detector * np.cos(k * d_bar * x / geom.v)

    if exact:
        return _band_average(averaged_at, geom, nodes).reshape(x.shape)

    k = 2 * np.pi / geom.lambda_db
    source = sinc(k * d_bar * geom.w / (2 * geom.z))
    detector = sinc(k * d_bar * geom.w0 / (2 * geom.v))
    return 1.0 + source * detector * _band_sinc(x, k, d_bar, geom) * np.cos(k * d_bar * x / geom.v)


def _hat_pair(geom, modulation):
    if modulation is None:
        modulation = slit_modulation(geom, "hat-pair")
    if modulation.kind != "hat-pair":
        raise InvalidInputError("finite-slit intensities need a hat-pair modulation")
    return modulation


def _envelopes(x, k, geom, modulation, envelope_distance):
    # Envelope centers sit at ±v·d̄/2b
    shift = geom.v * modulation.separation / (2 * envelope_distance)
    arg = k * modulation.mean_width / (2 * geom.v)
    return sinc(arg * (x - shift)), sinc(arg * (x + shift))


def intensity_finite_slits(x, wavelength, geom, spectrum=None, modulation=None):
    """
    Intensity behind two slits of mean width ā.

    Each slit contributes a sinc² envelope centered at ±v·d̄/2b; the cross
    term uses one envelope of each slit. The factor 1/2 makes the profile
    tend to intensity_delta_slits as ā → 0.

    Args:
        x: Detector positions
        wavelength: Wavelength in m
        geom: ExperimentGeometry
        spectrum: Optional SpectralProfile
        modulation: Optional hat-pair SlitModulation; ā and d̄ come from it

    Returns:
        Relative intensity
    """
    x = np.asarray(x, dtype=float)
    modulation = _hat_pair(geom, modulation)
    d_bar = modulation.separation
    k = _wavenumber(wavelength)
    minus, plus = _envelopes(x, k, geom, modulation, derive_parameters(geom).envelope_distance)
    source = sinc(k * d_bar * geom.w / (2 * geom.z))
    fringe = source * np.cos(k * d_bar * x / geom.v)
    return 0.5 * (minus ** 2 + plus ** 2 + 2 * minus * plus * fringe) * _density(spectrum, wavelength)


def intensity_finite_slits_band_averaged(x, geom, exact=False, nodes=DEFAULT_BAND_NODES, modulation=None):
    """
    Finite-slit intensity averaged over the scanning slit and the band.

    Args:
        x: Detector positions
        geom: ExperimentGeometry
        exact: Use band quadrature instead of the constant-sinc form
        nodes: Quadrature node count for exact mode
        modulation: Optional hat-pair SlitModulation

    Returns:
        Relative intensity
    """
    x = np.asarray(x, dtype=float)
    modulation = _hat_pair(geom, modulation)
    d_bar = modulation.separation
    envelope_distance = derive_parameters(geom).envelope_distance

    def averaged_at(lam, band=1.0):
        k = 2 * np.pi / lam
        minus, plus = _envelopes(x, k, geom, modulation, envelope_distance)
        source = sinc(k * d_bar * geom.w / (2 * geom.z))
        detector = sinc(k * d_bar * geom.w0 / (2 * geom.v))
        # Source and scanning-slit widths damp the fringe term
        fringe = source * detector * band * np.cos(k * d_bar * x / geom.v)
        return 0.5 * (minus ** 2 + plus ** 2 + 2 * minus * plus * fringe)

    if exact:
        return _band_average(averaged_at, geom, nodes).reshape(x.shape)
    k = 2 * np.pi / geom.lambda_db
    return averaged_at(geom.lambda_db, band=_band_sinc(x, k, d_bar, geom))


def _as_profile_values(term, x):
    values = term(x) if callable(term) else term
    return np.broadcast_to(np.asarray(values, dtype=float), x.shape)


def phenomenological_intensity(x, A, I1, I2, I12, geom, wavelength=None):
    """
    Damped two-beam interference, I1 + I2 + 2·A·I12·cos(k·d̄·x/v).

    Args:
        x: Detector positions
        A: Damping factor in [0, 1]
        I1, I2, I12: Callables of x, arrays matching x, or constants
        geom: ExperimentGeometry
        wavelength: Defaults to geom.lambda_db

    Returns:
        Relative intensity
    """
    if not 0.0 <= A <= 1.0:
        raise InvalidInputError(f"damping factor must lie in [0, 1], got {A}")
    x = np.asarray(x, dtype=float)
    i1 = _as_profile_values(I1, x)
    i2 = _as_profile_values(I2, x)
    i12 = _as_profile_values(I12, x)
    if np.any(i1 < 0) or np.any(i2 < 0):
        raise InvalidInputError("single-slit intensities must be nonnegative")
    bound = np.sqrt(i1 * i2)
    if np.any(np.abs(i12) > bound * (1 + 1e-12) + 1e-300):
        raise InvalidInputError("cross term violates |I12| <= sqrt(I1·I2)")

    lam = geom.lambda_db if wavelength is None else wavelength
    k = 2 * np.pi / lam
    d_bar = derive_parameters(geom).d_bar
    return i1 + i2 + 2 * A * i12 * np.cos(k * d_bar * x / geom.v)


def optical_profile(model, geom, xs):
    """
    Evaluate one of the optical models on a grid.

    Args:
        model: One of OPTICAL_MODELS (the "optical-" prefix may be omitted)
        geom: ExperimentGeometry
        xs: Detector grid

    Returns:
        IntensityProfile tagged with the model and geometry
    """
    tag = model if model.startswith("optical-") else f"optical-{model}"
    xs = np.asarray(xs, dtype=float)
    if tag == "optical-delta":
        values = intensity_delta_slits(xs, geom.lambda_db, geom)
    elif tag == "optical-delta-avg":
        values = intensity_delta_slits_band_averaged(xs, geom)
    elif tag == "optical-finite":
        values = intensity_finite_slits(xs, geom.lambda_db, geom)
    elif tag == "optical-finite-avg":
        values = intensity_finite_slits_band_averaged(xs, geom)
    else:
        raise InvalidInputError(f"unknown optical model {model!r}; expected one of {OPTICAL_MODELS}")
    return IntensityProfile(xs, values, {"model": tag, "geometry": geom.as_record()})
