"""
Fringe metrics on sampled intensity profiles.

Visibility follows V = (I_max - I_min)/(I_max + I_min) with the central
maximum and the mean of its two flanking minima. Extrema are located with
a prominence-based peak search and refined by three-point quadratic
interpolation.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.fft import fft, fftfreq, ifft
from scipy.signal import find_peaks
from tqdm import tqdm

from errors import InvalidInputError, NoFringesError, NumericalError

logger = logging.getLogger(__name__)

DEFAULT_SPACING_WINDOW = 250e-6
# Minimum prominence as a share of the profile's value range
DEFAULT_PROMINENCE = 0.05
# Extrema weaker than this share of the strongest one count as ripple
RIPPLE_FRACTION = 0.5


@dataclass(frozen=True)
class Extremum:
    index: int
    x: float
    value: float


@dataclass(frozen=True)
class VisibilityResult:
    visibility: float
    x_max: float
    x_min_left: float
    x_min_right: float
    i_max: float
    i_min_left: float
    i_min_right: float

    @property
    def i_min(self):
        return 0.5 * (self.i_min_left + self.i_min_right)


@dataclass(frozen=True)
class ProfileComparison:
    rms: float
    max_abs: float
    visibility_delta: float


def _prominent_peaks(values, prominence):
    peaks, properties = find_peaks(values, prominence=prominence)
    return peaks, properties["prominences"]


def _prominence_floor(values, prominence):
    if prominence is not None:
        return prominence
    return DEFAULT_PROMINENCE * float(np.ptp(values))


def local_extrema(values, prominence=None):
    """
    Indices of interior local maxima and minima.

    A plateau is reported once, at its middle sample. Wiggles whose
    prominence is below ``prominence`` are skipped.

    Args:
        values: Sampled intensities
        prominence: Absolute prominence floor, default a fixed share of the value range

    Returns:
        Tuple (maxima, minima) of index arrays
    """
    values = np.asarray(values, dtype=float)
    if values.size < 3 or np.ptp(values) == 0:
        empty = np.array([], dtype=int)
        return empty, empty
    floor = _prominence_floor(values, prominence)
    maxima, _ = find_peaks(values, prominence=floor)
    minima, _ = find_peaks(-values, prominence=floor)
    return maxima, minima


def refine_extremum(xs, values, index):
    """
    Vertex of the parabola through the sample at ``index`` and its neighbours.

    The vertex is kept within one grid step of the sample; boundary samples
    and flat triples are returned unrefined.
    """
    x1, y1 = float(xs[index]), float(values[index])
    if index <= 0 or index >= len(xs) - 1:
        return Extremum(index, x1, y1)
    h0 = x1 - float(xs[index - 1])
    h2 = float(xs[index + 1]) - x1
    p = float(values[index - 1]) - y1
    q = float(values[index + 1]) - y1
    a = (p * h2 + q * h0) / (h0 * h2 * (h0 + h2))
    if a == 0.0:
        return Extremum(index, x1, y1)
    b = (q - a * h2 ** 2) / h2
    u = min(max(-b / (2 * a), -h0), h2)
    return Extremum(index, x1 + u, y1 + a * u ** 2 + b * u)


def _dominant(peaks, prominences):
    return peaks[prominences >= RIPPLE_FRACTION * np.max(prominences, initial=0.0)]


def _central_maximum(xs, maxima):
    # argmin returns the first of equal distances, i.e. the one at negative x
    return int(maxima[np.argmin(np.abs(xs[maxima]))])


def _central_fringe(xs, values):
    """
    Indices (centre, left, right) of the central maximum and its flanking minima.

    Extrema less prominent than RIPPLE_FRACTION of the strongest of their
    kind are ignored.
    """
    if values.size < 3 or np.ptp(values) == 0:
        raise NoFringesError("no flanking minima found: profile is constant")
    floor = _prominence_floor(values, None)
    maxima = _dominant(*_prominent_peaks(values, floor))
    if maxima.size == 0:
        raise NoFringesError("no flanking minima found: profile has no interior maximum")
    minima = _dominant(*_prominent_peaks(-values, floor))

    centre = _central_maximum(xs, maxima)
    left = minima[minima < centre]
    right = minima[minima > centre]
    if left.size == 0 or right.size == 0:
        raise NoFringesError(f"no flanking minima found around the maximum at x = {xs[centre]:.6g} m")
    return centre, int(left[-1]), int(right[0])


def fringe_visibility(profile):
    """
    Visibility of the central fringe.

    Args:
        profile: IntensityProfile with a maximum near x = 0 flanked by minima

    Returns:
        VisibilityResult
    """
    xs, values = profile.xs, profile.values
    centre, left, right = _central_fringe(xs, values)

    # Refine the three extrema between samples
    peak = refine_extremum(xs, values, centre)
    low_left = refine_extremum(xs, values, left)
    low_right = refine_extremum(xs, values, right)

    i_max = peak.value
    i_min = 0.5 * (max(low_left.value, 0.0) + max(low_right.value, 0.0))
    if i_max + i_min <= 0:
        raise NumericalError("visibility undefined for a zero-intensity fringe")
    visibility = min(max((i_max - i_min) / (i_max + i_min), 0.0), 1.0)
    return VisibilityResult(
        visibility=visibility,
        x_max=peak.x,
        x_min_left=low_left.x,
        x_min_right=low_right.x,
        i_max=i_max,
        i_min_left=low_left.value,
        i_min_right=low_right.value,
    )


def visibility_or_zero(profile):
    """Visibility, or 0 when the profile shows no fringes."""
    try:
        return fringe_visibility(profile).visibility
    except NoFringesError as e:
        logger.info("no fringes, visibility reported as 0: %s", e)
        return 0.0


def fringe_spacing(profile, window=DEFAULT_SPACING_WINDOW):
    """
    Fringe period from the phase slope of the fringe term.

    The central fringe gives a first estimate of the period. The profile
    is then tapered and band-passed to [0.5, 1.5] times that frequency,
    keeping positive frequencies only, and a line is fitted to the
    unwrapped phase of the result for |x| <= window. Unlike the distance
    between raw maxima, this is not pulled inward by a sloping envelope.

    Args:
        profile: IntensityProfile
        window: Half-width of the region used, in m

    Returns:
        Spacing in m
    """
    xs, values = profile.xs, profile.values
    _, left, right = _central_fringe(xs, values)
    coarse = float(xs[right] - xs[left])
    if 2 * window < coarse:
        raise NoFringesError(f"spacing window of ±{window:.6g} m holds less than one fringe")

    # Resample onto a uniform grid
    grid = np.linspace(xs[0], xs[-1], xs.size)
    samples = np.interp(grid, xs, values)
    tapered = (samples - np.mean(samples)) * np.hanning(samples.size)

    # Keep the positive-frequency band around the fringe frequency
    frequencies = fftfreq(samples.size, d=grid[1] - grid[0])
    band = (frequencies > 0.5 / coarse) & (frequencies < 1.5 / coarse)
    analytic = ifft(np.where(band, 2.0 * fft(tapered), 0.0))

    inside = np.abs(grid) <= window
    if np.count_nonzero(inside) < 3:
        raise NoFringesError("too few samples inside the spacing window")
    phase = np.unwrap(np.angle(analytic[inside]))
    slope, _ = np.polyfit(grid[inside], phase, 1, w=np.abs(analytic[inside]))
    if not np.isfinite(slope) or slope <= 0:
        raise NumericalError(f"fringe phase slope {slope:.6g} rad/m is not a positive frequency")
    return float(2 * np.pi / slope)


def edge_ripple(profile, x_cut):
    """
    Oscillation left in the tails, |x| >= x_cut.

    Sums every increase met while walking outward from x_cut on either
    side, relative to the profile maximum. A monotone-decaying tail gives 0.
    """
    xs, values = profile.xs, profile.values
    peak = float(np.max(values))
    if peak <= 0:
        return 0.0
    right = values[xs >= x_cut]
    left = values[xs <= -x_cut][::-1]
    rises = sum(float(np.sum(np.clip(np.diff(tail), 0.0, None))) for tail in (left, right) if tail.size > 1)
    return rises / peak


def compare_profiles(a, b):
    """
    Compare two profiles after normalizing both to unit mean.

    Both are interpolated onto the union of their grids inside the common
    support, so rms and max_abs are symmetric in (a, b).

    Args:
        a, b: IntensityProfile

    Returns:
        ProfileComparison; visibility_delta is NaN when either profile has no fringes
    """
    lo = max(a.xs[0], b.xs[0])
    hi = min(a.xs[-1], b.xs[-1])
    if lo >= hi:
        raise InvalidInputError("profiles have disjoint supports")
    grid = np.union1d(a.xs, b.xs)
    grid = grid[(grid >= lo) & (grid <= hi)]
    va = a.interpolate(grid)
    vb = b.interpolate(grid)
    mean_a, mean_b = float(np.mean(va)), float(np.mean(vb))
    if mean_a <= 0 or mean_b <= 0:
        raise InvalidInputError("cannot compare profiles that vanish on the common support")
    diff = va / mean_a - vb / mean_b

    try:
        delta = abs(fringe_visibility(a).visibility - fringe_visibility(b).visibility)
    except NoFringesError as e:
        logger.warning("visibility difference unavailable: %s", e)
        delta = float("nan")
    return ProfileComparison(
        rms=float(np.sqrt(np.mean(diff ** 2))),
        max_abs=float(np.max(np.abs(diff))),
        visibility_delta=delta,
    )


def visibility_sweep(coherence_values, evaluate, progress=False):
    """
    Tabulate visibility over a set of coherence degrees.

    Args:
        coherence_values: Iterable of Λ values
        evaluate: Callable mapping Λ to an IntensityProfile
        progress: Show a progress bar on standard error

    Returns:
        List of (Λ, V) tuples; V = 0 where no fringes exist
    """
    rows = []
    for value in tqdm(list(coherence_values), desc="sweep", unit="Λ", disable=not progress):
        rows.append((float(value), visibility_or_zero(evaluate(value))))
    return rows
