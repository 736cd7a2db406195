"""
Least-squares comparison of model intensities with measured scans.

Counts are modelled as scale·I(x) + background. For a fixed model the two
linear parameters have a closed-form solution; the coherence degree Λ is
found by a coarse scan followed by golden-section refinement of rms(Λ).
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from tqdm import tqdm

from errors import InvalidInputError, NumericalError
from physics.parameters import derive_parameters

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 10
MIN_FIT_FRINGES = 3


@dataclass(frozen=True, eq=False)
class ScaleFit:
    scale: float
    background: float
    rms: float
    residuals: np.ndarray


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    Best-fit coherence degree with its linear parameters.

    Args:
        coherence: Fitted Λ in [0, 1]
        scale, background: Linear parameters at the fitted Λ
        rms: Root-mean-square residual in count units
        residuals: model - data at each scan position
        at_boundary: The minimum was not bracketed inside (0, 1)
        unimodal: The coarse rms scan had a single minimum
        scan: Tuple of (Λ, rms) pairs from the coarse scan
    """

    coherence: float
    scale: float
    background: float
    rms: float
    residuals: np.ndarray
    at_boundary: bool
    unimodal: bool
    scan: tuple

    def as_record(self):
        return {
            "coherence": self.coherence,
            "scale": self.scale,
            "background": self.background,
            "rms": self.rms,
            "at_boundary": self.at_boundary,
            "unimodal": self.unimodal,
        }


def refine_minimum(f, lower, best, upper, tol=1e-5):
    """
    Refine a coarse grid minimum of ``f``.

    When ``best`` lies strictly inside (lower, upper) with a lower value
    than both ends, golden-section search runs on that bracket. Otherwise
    the minimum sits at the edge of the grid and bounded Brent search on
    [lower, upper] is used.

    Args:
        f: Scalar function
        lower, best, upper: Neighbouring coarse grid points, best with the smallest value
        tol: Abscissa tolerance, relative for golden-section and absolute for bounded search

    Returns:
        Tuple (x, f(x), evaluations made by the optimizer)
    """
    lower, upper = min(lower, upper), max(lower, upper)
    if upper - lower <= tol:
        x = 0.5 * (lower + upper)
        return x, float(f(x)), 1

    f_best = f(best)
    if lower < best < upper and f_best < f(lower) and f_best < f(upper):
        result = minimize_scalar(f, bracket=(lower, best, upper), method="golden", tol=tol)
    else:
        result = minimize_scalar(f, bounds=(lower, upper), method="bounded", options={"xatol": tol})
    if not result.success:
        raise NumericalError(f"minimum refinement on [{lower:.6g}, {upper:.6g}] failed: {result.message}")
    return float(result.x), float(result.fun), int(result.nfev)


def _solve_scale_background(model, counts):
    model = np.asarray(model, dtype=float)
    counts = np.asarray(counts, dtype=float)
    model_mean = float(np.mean(model))
    counts_mean = float(np.mean(counts))
    centred = model - model_mean
    spread = float(np.sum(centred ** 2))
    if spread <= 1e-24 * max(float(np.sum(model ** 2)), np.finfo(float).tiny):
        raise NumericalError("singular normal equations: the model is constant on the data positions")

    scale = float(np.sum(centred * (counts - counts_mean))) / spread
    background = counts_mean - scale * model_mean
    if background < 0:
        scale = float(np.sum(model * counts)) / float(np.sum(model ** 2))
        background = 0.0
    if scale <= 0:
        logger.warning("fitted scale %.3g is not positive; clamped", scale)
        scale = np.finfo(float).tiny
        background = max(counts_mean - scale * model_mean, 0.0)

    residuals = scale * model + background - counts
    return ScaleFit(scale, background, float(np.sqrt(np.mean(residuals ** 2))), residuals)


def fit_scale_background(model, data):
    """
    Closed-form least-squares fit of counts ≈ scale·model + background.

    Args:
        model: IntensityProfile whose grid spans the data positions
        data: ScanDataset

    Returns:
        ScaleFit with scale > 0 and background >= 0
    """
    positions = data.positions
    if positions[0] < model.xs[0] or positions[-1] > model.xs[-1]:
        raise InvalidInputError("data positions lie outside the model grid")
    return _solve_scale_background(model.interpolate(positions), data.counts)


def _is_unimodal(values):
    values = np.asarray(values, dtype=float)
    slope = np.diff(values)
    tolerance = 1e-12 * max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    signs = np.sign(np.where(np.abs(slope) <= tolerance, 0.0, slope))
    signs = signs[signs != 0]
    rising = np.flatnonzero(signs > 0)
    return rising.size == 0 or bool(np.all(signs[rising[0]:] > 0))


def fit_coherence_degree(beam, deco_template, data, geom, tol=1e-4, scan_points=101, progress=False):
    """
    Fit the coherence degree Λ of a beam to a measured scan.

    The detector intensity is direct + Λ·cross, evaluated once on the scan
    positions. Λ is scanned on a uniform grid over [0, 1] and refined with
    refine_minimum between the neighbours of the best grid point.

    Args:
        beam: Object with components(t, xs, z_eval, env_phase, mass), e.g. BeamState
        deco_template: DecoherenceModel supplying the environment phase
        data: ScanDataset with at least 10 points covering 3 fringes
        geom: ExperimentGeometry for the detector slice
        tol: Tolerance on the refined Λ
        scan_points: Number of coarse scan points
        progress: Show a progress bar on standard error

    Returns:
        FitResult
    """
    params = derive_parameters(geom)
    if len(data) < MIN_FIT_POINTS:
        raise InvalidInputError(f"fit needs at least {MIN_FIT_POINTS} data points, got {len(data)}")
    coverage = (data.positions[-1] - data.positions[0]) / params.fringe_spacing
    if coverage < MIN_FIT_FRINGES:
        raise InvalidInputError(
            f"data cover {coverage:.2f} fringes; at least {MIN_FIT_FRINGES} are needed")
    if scan_points < 3:
        raise InvalidInputError(f"coherence scan needs at least 3 points, got {scan_points}")

    direct, cross = beam.components(params.t_flight, data.positions, geom.v,
                                    deco_template.env_phase, geom.particle_mass)

    def rms(coherence):
        return _solve_scale_background(direct + coherence * cross, data.counts).rms

    grid = np.linspace(0.0, 1.0, scan_points)
    scan_rms = np.array([rms(c) for c in tqdm(grid, desc="fit", unit="Λ", disable=not progress)])
    unimodal = _is_unimodal(scan_rms)
    if not unimodal:
        logger.warning("rms(Λ) scan has several local minima; refining around the global one")

    # Refine between the neighbours of the best grid point
    best = int(np.argmin(scan_rms))
    coherence, _, evaluations = refine_minimum(
        rms, grid[max(best - 1, 0)], grid[best], grid[min(best + 1, scan_points - 1)], tol)
    logger.debug("refined Λ after %d rms evaluations", evaluations)
    coherence = min(max(coherence, 0.0), 1.0)
    at_boundary = best in (0, scan_points - 1)
    if at_boundary:
        logger.warning("rms minimum not bracketed inside (0, 1); Λ = %.4f lies at the boundary", coherence)
        edge = grid[best]
        if rms(edge) <= rms(coherence):
            coherence = float(edge)

    fit = _solve_scale_background(direct + coherence * cross, data.counts)
    logger.info("fitted Λ = %.4f, scale = %.4g, background = %.4g, rms = %.4g",
                coherence, fit.scale, fit.background, fit.rms)
    return FitResult(
        coherence=float(coherence),
        scale=fit.scale,
        background=fit.background,
        rms=fit.rms,
        residuals=fit.residuals,
        at_boundary=at_boundary,
        unimodal=unimodal,
        scan=tuple(zip(grid.tolist(), scan_rms.tolist())),
    )
