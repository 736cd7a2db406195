"""
Sampled intensity profiles and measured scan datasets.
"""

from dataclasses import dataclass, field

import numpy as np

from errors import InvalidInputError
from utils import to_builtin

MIN_PROFILE_POINTS = 16
# Round-off below this fraction of the peak is clipped to zero
NEGATIVE_TOLERANCE = 1e-12


def _strictly_increasing(xs):
    return bool(np.all(np.diff(xs) > 0))


@dataclass(frozen=True, eq=False)
class IntensityProfile:
    """
    Intensity sampled on a detector grid.

    Args:
        xs: Strictly increasing positions in m
        values: Nonnegative intensities, same length as xs
        meta: Model tag and parameter record (plain Python values)
    """

    xs: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        xs = np.array(self.xs, dtype=float)
        values = np.array(self.values, dtype=float)
        if xs.ndim != 1 or values.shape != xs.shape:
            raise InvalidInputError("profile positions and values must be 1-D arrays of equal length")
        if xs.size < MIN_PROFILE_POINTS:
            raise InvalidInputError(f"profile needs at least {MIN_PROFILE_POINTS} points, got {xs.size}")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(values))):
            raise InvalidInputError("profile contains non-finite numbers")
        if not _strictly_increasing(xs):
            raise InvalidInputError("profile positions must be strictly increasing")
        peak = float(np.max(np.abs(values)))
        if np.any(values < -NEGATIVE_TOLERANCE * peak):
            raise InvalidInputError("profile intensities must be nonnegative")
        values = np.clip(values, 0.0, None)
        xs.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "meta", to_builtin(dict(self.meta)))

    def __len__(self):
        return self.xs.size

    @property
    def step(self):
        """Smallest grid spacing."""
        return float(np.min(np.diff(self.xs)))

    @property
    def span(self):
        return float(self.xs[-1] - self.xs[0])

    def interpolate(self, positions):
        """Linear interpolation of the values at ``positions``."""
        return np.interp(np.asarray(positions, dtype=float), self.xs, self.values)

    def normalized(self):
        """Copy scaled to unit mean."""
        mean = float(np.mean(self.values))
        if mean <= 0:
            raise InvalidInputError("cannot normalize an all-zero profile")
        return self.with_values(self.values / mean)

    def with_values(self, values, **meta_updates):
        meta = dict(self.meta)
        meta.update(meta_updates)
        return IntensityProfile(self.xs, values, meta)


@dataclass(frozen=True, eq=False)
class ScanDataset:
    """
    Measured counts against scanning-slit position.

    Args:
        positions: Strictly increasing positions in m
        counts: Nonnegative counts
        errors: Optional per-point count errors
    """

    positions: np.ndarray
    counts: np.ndarray
    errors: np.ndarray | None = None

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        if positions.ndim != 1 or counts.shape != positions.shape:
            raise InvalidInputError("scan positions and counts must be 1-D arrays of equal length")
        if positions.size == 0:
            raise InvalidInputError("scan dataset is empty")
        if not _strictly_increasing(positions):
            raise InvalidInputError("scan positions must be strictly increasing")
        if np.any(counts < 0):
            raise InvalidInputError("scan counts must be nonnegative")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "counts", counts)
        if self.errors is not None:
            errors = np.asarray(self.errors, dtype=float)
            if errors.shape != positions.shape:
                raise InvalidInputError("count errors must match the number of positions")
            object.__setattr__(self, "errors", errors)

    def __len__(self):
        return self.positions.size

    def as_profile(self, **meta):
        """View the counts as an IntensityProfile, e.g. for visibility extraction."""
        return IntensityProfile(self.positions, self.counts, meta)
