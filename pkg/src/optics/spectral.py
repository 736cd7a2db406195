"""
Value types for the classical-optics model: the source spectrum, the slit
modulation function and the Fresnel point-spread kernel.
"""

from dataclasses import dataclass

import numpy as np

from errors import InvalidInputError

SPECTRAL_KINDS = ("monochromatic", "uniform-band")
MODULATION_KINDS = ("delta-pair", "hat-pair")

DEFAULT_BAND_NODES = 129


def sinc(u):
    """Unnormalized sinc, sin(u)/u, with sinc(0) = 1."""
    return np.sinc(np.asarray(u, dtype=float) / np.pi)


@dataclass(frozen=True)
class SpectralProfile:
    """
    Spectral density s(λ) of the source.

    A monochromatic profile has unit weight at ``center``. A uniform band
    has density 1/width over [center - width/2, center + width/2].
    """

    kind: str
    center: float
    width: float = 0.0

    def __post_init__(self):
        if self.kind not in SPECTRAL_KINDS:
            raise InvalidInputError(f"unknown spectral profile kind: {self.kind!r}")
        if not self.center > 0:
            raise InvalidInputError(f"spectral center must be positive, got {self.center}")
        if self.kind == "uniform-band" and not 0 < self.width < 2 * self.center:
            raise InvalidInputError(f"band width must lie in (0, 2·center), got {self.width}")

    @classmethod
    def monochromatic(cls, center):
        return cls("monochromatic", center)

    @classmethod
    def uniform_band(cls, center, width):
        return cls("uniform-band", center, width)

    @classmethod
    def from_geometry(cls, geom):
        return cls.uniform_band(geom.lambda_db, geom.delta_lambda)

    @property
    def bounds(self):
        half = self.width / 2 if self.kind == "uniform-band" else 0.0
        return self.center - half, self.center + half

    def density(self, wavelength):
        """
        Evaluate s(λ).

        Args:
            wavelength: Scalar or array of wavelengths in m

        Returns:
            Density with the shape of ``wavelength``
        """
        lam = np.asarray(wavelength, dtype=float)
        if self.kind == "monochromatic":
            values = np.where(np.isclose(lam, self.center, rtol=1e-12, atol=0.0), 1.0, 0.0)
        else:
            lo, hi = self.bounds
            values = np.where((lam >= lo) & (lam <= hi), 1.0 / self.width, 0.0)
        return values if values.ndim else float(values)

    def quadrature_nodes(self, n=DEFAULT_BAND_NODES):
        """
        Wavelength nodes for Simpson quadrature over the band.

        Args:
            n: Number of nodes; must be odd and at least 3 for a band

        Returns:
            1-D array of wavelengths; a single node for a monochromatic profile
        """
        if self.kind == "monochromatic":
            return np.array([self.center])
        if n < 3 or n % 2 == 0:
            raise InvalidInputError(f"band quadrature needs an odd node count >= 3, got {n}")
        lo, hi = self.bounds
        return np.linspace(lo, hi, n)


@dataclass(frozen=True)
class SlitModulation:
    """Modulation function m(x) of the two-slit screen."""

    kind: str
    centers: tuple
    widths: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in MODULATION_KINDS:
            raise InvalidInputError(f"unknown slit modulation kind: {self.kind!r}")
        if len(self.centers) != 2 or self.centers[0] == self.centers[1]:
            raise InvalidInputError("slit modulation needs two distinct centers")
        if self.kind == "hat-pair" and not all(w > 0 for w in self.widths):
            raise InvalidInputError(f"hat-pair widths must be positive, got {self.widths}")

    @property
    def separation(self):
        return abs(self.centers[1] - self.centers[0])

    @property
    def mean_width(self):
        return (self.widths[0] + self.widths[1]) / 2

    def transmission(self, x):
        """
        Evaluate m(x) for a hat pair: 1 inside either slit, 0 elsewhere.

        Delta pairs have no pointwise transmission and raise.
        """
        if self.kind == "delta-pair":
            raise InvalidInputError("delta-pair modulation has no pointwise transmission")
        x = np.asarray(x, dtype=float)
        inside = np.zeros(x.shape, dtype=bool)
        for center, width in zip(self.centers, self.widths):
            inside |= np.abs(x - center) <= width / 2
        return inside.astype(float)


def slit_modulation(geom, kind="hat-pair"):
    """
    Build the modulation used by the optical formulas: slits at ±d̄/2.

    Args:
        geom: ExperimentGeometry
        kind: "delta-pair" or "hat-pair"

    Returns:
        SlitModulation
    """
    a_bar = (geom.a1 + geom.a2) / 2
    half = (geom.d + a_bar) / 2
    widths = (geom.a1, geom.a2) if kind == "hat-pair" else (0.0, 0.0)
    return SlitModulation(kind, (-half, half), widths)


@dataclass(frozen=True)
class FresnelKernel:
    """Fresnel point-spread factor exp(ik(x - ξ)²/2L) over a distance L."""

    distance: float
    k: float

    def __post_init__(self):
        if not self.distance > 0 or not self.k > 0:
            raise InvalidInputError("Fresnel kernel needs positive distance and wavenumber")

    def __call__(self, x, xi=0.0):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * self.k * (x - xi) ** 2 / (2 * self.distance))

    def cross_phase(self, x1, x2):
        """
        Phase factor K(x1)·K*(x2) = exp(ik(x1² - x2²)/2L).

        Exactly 1 where x1 == x2.
        """
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return np.exp(1j * self.k * (x1 ** 2 - x2 ** 2) / (2 * self.distance))
