"""
Two-dimensional Gaussian wave packets under free evolution.

A packet is the product of two one-dimensional factors

    g(q, 0) = (2πσ²)^(-1/4) exp(-(q - q0)²/4σ² + i p q/ħ)

in x (transverse) and z (along the beam). Free evolution keeps the packet
Gaussian: the center moves with p/m, the width becomes complex,
σ² → σ²(1 + iτ) with τ = ħt/2mσ², and the modulus width grows as
σ·sqrt(1 + τ²).
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from errors import InvalidInputError
from physics.parameters import HBAR, NEUTRON_MASS
from utils import evaluate_chunked

SLIT_WAVE_MODES = ("quasi-plane", "gaussian")
# Packets covering the left and right slit in quasi-plane mode
QUASI_PLANE_PACKETS = (30, 31)


def normalize_mode(mode):
    """Accept "quasiplane" as a spelling of "quasi-plane"."""
    tag = "quasi-plane" if mode == "quasiplane" else mode
    if tag not in SLIT_WAVE_MODES:
        raise InvalidInputError(f"unknown slit-wave mode {mode!r}; expected one of {SLIT_WAVE_MODES}")
    return tag


def spreading_width(sigma0, t, mass=NEUTRON_MASS):
    """Modulus width of a free packet after time t: σ0·sqrt(1 + (ħt/2mσ0²)²)."""
    tau = HBAR * t / (2 * mass * sigma0 ** 2)
    return sigma0 * math.sqrt(1 + tau ** 2)


def _free_factor(q, q0, p, sigma0, t, mass):
    q = np.asarray(q, dtype=float)
    spread = 1 + 1j * (HBAR * t / (2 * mass * sigma0 ** 2))
    centre = q0 + p * t / mass
    norm = (2 * math.pi * sigma0 ** 2) ** -0.25 / np.sqrt(spread)
    exponent = -((q - centre) ** 2) / (4 * sigma0 ** 2 * spread)
    phase = p * (q - p * t / (2 * mass)) / HBAR
    return norm * np.exp(exponent + 1j * phase)


def gaussian_overlap_1d(q1, p1, sigma1, q2, p2, sigma2):
    """
    Overlap ⟨g1|g2⟩ of two normalized one-dimensional Gaussians.

    Args:
        q1, p1, sigma1: Center, momentum and width of the bra
        q2, p2, sigma2: Center, momentum and width of the ket

    Returns:
        Complex overlap; 1 for identical arguments
    """
    a1 = 1 / (4 * sigma1 ** 2)
    a2 = 1 / (4 * sigma2 ** 2)
    total = a1 + a2
    dk = (p2 - p1) / HBAR
    mean = (a1 * q1 + a2 * q2) / total
    prefactor = (4 * sigma1 ** 2 * sigma2 ** 2) ** -0.25 / math.sqrt(total)
    exponent = -a1 * a2 * (q1 - q2) ** 2 / total - dk ** 2 / (4 * total) + 1j * dk * mean
    return prefactor * np.exp(exponent)


@dataclass(frozen=True)
class GaussianPacket:
    """
    Normalized 2-D Gaussian times a complex weight, ∫|G|² = |amp|².

    Args:
        x0, z0: Initial center in m
        px, pz: Momentum in kg·m/s
        sigma_x0, sigma_z0: Initial widths in m
        amp: Complex weight
    """

    x0: float
    z0: float
    px: float
    pz: float
    sigma_x0: float
    sigma_z0: float
    amp: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not (self.sigma_x0 > 0 and self.sigma_z0 > 0):
            raise InvalidInputError(
                f"packet widths must be positive, got {self.sigma_x0}, {self.sigma_z0}")

    def evaluate(self, x, z, t=0.0, mass=NEUTRON_MASS):
        """Wave function at (x, z) after free evolution for time t."""
        fx = _free_factor(x, self.x0, self.px, self.sigma_x0, t, mass)
        fz = _free_factor(z, self.z0, self.pz, self.sigma_z0, t, mass)
        return self.amp * fx * fz

    def overlap(self, other):
        """⟨self|other⟩ in closed form."""
        sx = gaussian_overlap_1d(self.x0, self.px, self.sigma_x0, other.x0, other.px, other.sigma_x0)
        sz = gaussian_overlap_1d(self.z0, self.pz, self.sigma_z0, other.z0, other.pz, other.sigma_z0)
        return np.conj(self.amp) * other.amp * sx * sz

    def scaled(self, factor):
        return replace(self, amp=self.amp * factor)


@dataclass(frozen=True)
class PropagatedPacket:
    """A GaussianPacket evolved freely for a fixed time; callable on (x, z)."""

    packet: GaussianPacket
    t: float
    mass: float = NEUTRON_MASS

    def __call__(self, x, z):
        return self.packet.evaluate(x, z, self.t, self.mass)

    @property
    def center_x(self):
        return self.packet.x0 + self.packet.px * self.t / self.mass

    @property
    def center_z(self):
        return self.packet.z0 + self.packet.pz * self.t / self.mass

    def complex_variance(self, axis="x"):
        """σ0²(1 + iτ) along ``axis``."""
        sigma0 = self.packet.sigma_x0 if axis == "x" else self.packet.sigma_z0
        return sigma0 ** 2 * (1 + 1j * HBAR * self.t / (2 * self.mass * sigma0 ** 2))

    @property
    def sigma_x(self):
        """Modulus width along x, |σ0²(1 + iτ)|/σ0."""
        return abs(self.complex_variance("x")) / self.packet.sigma_x0

    @property
    def sigma_z(self):
        return abs(self.complex_variance("z")) / self.packet.sigma_z0


def propagate_free(packet, t, mass=NEUTRON_MASS):
    """
    Free evolution of a packet.

    Args:
        packet: GaussianPacket
        t: Elapsed time in s, nonnegative
        mass: Particle mass in kg

    Returns:
        PropagatedPacket evaluating ψ(x, z, t)
    """
    if t < 0:
        raise InvalidInputError(f"propagation time must be nonnegative, got {t}")
    if not mass > 0:
        raise InvalidInputError(f"mass must be positive, got {mass}")
    return PropagatedPacket(packet, t, mass)


@dataclass(frozen=True)
class SlitAperture:
    center: float
    width: float
    label: str = ""


@dataclass(frozen=True)
class WaveSuperposition:
    """Coherent sum of Gaussian packets representing one slit's outgoing wave."""

    packets: tuple
    label: str = ""

    def __post_init__(self):
        if not self.packets:
            raise InvalidInputError("a wave superposition needs at least one packet")
        object.__setattr__(self, "packets", tuple(self.packets))

    def __len__(self):
        return len(self.packets)

    def gram_matrix(self):
        """Matrix of packet overlaps ⟨G_i|G_j⟩ including the weights."""
        n = len(self.packets)
        gram = np.empty((n, n), dtype=complex)
        for i, left in enumerate(self.packets):
            for j, right in enumerate(self.packets):
                gram[i, j] = left.overlap(right)
        return gram

    def norm_squared(self):
        """⟨Ψ|Ψ⟩ from closed-form Gaussian overlaps; conserved by free evolution."""
        return float(np.sum(self.gram_matrix()).real)

    def normalized(self):
        norm = math.sqrt(self.norm_squared())
        if norm == 0.0:
            raise InvalidInputError("cannot normalize a vanishing superposition")
        return WaveSuperposition(tuple(p.scaled(1 / norm) for p in self.packets), self.label)

    def evaluate(self, x, z, t=0.0, mass=NEUTRON_MASS):
        """
        Ψ(x, z, t) summed over packets.

        A 1-D x grid at fixed z is evaluated in chunks on the worker pool.
        """
        evolved = [propagate_free(p, t, mass) for p in self.packets]

        def total(xs, zs=z):
            result = np.zeros(np.broadcast(np.asarray(xs), np.asarray(zs)).shape, dtype=complex)
            for packet in evolved:
                result += packet(xs, zs)
            return result

        if np.ndim(x) == 1 and np.ndim(z) == 0:
            return evaluate_chunked(total, x)
        return total(x)


def build_slit_wave(slit, mode, kick, geom, n_packets=QUASI_PLANE_PACKETS[0]):
    """
    Outgoing wave of one slit.

    In quasi-plane mode N equal-weight packets of width a/N are spread over
    the slit with spacing a/(N - 1). In gaussian mode a single packet of
    width a/4 sits at the slit center. All packets start at z = 0 with
    width 2ā along z and carry the slit's momentum.

    Args:
        slit: SlitAperture
        mode: "quasi-plane" or "gaussian"
        kick: (px, pz) momentum of the slit's wave
        geom: ExperimentGeometry, for the mean slit width ā
        n_packets: Packet count for quasi-plane mode

    Returns:
        Normalized WaveSuperposition labelled with the slit
    """
    mode = normalize_mode(mode)
    if not slit.width > 0:
        raise InvalidInputError(f"slit width must be positive, got {slit.width}")
    px, pz = kick
    sigma_z = 2 * (geom.a1 + geom.a2) / 2

    if mode == "gaussian":
        packets = (GaussianPacket(slit.center, 0.0, px, pz, slit.width / 4, sigma_z),)
    else:
        if n_packets < 2:
            raise InvalidInputError(f"quasi-plane mode needs at least 2 packets, got {n_packets}")
        spacing = slit.width / (n_packets - 1)
        sigma_x = slit.width / n_packets
        start = slit.center - slit.width / 2
        packets = tuple(
            GaussianPacket(start + j * spacing, 0.0, px, pz, sigma_x, sigma_z)
            for j in range(n_packets)
        )
    return WaveSuperposition(packets, slit.label).normalized()
