"""
Phenomenological decoherence.

The environment states attached to the two slit waves drift apart; only the
modulus of their overlap, |α_t| = exp(-t/τ_c), reaches the detector. It
damps the interference term by the coherence degree

    Λ_t = 2|α_t|/(1 + |α_t|²) = sech(t/τ_c).
"""

import math
from dataclasses import dataclass

from errors import InvalidInputError

DECOHERENCE_MODES = ("lambda-direct", "tau-c")


@dataclass(frozen=True)
class DecoherenceModel:
    """
    Either a fixed coherence degree or a coherence time.

    Args:
        mode: "lambda-direct" or "tau-c"
        coherence: Λ in [0, 1] for lambda-direct
        tau_c: Coherence time in s for tau-c
        env_phase: Constant environment phase added to the fringe phase, rad
    """

    mode: str = "lambda-direct"
    coherence: float | None = 1.0
    tau_c: float | None = None
    env_phase: float = 0.0

    def __post_init__(self):
        if self.mode not in DECOHERENCE_MODES:
            raise InvalidInputError(f"unknown decoherence mode {self.mode!r}")
        if self.mode == "lambda-direct":
            if self.coherence is None or not 0.0 <= self.coherence <= 1.0:
                raise InvalidInputError(f"coherence degree must lie in [0, 1], got {self.coherence}")
        elif self.tau_c is None or not self.tau_c > 0:
            raise InvalidInputError(f"coherence time must be positive, got {self.tau_c}")
        if not math.isfinite(self.env_phase):
            raise InvalidInputError("environment phase must be finite")

    @classmethod
    def direct(cls, coherence, env_phase=0.0):
        return cls("lambda-direct", coherence, None, env_phase)

    @classmethod
    def from_coherence_time(cls, tau_c, env_phase=0.0):
        return cls("tau-c", None, tau_c, env_phase)

    def with_coherence(self, coherence):
        """Same environment phase, fixed coherence degree."""
        return DecoherenceModel.direct(coherence, self.env_phase)


def overlap_magnitude(t, tau_c):
    """|α_t| = exp(-t/τ_c)."""
    if not tau_c > 0:
        raise InvalidInputError(f"coherence time must be positive, got {tau_c}")
    return math.exp(-t / tau_c)


def lambda_from_overlap(alpha):
    """Coherence degree 2|α|/(1 + |α|²) from the environment overlap."""
    alpha = abs(alpha)
    if alpha > 1:
        raise InvalidInputError(f"environment overlap modulus cannot exceed 1, got {alpha}")
    return 2 * alpha / (1 + alpha ** 2)


def coherence_degree(deco, t):
    """
    Coherence degree Λ_t.

    Args:
        deco: DecoherenceModel
        t: Time since the beam left the slits, in s

    Returns:
        Stored Λ in lambda-direct mode, sech(t/τ_c) in tau-c mode
    """
    if t < 0:
        raise InvalidInputError(f"time must be nonnegative, got {t}")
    if deco.mode == "lambda-direct":
        return float(deco.coherence)
    ratio = t / deco.tau_c
    # cosh overflows past ~710
    if ratio > 700:
        return 0.0
    return 1.0 / math.cosh(ratio)


def tau_c_from_lambda(coherence, t):
    """
    Coherence time that produces Λ after time t, τ_c = t / arcsech(Λ).

    Args:
        coherence: Λ in the open interval (0, 1)
        t: Positive time in s

    Returns:
        τ_c in s; math.inf when arcsech(Λ) underflows to zero
    """
    if not 0.0 < coherence < 1.0:
        raise InvalidInputError(f"coherence degree must lie in (0, 1), got {coherence}")
    if not t > 0:
        raise InvalidInputError(f"time must be positive, got {t}")
    # asinh(sqrt(1/Λ² - 1)) keeps precision as Λ → 1
    arcsech = math.asinh(math.sqrt((1 - coherence) * (1 + coherence)) / coherence)
    if arcsech == 0.0:
        return math.inf
    return t / arcsech
