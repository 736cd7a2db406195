"""
Run configuration from flat ``key = value`` text.

Every key is optional; an empty file reproduces the reference setup. Values
of dimensional keys carry a unit suffix, see converters.units.
"""

import logging
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from errors import ConfigError, InvalidInputError
from optics.intensity import OPTICAL_MODELS
from physics.parameters import SLIT_CENTER_CONVENTIONS, ExperimentGeometry
from quantum.beam import WEIGHTINGS
from quantum.decoherence import DecoherenceModel
from quantum.packets import normalize_mode
from schema.validator import validate_run_config
from utils import read_text

from .units import parse_quantity, parse_range

logger = logging.getLogger(__name__)

QUANTUM_MODELS = ("quantum-quasiplane", "quantum-gaussian")
MODELS = OPTICAL_MODELS + QUANTUM_MODELS
DEFAULT_MODEL = "optical-finite-avg"

# Format: {config_key: (ExperimentGeometry field, kind)}
GEOMETRY_KEYS = {
    "a1": ("a1", "length"),
    "a2": ("a2", "length"),
    "d": ("d", "length"),
    "w": ("w", "length"),
    "w0": ("w0", "length"),
    "z": ("z", "length"),
    "v": ("v", "length"),
    "lambda": ("lambda_db", "length"),
    "dlambda": ("delta_lambda", "length"),
    "mass": ("particle_mass", "mass"),
    "b": ("envelope_distance", "length"),
}
# Format: {config_key: kind}; None marks dimensionless numbers
NUMERIC_KEYS = {
    "coherence": None,
    "tau_c": "time",
    "env_phase": None,
    "x_min": "length",
    "x_max": "length",
    "points": None,
}
# Format: {config_key: allowed values}
CHOICE_KEYS = {
    "slit_centers": SLIT_CENTER_CONVENTIONS,
    "model": MODELS,
    "mode": ("quasi-plane", "quasiplane", "gaussian"),
    "kicks": ("on", "off"),
    "weighting": WEIGHTINGS,
}
TEXT_KEYS = ("out",)
# Dimensional keys that may be zero or negative
SIGNED_KEYS = ("x_min", "x_max")


def model_for_mode(mode):
    """Quantum model tag of a slit-wave mode, e.g. "gaussian" → "quantum-gaussian"."""
    return "quantum-quasiplane" if normalize_mode(mode) == "quasi-plane" else "quantum-gaussian"


@dataclass(frozen=True)
class GridSpec:
    """Uniform detector grid, positions in m."""

    x_min: float = -500e-6
    x_max: float = 500e-6
    points: int = 4001

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise InvalidInputError(f"grid needs x_min < x_max, got {self.x_min} and {self.x_max}")
        if int(self.points) != self.points or self.points < 16:
            raise InvalidInputError(f"grid needs an integer number of points >= 16, got {self.points}")
        object.__setattr__(self, "points", int(self.points))

    @classmethod
    def from_text(cls, text):
        """Parse "MIN:MAX:N"; positions without a unit are in µm."""
        x_min, x_max, points = parse_range(text, "length", default_unit="um")
        return cls(x_min, x_max, points)

    def positions(self):
        return np.linspace(self.x_min, self.x_max, self.points)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one simulation run needs.

    Args:
        geometry: ExperimentGeometry
        model: One of MODELS
        deco: DecoherenceModel for quantum runs, or None for a coherent beam
        grid: GridSpec of the detector positions
        kicks: Per-slit transverse kicks in quantum runs
        weighting: Slit weighting in quantum runs
        out: Output path, or None for the default location
    """

    geometry: ExperimentGeometry = field(default_factory=ExperimentGeometry)
    model: str = DEFAULT_MODEL
    deco: DecoherenceModel | None = None
    grid: GridSpec = field(default_factory=GridSpec)
    kicks: bool = True
    weighting: str = "equal"
    out: str | None = None

    def __post_init__(self):
        is_valid, errors = validate_run_config(self.as_record())
        if not is_valid:
            raise InvalidInputError("; ".join(errors))

    @property
    def is_quantum(self):
        return self.model in QUANTUM_MODELS

    @property
    def mode(self):
        """Slit-wave mode of a quantum model, None for optical models."""
        if not self.is_quantum:
            return None
        return "quasi-plane" if self.model == "quantum-quasiplane" else "gaussian"

    def as_record(self):
        return {
            "geometry": self.geometry.as_record(),
            "model": self.model,
            "deco": asdict(self.deco) if self.deco is not None else None,
            "grid": asdict(self.grid),
            "kicks": self.kicks,
            "weighting": self.weighting,
            "out": self.out,
        }

    def with_overrides(self, **changes):
        """Copy with the given fields replaced; None values are ignored."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _parse_lines(text):
    """Yield (line_number, key, value_text) for every assignment."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"expected 'key = value', got {line!r}", number)
        yield number, key.lower(), value


def _convert(key, value):
    if key in GEOMETRY_KEYS:
        return parse_quantity(value, GEOMETRY_KEYS[key][1])
    if key in NUMERIC_KEYS:
        return parse_quantity(value, NUMERIC_KEYS[key])
    if key in CHOICE_KEYS:
        if value not in CHOICE_KEYS[key]:
            raise InvalidInputError(f"{key} must be one of {', '.join(CHOICE_KEYS[key])}, got {value!r}")
        return value
    return value


def parse_config(text):
    """
    Parse configuration text.

    Args:
        text: UTF-8 ``key = value`` lines; ``#`` starts a comment

    Returns:
        RunConfig with defaults for every key not given
    """
    values = {}
    lines = {}
    for number, key, value in _parse_lines(text):
        known = key in GEOMETRY_KEYS or key in NUMERIC_KEYS or key in CHOICE_KEYS or key in TEXT_KEYS
        if not known:
            raise ConfigError(f"unknown key {key!r}", number)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}, first set on line {lines[key]}", number)
        try:
            converted = _convert(key, value)
        except InvalidInputError as e:
            raise ConfigError(f"{key}: {e}", number) from e
        dimensional = key in GEOMETRY_KEYS or NUMERIC_KEYS.get(key) is not None
        if dimensional and key not in SIGNED_KEYS and not converted > 0:
            raise ConfigError(f"{key} must be positive, got {value}", number)
        values[key] = converted
        lines[key] = number

    def fail(message, key=None):
        raise ConfigError(message, lines.get(key))

    geometry_fields = {GEOMETRY_KEYS[k][0]: v for k, v in values.items() if k in GEOMETRY_KEYS}
    if "slit_centers" in values:
        geometry_fields["slit_centers"] = values["slit_centers"]
    try:
        geometry = ExperimentGeometry(**geometry_fields)
    except InvalidInputError as e:
        # Single values are checked above; what remains is dlambda < lambda
        fail(str(e), "dlambda" if "dlambda" in values else "lambda")

    model = values.get("model", DEFAULT_MODEL)
    if "mode" in values:
        from_mode = model_for_mode(values["mode"])
        if "model" in values and values["model"] != from_mode:
            fail(f"mode {values['mode']!r} contradicts model {values['model']!r}", "mode")
        model = from_mode

    deco = None
    if "coherence" in values and "tau_c" in values:
        fail("give either coherence or tau_c, not both", "tau_c")
    try:
        env_phase = values.get("env_phase", 0.0)
        if "coherence" in values:
            deco = DecoherenceModel.direct(values["coherence"], env_phase)
        elif "tau_c" in values:
            deco = DecoherenceModel.from_coherence_time(values["tau_c"], env_phase)
        elif "env_phase" in values:
            deco = DecoherenceModel.direct(1.0, env_phase)
    except InvalidInputError as e:
        fail(str(e), "coherence" if "coherence" in values else "tau_c")

    grid_fields = {k: values[k] for k in ("x_min", "x_max", "points") if k in values}
    try:
        grid = GridSpec(**grid_fields)
    except InvalidInputError as e:
        fail(str(e), "points" if "points" in values else "x_max")

    try:
        config = RunConfig(
            geometry=geometry,
            model=model,
            deco=deco,
            grid=grid,
            kicks=values.get("kicks", "on") == "on",
            weighting=values.get("weighting", "equal"),
            out=values.get("out"),
        )
    except InvalidInputError as e:
        culprit = next((k for k in ("coherence", "tau_c", "env_phase", "model") if k in values), None)
        fail(str(e), culprit)
    logger.debug("parsed %d configuration keys", len(values))
    return config


def load_config(path):
    """Read and parse a configuration file."""
    try:
        text = read_text(path)
    except OSError as e:
        raise ConfigError(f"cannot read configuration {path}: {e.strerror}") from e
    return parse_config(text)
