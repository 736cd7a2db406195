"""
Experiment geometry and the quantities derived from it.

All values are SI. The default geometry is the cold-neutron double-slit
setup: slits 21.9 µm and 22.5 µm wide around a 104.1 µm wire, 20 µm source
and scanning slits, 5 m arms, λ = 18.45 Å with a 2.80 Å full bandwidth.
"""

import math
from dataclasses import dataclass, fields, replace

from scipy import constants

from errors import GeometryError

HBAR = constants.hbar
PLANCK = constants.h
NEUTRON_MASS = constants.physical_constants["neutron mass"][0]
ATOMIC_MASS_UNIT = constants.physical_constants["atomic mass constant"][0]

# Measured and fitted reference values for the neutron experiment
EXPERIMENTAL_VISIBILITY = 0.583
REFERENCE_COHERENCE_TIME = 5.08e-2
REFERENCE_COHERENCE_DEGREE = 0.63

SLIT_CENTER_CONVENTIONS = ("symmetric", "offset")

LENGTH_FIELDS = ("a1", "a2", "d", "w", "w0", "z", "v", "lambda_db", "delta_lambda")


@dataclass(frozen=True)
class ExperimentGeometry:
    """
    Double-slit setup, source slit C to slits O to scanning slit D.

    ``envelope_distance`` is the projection distance b of the finite-slit
    envelopes; None selects z·v/(z+v).
    """

    a1: float = 21.9e-6
    a2: float = 22.5e-6
    d: float = 104.1e-6
    w: float = 20e-6
    w0: float = 20e-6
    z: float = 5.0
    v: float = 5.0
    lambda_db: float = 18.45e-10
    delta_lambda: float = 2.80e-10
    particle_mass: float = NEUTRON_MASS
    slit_centers: str = "symmetric"
    envelope_distance: float | None = None

    def __post_init__(self):
        is_valid, errors = validate_geometry(self)
        if not is_valid:
            raise GeometryError("; ".join(errors))

    def scaled(self, factor):
        """Return a copy with every length multiplied by ``factor``."""
        if not factor > 0:
            raise GeometryError(f"scale factor must be positive, got {factor}")
        changes = {name: getattr(self, name) * factor for name in LENGTH_FIELDS}
        if self.envelope_distance is not None:
            changes["envelope_distance"] = self.envelope_distance * factor
        return replace(self, **changes)

    def as_record(self):
        """Plain dict of all fields, for headers and schema validation."""
        return {f.name: getattr(self, f.name) for f in fields(self)}


def validate_geometry(geom):
    """
    Check the geometry invariants.

    Args:
        geom: ExperimentGeometry (or any object with the same attributes)

    Returns:
        A tuple (is_valid, errors) where errors lists every violated invariant
    """
    errors = []
    for name in LENGTH_FIELDS:
        value = getattr(geom, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            errors.append(f"{name} must be a positive finite length, got {value!r}")
    mass = geom.particle_mass
    if not (isinstance(mass, (int, float)) and math.isfinite(mass) and mass > 0):
        errors.append(f"particle_mass must be positive, got {mass!r}")
    if not errors and geom.delta_lambda >= geom.lambda_db:
        errors.append("delta_lambda must be smaller than lambda_db")
    if geom.slit_centers not in SLIT_CENTER_CONVENTIONS:
        errors.append(f"slit_centers must be one of {SLIT_CENTER_CONVENTIONS}, got {geom.slit_centers!r}")
    b = geom.envelope_distance
    if b is not None and not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0):
        errors.append(f"envelope_distance must be positive, got {b!r}")
    return len(errors) == 0, errors


@dataclass(frozen=True)
class DerivedParams:
    k: float
    d_bar: float
    a_bar: float
    velocity: float
    t_flight: float
    p_beam: float
    px1: float
    px2: float
    pz1: float
    pz2: float
    fringe_spacing: float
    x1_center: float
    x2_center: float
    center_separation: float
    envelope_distance: float
    source_sinc_argument: float
    detector_sinc_argument: float


def slit_center_positions(geom):
    """
    Centers of the left and right slits.

    The symmetric convention places them at -(d + a1)/2 and (d + a2)/2 so
    that their separation is d̄. The offset convention uses (a1 - d)/2 and
    (a2 + d)/2.
    """
    if geom.slit_centers == "offset":
        return (geom.a1 - geom.d) / 2, (geom.a2 + geom.d) / 2
    return -(geom.d + geom.a1) / 2, (geom.d + geom.a2) / 2


def derive_parameters(geom):
    """
    Compute wavenumber, effective slit separation, flight time and kicks.

    Args:
        geom: ExperimentGeometry

    Returns:
        DerivedParams
    """
    is_valid, errors = validate_geometry(geom)
    if not is_valid:
        raise GeometryError("; ".join(errors))

    k = 2 * math.pi / geom.lambda_db
    a_bar = (geom.a1 + geom.a2) / 2
    d_bar = geom.d + a_bar
    p_beam = PLANCK / geom.lambda_db
    velocity = p_beam / geom.particle_mass
    t_flight = geom.v / velocity

    # Kicks push each slit's wave away from the wire
    px1 = -HBAR / geom.a1
    px2 = HBAR / geom.a2
    pz1 = math.sqrt(p_beam ** 2 - px1 ** 2)
    pz2 = math.sqrt(p_beam ** 2 - px2 ** 2)

    # Slit centers and envelope projection distance
    x1, x2 = slit_center_positions(geom)
    b = geom.envelope_distance
    if b is None:
        b = geom.z * geom.v / (geom.z + geom.v)

    return DerivedParams(
        k=k,
        d_bar=d_bar,
        a_bar=a_bar,
        velocity=velocity,
        t_flight=t_flight,
        p_beam=p_beam,
        px1=px1,
        px2=px2,
        pz1=pz1,
        pz2=pz2,
        fringe_spacing=geom.v * geom.lambda_db / d_bar,
        x1_center=x1,
        x2_center=x2,
        center_separation=x2 - x1,
        envelope_distance=b,
        source_sinc_argument=k * d_bar * geom.w / (2 * geom.z),
        detector_sinc_argument=k * d_bar * geom.w0 / (2 * geom.v),
    )
