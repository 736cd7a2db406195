import pytest

from errors import ConfigError, InvalidInputError
from converters import GridSpec, RunConfig, load_config, parse_config, parse_quantity
from physics import ATOMIC_MASS_UNIT, ExperimentGeometry


def test_quantities():
    assert parse_quantity("18.45A", "length") == pytest.approx(1.845e-9)
    assert parse_quantity("18.45 Å", "length") == pytest.approx(1.845e-9)
    assert parse_quantity("21.9um", "length") == pytest.approx(21.9e-6)
    assert parse_quantity("21.9µm", "length") == pytest.approx(21.9e-6)
    assert parse_quantity("5 m", "length") == 5.0
    assert parse_quantity("25ms", "time") == pytest.approx(0.025)
    assert parse_quantity("1.00866u", "mass") == pytest.approx(1.00866 * ATOMIC_MASS_UNIT)
    assert parse_quantity("0.63") == 0.63
    assert parse_quantity("-12", "length", default_unit="um") == pytest.approx(-12e-6)


@pytest.mark.parametrize("text, kind", [
    ("5", "length"),
    ("5 furlong", "length"),
    ("five m", "length"),
    ("0.5 s", None),
    ("1e", None),
])
def test_bad_quantities(text, kind):
    with pytest.raises(InvalidInputError):
        parse_quantity(text, kind)


def test_empty_config_gives_reference_setup():
    config = parse_config("")
    assert config.geometry == ExperimentGeometry()
    assert config.geometry.a1 == pytest.approx(21.9e-6)
    assert config.model == "optical-finite-avg"
    assert config.deco is None
    assert config.grid == GridSpec()
    assert config.kicks


def test_wavelength_with_angstrom_suffix():
    config = parse_config("lambda = 18.45A\n")
    assert config.geometry.lambda_db == pytest.approx(1.845e-9)


def test_full_quantum_config():
    text = """
    # quantum run
    a1 = 21.9 um
    b = 5 m          # envelope distance
    slit_centers = offset
    mode = quasiplane
    coherence = 0.63
    env_phase = 0.2
    kicks = off
    weighting = width
    x_min = -300um
    x_max = 0.3mm
    points = 601
    out = results/run.csv
    """
    config = parse_config(text)
    assert config.model == "quantum-quasiplane"
    assert config.mode == "quasi-plane"
    assert config.geometry.envelope_distance == 5.0
    assert config.geometry.slit_centers == "offset"
    assert config.deco.coherence == 0.63
    assert config.deco.env_phase == 0.2
    assert not config.kicks
    assert config.weighting == "width"
    assert config.grid.x_min == pytest.approx(-300e-6)
    assert config.grid.x_max == pytest.approx(300e-6)
    assert config.grid.points == 601
    assert config.out == "results/run.csv"


def test_coherence_time_config():
    config = parse_config("model = quantum-gaussian\ntau_c = 22.5 ms\n")
    assert config.deco.mode == "tau-c"
    assert config.deco.tau_c == pytest.approx(0.0225)
    assert config.deco.env_phase == 0.0


def test_zero_coherence_is_allowed():
    assert parse_config("mode = gaussian\ncoherence = 0\n").deco.coherence == 0.0


@pytest.mark.parametrize("text, line", [
    ("a1 = -3um", 1),
    ("\n# comment\nwidth = 3um", 3),
    ("a1 = 3", 1),
    ("a1 = 3 furlong", 1),
    ("z = 5m\nz = 6m", 2),
    ("model = laser", 1),
    ("kicks = maybe", 1),
    ("points = many", 1),
    ("just a line", 1),
    ("mode = gaussian\nmodel = optical-delta", 1),
    ("mode = gaussian\ncoherence = 0.5\ntau_c = 1s", 3),
    ("mode = gaussian\ncoherence = 1.5", 2),
    ("tau_c = 0s", 1),
    ("lambda = 18.45A\n# band\ndlambda = 20A", 3),
    ("dlambda = 20A\nlambda = 18.45A", 1),
    ("lambda = 2A", 1),
    ("model = optical-delta\n\ncoherence = 0.5", 3),
])
def test_config_errors_name_the_line(text, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_cross_key_errors():
    with pytest.raises(ConfigError):
        parse_config("x_min = 1um\nx_max = -1um")
    with pytest.raises(ConfigError):
        parse_config("coherence = 0.5")
    with pytest.raises(ConfigError):
        parse_config("points = 8")


def test_overrides_and_validation():
    config = parse_config("mode = gaussian")
    updated = config.with_overrides(kicks=False, out=None)
    assert not updated.kicks
    assert updated.out is None
    with pytest.raises(InvalidInputError):
        RunConfig(model="optical-laser")


def test_grid_from_text():
    grid = GridSpec.from_text("-500:500:4001")
    assert (grid.x_min, grid.x_max, grid.points) == (pytest.approx(-500e-6), pytest.approx(500e-6), 4001)
    grid = GridSpec.from_text("-0.3mm:0.3mm:61")
    assert (grid.x_min, grid.x_max, grid.points) == (pytest.approx(-300e-6), pytest.approx(300e-6), 61)
    with pytest.raises(InvalidInputError):
        GridSpec.from_text("-500:500")
    with pytest.raises(InvalidInputError):
        GridSpec.from_text("500:-500:100")
    with pytest.raises(InvalidInputError):
        GridSpec.from_text("-500:500:10.5")
    assert GridSpec(points=32).positions().size == 32


def test_shipped_setup_file_matches_defaults():
    import os

    path = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "reference_setup.cfg")
    config = load_config(path)
    reference = ExperimentGeometry()
    for name in ("a1", "a2", "d", "w", "w0", "z", "v", "lambda_db", "delta_lambda"):
        assert getattr(config.geometry, name) == pytest.approx(getattr(reference, name), rel=1e-12)
    assert config.geometry.particle_mass == pytest.approx(reference.particle_mass, rel=1e-5)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.cfg"))
