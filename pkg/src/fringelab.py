#!/usr/bin/env python3
"""
fringelab command line.

Simulates double-slit detector profiles with the optical and quantum
models, extracts fringe visibilities, fits the coherence degree to scan
data and compares profile files.

Exit codes: 0 on success, 2 on invalid input, 3 on numerical failure.
"""

import argparse
import logging
import math
import os
import sys
from dataclasses import replace

import numpy as np

from converters import (
    GridSpec,
    RunConfig,
    load_config,
    model_for_mode,
    parse_quantity,
    parse_range,
    read_intensity_csv,
    read_profile_csv,
    read_scan_csv,
    write_profile_csv,
)
from errors import InvalidInputError, NoFringesError, NumericalError
from evaluation import (
    compare_profiles,
    fit_coherence_degree,
    fringe_spacing,
    fringe_visibility,
    visibility_or_zero,
    visibility_sweep,
)
from optics import OPTICAL_MODELS, optical_profile
from physics import derive_parameters
from quantum import WEIGHTINGS, DecoherenceModel, build_beam, quantum_profile, tau_c_from_lambda
from utils import create_logger, read_text, setup_logging, write_text

logger = logging.getLogger("fringelab")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
RESULTS_DIR = "results"
DEFAULT_QUANTUM_MODE = "gaussian"
# Options whose values are MIN:MAX:N or START:STOP:STEP ranges
RANGE_OPTIONS = ("--grid", "--lambda", "--sweep")


def fmt(value):
    """Six significant digits, the precision of every printed number."""
    return f"{value:.6g}"


def print_values(pairs, stream=None):
    for key, value in pairs:
        if isinstance(value, bool):
            text = str(value).lower()
        elif isinstance(value, (int, float)):
            text = fmt(value)
        else:
            text = str(value)
        print(f"{key}={text}", file=stream or sys.stdout)


def _read_file(path):
    try:
        return read_text(path)
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from e


def _optical_model(name):
    tag = name if name.startswith("optical-") else f"optical-{name}"
    if tag not in OPTICAL_MODELS:
        raise InvalidInputError(f"unknown optical model {name!r}; expected one of {', '.join(OPTICAL_MODELS)}")
    return tag


def _progress(args):
    return not args.quiet and sys.stderr.isatty()


def base_config(args):
    """Config file (or defaults) with the grid and output flags applied."""
    config = load_config(args.config) if args.config else RunConfig()
    grid = GridSpec.from_text(args.grid) if getattr(args, "grid", None) else None
    return config.with_overrides(grid=grid, out=getattr(args, "out", None))


def quantum_config(args):
    """Run config for the quantum subcommands; flags override the config file."""
    config = base_config(args)
    mode = args.mode or config.mode or DEFAULT_QUANTUM_MODE
    coherence = getattr(args, "coherence", None)
    tau_c = getattr(args, "tau_c", None)
    if coherence is not None and tau_c is not None:
        raise InvalidInputError("give either --lambda or --tau-c, not both")

    deco = config.deco
    env_phase = args.env_phase if args.env_phase is not None else (deco.env_phase if deco else 0.0)
    if coherence is not None:
        deco = DecoherenceModel.direct(coherence, env_phase)
    elif tau_c is not None:
        deco = DecoherenceModel.from_coherence_time(parse_quantity(tau_c, "time", default_unit="s"), env_phase)
    elif deco is not None:
        deco = replace(deco, env_phase=env_phase)
    elif args.env_phase is not None:
        deco = DecoherenceModel.direct(1.0, env_phase)

    return RunConfig(
        geometry=config.geometry,
        model=model_for_mode(mode),
        deco=deco,
        grid=config.grid,
        kicks=config.kicks and not args.no_kicks,
        weighting=args.weighting or config.weighting,
        out=config.out,
    )


def output_path(config):
    return config.out or os.path.join(RESULTS_DIR, f"{config.model}.csv")


def report_profile(profile, path, log_message, logs, units="relative"):
    """Write a profile file and print its spacing and visibility."""
    # Measure fringes
    try:
        spacing = fringe_spacing(profile)
    except NoFringesError as e:
        logger.warning("fringe spacing unavailable: %s", e)
        spacing = math.nan
    visibility = visibility_or_zero(profile)
    log_message(f"fringe spacing {fmt(spacing * 1e6)} um, visibility {fmt(visibility)}")

    # Save results
    write_text(path, write_profile_csv(profile, units=units, log=logs))
    print_values([
        ("model", profile.meta.get("model", "unknown")),
        ("out", path),
        ("fringe_spacing_um", spacing * 1e6),
        ("visibility", visibility),
    ])


def cmd_simulate_optical(args):
    config = base_config(args)
    if args.model:
        model = _optical_model(args.model)
    elif config.model in OPTICAL_MODELS:
        model = config.model
    else:
        model = "optical-finite-avg"
    config = replace(config, model=model, deco=None)

    log_message, logs = create_logger()
    log_message(f"simulating {model} on {config.grid.points} points")
    profile = optical_profile(model, config.geometry, config.grid.positions())
    report_profile(profile, output_path(config), log_message, logs)
    return EXIT_OK


def cmd_simulate_quantum(args):
    config = quantum_config(args)
    log_message, logs = create_logger()
    coherence = "coherent" if config.deco is None else f"decoherence {config.deco.mode}"
    log_message(f"simulating {config.model} ({coherence}) on {config.grid.points} points")
    profile = quantum_profile(config.geometry, config.mode, config.grid.positions(), config.deco,
                              kicks=config.kicks, weighting=config.weighting)
    report_profile(profile, output_path(config), log_message, logs)
    return EXIT_OK


def cmd_visibility(args):
    profile = read_intensity_csv(_read_file(args.data))
    result = fringe_visibility(profile)
    print_values([
        ("visibility", result.visibility),
        ("x_max_um", result.x_max * 1e6),
        ("x_min_left_um", result.x_min_left * 1e6),
        ("x_min_right_um", result.x_min_right * 1e6),
        ("i_max", result.i_max),
        ("i_min", result.i_min),
    ])
    return EXIT_OK


def cmd_fit(args):
    config = quantum_config(args)
    # Load scan data
    data = read_scan_csv(_read_file(args.data))
    template = config.deco or DecoherenceModel.direct(1.0)

    # Run fit
    beam = build_beam(config.geometry, config.mode, kicks=config.kicks, weighting=config.weighting)
    result = fit_coherence_degree(beam, template, data, config.geometry, progress=_progress(args))

    pairs = list(result.as_record().items())
    if 0.0 < result.coherence < 1.0:
        pairs.append(("tau_c_s", tau_c_from_lambda(result.coherence, derive_parameters(config.geometry).t_flight)))
    print_values(pairs)

    # Save fitted profile in count units
    if args.out:
        log_message, logs = create_logger()
        log_message(f"fitted {config.model} to {args.data}, coherence {fmt(result.coherence)}")
        profile = quantum_profile(config.geometry, config.mode, config.grid.positions(),
                                  template.with_coherence(result.coherence),
                                  kicks=config.kicks, weighting=config.weighting)
        fitted = profile.with_values(result.scale * profile.values + result.background,
                                     scale=result.scale, background=result.background)
        write_text(args.out, write_profile_csv(fitted, units="counts", log=logs))
    return EXIT_OK


def coherence_values(text):
    """Λ values from "START:STOP:STEP", inclusive of STOP."""
    start, stop, step = parse_range(text)
    if not step > 0 or stop < start:
        raise InvalidInputError(f"sweep needs START <= STOP and STEP > 0, got {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = np.minimum(start + step * np.arange(count), stop)
    if values[0] < 0 or values[-1] > 1:
        raise InvalidInputError(f"coherence degrees must lie in [0, 1], got {text!r}")
    return values


def cmd_sweep(args):
    text = args.sweep or args.coherence_range
    if not text:
        raise InvalidInputError("sweep needs --lambda START:STOP:STEP or --sweep START:STOP:STEP")
    values = coherence_values(text)
    config = quantum_config(args)
    xs = config.grid.positions()
    template = config.deco or DecoherenceModel.direct(1.0)

    def evaluate(coherence):
        return quantum_profile(config.geometry, config.mode, xs, template.with_coherence(coherence),
                               kicks=config.kicks, weighting=config.weighting)

    rows = visibility_sweep(values, evaluate, progress=_progress(args))

    # Print table
    print("coherence,visibility")
    for coherence, visibility in rows:
        print(f"{fmt(coherence)},{fmt(visibility)}")
    return EXIT_OK


def cmd_compare(args):
    a = read_profile_csv(_read_file(args.first))
    b = read_profile_csv(_read_file(args.second))
    result = compare_profiles(a, b)
    print_values([
        ("rms", result.rms),
        ("max_abs", result.max_abs),
        ("visibility_delta", result.visibility_delta),
    ])
    return EXIT_OK


def attach_option_values(argv):
    """
    Join "--grid -300:300:1201" into "--grid=-300:300:1201".

    argparse takes a value starting with "-" that is not a plain number for
    the next option, so grid ranges with a negative start need the joined form.
    """
    joined = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in RANGE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and ":" in argv[i + 1]:
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def build_parser():
    parser = argparse.ArgumentParser(prog="fringelab", description="Double-slit cold-neutron diffraction models")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="More log output on standard error (-vv for debug)")

    configured = argparse.ArgumentParser(add_help=False)
    configured.add_argument("--config", help="Path to a key = value configuration file")
    configured.add_argument("--grid", help="Detector grid MIN:MAX:N, positions in um unless suffixed")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", help="Output profile path")

    progress = argparse.ArgumentParser(add_help=False)
    progress.add_argument("--quiet", action="store_true", help="No progress bars")

    quantum = argparse.ArgumentParser(add_help=False)
    quantum.add_argument("--mode", choices=["quasi-plane", "quasiplane", "gaussian"],
                         help="Slit-wave representation (default gaussian)")
    quantum.add_argument("--env-phase", type=float, help="Environment phase added to the fringe phase, rad")
    quantum.add_argument("--no-kicks", action="store_true", help="Drop the per-slit transverse kicks")
    quantum.add_argument("--weighting", choices=list(WEIGHTINGS), help="Slit weighting (default equal)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("simulate-optical", parents=[common, configured, output],
                               help="Optical-model profile, written to results/<model>.csv by default")
    p.add_argument("--model", help="delta, delta-avg, finite or finite-avg (optional optical- prefix)")
    p.set_defaults(handler=cmd_simulate_optical)

    p = subparsers.add_parser("simulate-quantum", parents=[common, configured, output, quantum],
                               help="Quantum-model profile, written to results/<model>.csv by default")
    p.add_argument("--lambda", dest="coherence", type=float, help="Coherence degree in [0, 1]")
    p.add_argument("--tau-c", dest="tau_c", help="Coherence time, seconds unless suffixed (s, ms)")
    p.set_defaults(handler=cmd_simulate_quantum)

    p = subparsers.add_parser("visibility", parents=[common], help="Visibility of a profile or scan file")
    p.add_argument("--data", required=True, help="Profile file or x_um,counts scan file")
    p.set_defaults(handler=cmd_visibility)

    p = subparsers.add_parser("fit", parents=[common, configured, output, progress, quantum],
                               help="Fit the coherence degree to a scan; --out writes the fitted profile")
    p.add_argument("--data", required=True, help="Scan file with columns x_um,counts[,err]")
    p.set_defaults(handler=cmd_fit)

    p = subparsers.add_parser("sweep", parents=[common, configured, progress, quantum],
                               help="Visibility over coherence degrees")
    p.add_argument("--lambda", dest="coherence_range", help="Coherence grid START:STOP:STEP")
    p.add_argument("--sweep", help="Same as --lambda")
    p.set_defaults(handler=cmd_sweep)

    p = subparsers.add_parser("compare", parents=[common], help="Compare two profile files")
    p.add_argument("first", help="First profile file")
    p.add_argument("second", help="Second profile file")
    p.set_defaults(handler=cmd_compare)
    return parser


def main(argv=None):
    """
    Run one subcommand.

    Args:
        argv: Argument list without the program name; sys.argv[1:] when None

    Returns:
        Exit code
    """
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(attach_option_values(argv))
    setup_logging(args.verbose)
    try:
        return args.handler(args)
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        # Unwritable output paths
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
