"""
Converters between text files and fringelab objects.

This package contains the unit parser, the ``key = value`` run
configuration reader, and the CSV readers and writers for scans and
profiles.
"""

from .units import LENGTH_UNITS, MASS_UNITS, TIME_UNITS, parse_quantity, parse_range, split_quantity
from .config_text import MODELS, QUANTUM_MODELS, GridSpec, RunConfig, load_config, model_for_mode, parse_config
from .csv_io import (
    ProfileFile,
    profile_header,
    read_intensity_csv,
    read_profile_csv,
    read_profile_header,
    read_profile_file,
    read_scan_csv,
    write_profile_csv
)

__all__ = [
    'LENGTH_UNITS',
    'MASS_UNITS',
    'TIME_UNITS',
    'parse_quantity',
    'parse_range',
    'split_quantity',
    'MODELS',
    'QUANTUM_MODELS',
    'GridSpec',
    'RunConfig',
    'load_config',
    'model_for_mode',
    'parse_config',
    'ProfileFile',
    'profile_header',
    'read_intensity_csv',
    'read_profile_csv',
    'read_profile_header',
    'read_profile_file',
    'read_scan_csv',
    'write_profile_csv'
]
