"""
Schema package for fringelab records.

This package provides the JSON schemas of the run configuration and the
profile file header, and the validators that check records against them.
"""

from .validator import load_schema, validate_run_config, validate_profile_header

__all__ = [
    'load_schema',
    'validate_run_config',
    'validate_profile_header'
]
