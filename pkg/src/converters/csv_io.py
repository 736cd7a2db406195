"""
Plain-text CSV exchange of scans and profiles.

Scan files carry the columns ``x_um,counts[,err]``. Profile files start
with a YAML header written as ``# `` comment lines, followed by the columns
``x_um,intensity``. Numbers are written with 12 significant digits, so a
profile read back and written again gives identical text.
"""

from dataclasses import dataclass

import numpy as np
import yaml

from errors import DataFormatError
from evaluation.profile import IntensityProfile, ScanDataset
from schema.validator import validate_profile_header

PROFILE_FORMAT = "fringelab-profile"
PROFILE_VERSION = 1
SCAN_COLUMNS = ("x_um", "counts")
SCAN_COLUMNS_WITH_ERRORS = ("x_um", "counts", "err")
PROFILE_COLUMNS = ("x_um", "intensity")
UM = 1e-6


def _format_number(value):
    return f"{value:.12g}"


def _data_lines(text):
    """Yield (line_number, fields) for non-comment, non-blank lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, [part.strip() for part in line.split(",")]


def _read_table(text, allowed_headers):
    """
    Parse a header row and numeric rows.

    Returns:
        Tuple (columns, rows) with rows a 2-D float array
    """
    lines = _data_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise DataFormatError("no header row found") from None
    columns = tuple(header)
    if columns not in allowed_headers:
        expected = " or ".join(",".join(h) for h in allowed_headers)
        raise DataFormatError(f"header must be {expected}, got {','.join(columns)}", number)

    # Numeric rows
    rows = []
    previous = None
    for number, fields in lines:
        if len(fields) != len(columns):
            raise DataFormatError(f"expected {len(columns)} fields, got {len(fields)}", number)
        try:
            row = [float(value) for value in fields]
        except ValueError:
            raise DataFormatError(f"malformed number in {','.join(fields)!r}", number) from None
        if not all(np.isfinite(row)):
            raise DataFormatError("non-finite number", number)
        if previous is not None and not row[0] > previous:
            raise DataFormatError(f"positions must be strictly increasing, {row[0]:g} follows {previous:g}",
                                  number)
        if row[1] < 0:
            raise DataFormatError(f"negative value {row[1]:g}", number)
        previous = row[0]
        rows.append(row)
    if not rows:
        raise DataFormatError("no data rows found")
    return columns, np.array(rows, dtype=float)


def read_scan_csv(text):
    """
    Parse scan data.

    Args:
        text: CSV with header x_um,counts or x_um,counts,err; '#' lines are comments

    Returns:
        ScanDataset with positions in m
    """
    columns, rows = _read_table(text, (SCAN_COLUMNS, SCAN_COLUMNS_WITH_ERRORS))
    errors = rows[:, 2] if len(columns) == 3 else None
    return ScanDataset(rows[:, 0] * UM, rows[:, 1], errors)


def profile_header(profile, units="relative", log=None):
    """Header record written above the profile columns."""
    header = {
        "format": PROFILE_FORMAT,
        "version": PROFILE_VERSION,
        "model": profile.meta.get("model", "unknown"),
        "units": {"x": "um", "intensity": units},
        "meta": dict(profile.meta),
    }
    if log:
        header["log"] = list(log)
    return header


def write_profile_csv(profile, units="relative", log=None):
    """
    Render a profile file.

    Args:
        profile: IntensityProfile
        units: "relative", or "counts" for a profile scaled to data
        log: Optional run messages echoed into the header

    Returns:
        The file text
    """
    header = profile_header(profile, units, log)
    is_valid, errors = validate_profile_header(header)
    if not is_valid:
        raise DataFormatError("; ".join(errors))
    # Header as commented YAML, then the columns
    dumped = yaml.safe_dump(header, sort_keys=True, default_flow_style=False, allow_unicode=True)
    lines = [f"# {line}" for line in dumped.splitlines()]
    lines.append(",".join(PROFILE_COLUMNS))
    for x, value in zip(profile.xs, profile.values):
        lines.append(f"{_format_number(x / UM)},{_format_number(value)}")
    return "\n".join(lines) + "\n"


def _split_header(text):
    header_lines = []
    for raw in text.splitlines():
        if not raw.startswith("#"):
            break
        header_lines.append(raw[2:] if raw.startswith("# ") else raw[1:])
    return "\n".join(header_lines)


def read_profile_header(text):
    """Parse and validate the YAML header of a profile file."""
    try:
        header = yaml.safe_load(_split_header(text))
    except yaml.YAMLError as e:
        raise DataFormatError(f"malformed profile header: {e}") from e
    is_valid, errors = validate_profile_header(header)
    if not is_valid:
        raise DataFormatError("; ".join(errors))
    return header


def read_profile_csv(text):
    """
    Parse a profile file written by write_profile_csv.

    Returns:
        IntensityProfile carrying the header's meta record
    """
    header = read_profile_header(text)
    _, rows = _read_table(text, (PROFILE_COLUMNS,))
    return IntensityProfile(rows[:, 0] * UM, rows[:, 1], header["meta"])


@dataclass(frozen=True)
class ProfileFile:
    """A profile together with the header fields that are not part of its meta."""

    profile: IntensityProfile
    units: str = "relative"
    log: tuple = ()

    def to_text(self):
        return write_profile_csv(self.profile, units=self.units, log=list(self.log) or None)


def read_profile_file(text):
    """
    Parse a profile file keeping its units and run log.

    Returns:
        ProfileFile whose to_text() reproduces ``text`` for files written here
    """
    header = read_profile_header(text)
    profile = read_profile_csv(text)
    return ProfileFile(profile, header["units"]["intensity"], tuple(header.get("log", ())))


def read_intensity_csv(text):
    """
    Read either file kind as an IntensityProfile.

    Scan files become profiles of their counts, tagged "data".
    """
    if text.lstrip().startswith("#") and PROFILE_FORMAT in _split_header(text):
        return read_profile_csv(text)
    scan = read_scan_csv(text)
    return scan.as_profile(model="data")
