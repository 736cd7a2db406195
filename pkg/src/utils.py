"""
Shared helpers: logging setup, the run logger, thread capping and chunked
grid evaluation, and small file utilities used by the CLI.
"""

import os
import sys
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV_VAR = "FRINGELAB_THREADS"
DEFAULT_MAX_THREADS = 4
# Grids shorter than this are evaluated in one call
MIN_CHUNK = 512

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def setup_logging(verbosity=0):
    """
    Configure the root logger on standard error.

    Args:
        verbosity: 0 for warnings only, 1 for info, 2 or more for debug
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def create_logger(logs=None, stream=None):
    """
    Create a logger function that both prints and records run messages.

    Args:
        logs: Optional list to store log messages
        stream: Where to print; standard error when omitted

    Returns:
        Tuple of (logger function, list of recorded messages)
    """
    if logs is None:
        logs = []

    def log_message(message):
        print(message, file=stream if stream is not None else sys.stderr)
        logs.append(message)

    return log_message, logs


def max_workers():
    """
    Number of worker threads allowed for grid evaluation.

    Reads FRINGELAB_THREADS; falls back to min(4, cpu count). Invalid or
    non-positive values fall back to a single thread.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or not raw.strip():
        return max(1, min(DEFAULT_MAX_THREADS, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(
            "ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
        return 1
    return max(1, value)


def evaluate_chunked(func, xs, workers=None):
    """
    Evaluate ``func`` on ``xs`` split into contiguous chunks.

    The result is concatenated in grid order, so it does not depend on the
    thread schedule.

    Args:
        func: Vectorized function of a 1-D array returning an array of equal length
        xs: 1-D array of positions
        workers: Thread count; defaults to max_workers()

    Returns:
        Array of func(xs)
    """
    xs = np.asarray(xs, dtype=float)
    if workers is None:
        workers = max_workers()
    if workers <= 1 or xs.size < 2 * MIN_CHUNK:
        return np.asarray(func(xs))

    n_chunks = min(workers, xs.size // MIN_CHUNK)
    chunks = np.array_split(xs, n_chunks)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        parts = list(executor.map(func, chunks))
    return np.concatenate(parts)


def to_builtin(value):
    """Recursively convert numpy scalars and arrays to plain Python objects."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_builtin(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return to_builtin(value.item())
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def read_text(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(path, text):
    """Write text to path, creating parent directories as needed."""
    parent = os.path.dirname(path)
    if parent and not os.path.exists(parent):
        os.makedirs(parent)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
