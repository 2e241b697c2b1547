import os
import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD = 2 ** 16
DEFAULT_MAX_CODEWORDS = 2 ** 20
DEFAULT_MAX_KERNEL = 2 ** 20
DEFAULT_MAX_SUBSETS = 10 ** 7
DEFAULT_SWEEP_FILE = 'sweeps.yml'


@dataclass(frozen=True)
class Caps:
    """Bounds on every exhaustive enumeration the package performs."""
    max_field: int = DEFAULT_MAX_FIELD
    max_codewords: int = DEFAULT_MAX_CODEWORDS
    max_kernel: int = DEFAULT_MAX_KERNEL
    max_subsets: int = DEFAULT_MAX_SUBSETS


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def load_caps() -> Caps:
    """Reads the caps from the environment.

    HERMGRS_MAX_ENUM, when set, replaces the codeword, kernel and subset caps.
    """
    max_field = _int_env('HERMGRS_MAX_FIELD', DEFAULT_MAX_FIELD)
    if os.environ.get('HERMGRS_MAX_ENUM'):
        override = _int_env('HERMGRS_MAX_ENUM', DEFAULT_MAX_CODEWORDS)
        logger.info(f"HERMGRS_MAX_ENUM={override} overrides the enumeration caps")
        return Caps(max_field=max_field, max_codewords=override, max_kernel=override, max_subsets=override)
    return Caps(max_field=max_field)


def log_level() -> str:
    return os.environ.get('HERMGRS_LOG_LEVEL', 'INFO').upper()


def sweep_file() -> str:
    return os.environ.get('HERMGRS_SWEEP_FILE', DEFAULT_SWEEP_FILE)


def default_jobs() -> int:
    return _int_env('HERMGRS_JOBS', 1)
