"""
Runtime settings for the graph equivalence toolkit.
Loads configuration from the environment (and an optional .env file).
"""
import os
import sys
from functools import lru_cache
from typing import Union

from dotenv import load_dotenv


load_dotenv()


# Defaults used when a variable is unset or malformed
DEFAULT_MAX_N = 16
DEFAULT_CANON_MAX_N = 9
DEFAULT_CLASS_MAX_SIZE = 1_000_000
DEFAULT_K0_BRUTE_FORCE_CAP = 10_000
DEFAULT_SEARCH_MAX_N = 4
DEFAULT_LOG_LEVEL = 'WARNING'

# Hard ceiling for GCE_MAX_N; rows are packed into Python ints
ABSOLUTE_MAX_N = 64

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

INTEGER_SETTINGS = {
    'GCE_MAX_N': (DEFAULT_MAX_N, 1, ABSOLUTE_MAX_N),
    'GCE_CANON_MAX_N': (DEFAULT_CANON_MAX_N, 1, ABSOLUTE_MAX_N),
    'GCE_CLASS_MAX_SIZE': (DEFAULT_CLASS_MAX_SIZE, 1, None),
    'GCE_K0_BRUTE_FORCE_CAP': (DEFAULT_K0_BRUTE_FORCE_CAP, 0, None),
    'GCE_SEARCH_MAX_N': (DEFAULT_SEARCH_MAX_N, 1, ABSOLUTE_MAX_N),
    'GCE_VERIFY_SNF': (0, 0, 1),
}


@lru_cache(maxsize=32)
def get_setting(name: str) -> Union[int, str]:
    """
    Get a setting with caching.

    Args:
        name: Setting name (e.g., 'GCE_MAX_N')

    Returns:
        The configured value, or the default if unset or malformed

    Raises:
        KeyError: If the name is not a known setting
    """
    if name == 'GCE_LOG_LEVEL':
        level = os.environ.get(name, DEFAULT_LOG_LEVEL).strip().upper()
        if level not in LOG_LEVELS:
            _warn(name, level, DEFAULT_LOG_LEVEL)
            return DEFAULT_LOG_LEVEL
        return level

    default, low, high = INTEGER_SETTINGS[name]
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default

    try:
        value = int(raw.strip())
    except ValueError:
        _warn(name, raw, default)
        return default

    if value < low or (high is not None and value > high):
        _warn(name, raw, default)
        return default

    return value


def _warn(name: str, raw: str, default: Union[int, str]) -> None:
    # logging_utils reads the log level from here, so print directly
    print(f"WARNING: ignoring {name}={raw!r}, using default {default}", file=sys.stderr)


def reload_settings() -> None:
    """Drop cached values so the next lookup re-reads the environment."""
    get_setting.cache_clear()


def get_max_n() -> int:
    """Largest matrix size accepted anywhere."""
    return get_setting('GCE_MAX_N')


def get_canon_max_n() -> int:
    """Largest matrix size accepted by canonical_form."""
    return min(get_setting('GCE_CANON_MAX_N'), get_max_n())


def get_class_max_size() -> int:
    """Default cap on the number of matrices visited by a class enumeration."""
    return get_setting('GCE_CLASS_MAX_SIZE')


def get_k0_brute_force_cap() -> int:
    """Largest automorphism search space explored by brute force."""
    return get_setting('GCE_K0_BRUTE_FORCE_CAP')


def get_search_max_n() -> int:
    """Largest size run_search accepts without an explicit enumeration cap."""
    return get_setting('GCE_SEARCH_MAX_N')


def get_log_level() -> str:
    """Minimum level printed by logging_utils."""
    return get_setting('GCE_LOG_LEVEL')


def verify_snf_enabled() -> bool:
    """True when every Smith normal form is re-checked after computation."""
    return get_setting('GCE_VERIFY_SNF') == 1
