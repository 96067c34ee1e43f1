"""
Logging utilities with payload summarization.

Log lines go to stderr so that reports on stdout stay machine-readable.
"""
import sys
import json
from typing import Any

from gce_config import get_log_level


LEVEL_ORDER = {'DEBUG': 10, 'INFO': 20, 'WARNING': 30, 'ERROR': 40}

# Sequences longer than this are truncated in log output
MAX_LOGGED_ITEMS = 8


def summarize_for_logging(data: Any) -> Any:
    """
    Summarize data before logging.

    Recursively processes dictionaries, lists and matrices so that a log
    line never carries a whole equivalence class or a large matrix.

    Args:
        data: Data to summarize (dict, list, tuple, set, matrix or scalar)

    Returns:
        JSON-serializable data safe for logging
    """
    if hasattr(data, 'to_row_strings') and hasattr(data, 'n'):
        return f"{data.n}x{data.n}:" + '/'.join(data.to_row_strings())

    if isinstance(data, dict):
        return {str(key): summarize_for_logging(value) for key, value in data.items()}

    if isinstance(data, (list, tuple, set, frozenset)):
        items = sorted(data) if isinstance(data, (set, frozenset)) else list(data)
        summarized = [summarize_for_logging(item) for item in items[:MAX_LOGGED_ITEMS]]
        if len(items) > MAX_LOGGED_ITEMS:
            summarized.append(f"+{len(items) - MAX_LOGGED_ITEMS} more")
        return summarized

    if isinstance(data, (str, int, float, bool)) or data is None:
        return data

    return str(data)


def is_enabled(level: str) -> bool:
    """True if messages at this level are printed."""
    return LEVEL_ORDER.get(level, 20) >= LEVEL_ORDER.get(get_log_level(), 30)


def log_safe(message: str, data: Any = None, level: str = 'INFO') -> None:
    """
    Log a message with automatically summarized data.

    Args:
        message: Log message
        data: Optional data to include (will be summarized)
        level: One of DEBUG, INFO, WARNING, ERROR
    """
    if not is_enabled(level):
        return

    if data is not None:
        summarized = summarize_for_logging(data)
        if isinstance(summarized, (dict, list)):
            print(f"{level}: {message}: {json.dumps(summarized)}", file=sys.stderr)
        else:
            print(f"{level}: {message}: {summarized}", file=sys.stderr)
    else:
        print(f"{level}: {message}", file=sys.stderr)


def log_cap_reached(operation: str, cap: int, visited: int) -> None:
    """
    Log that an enumeration stopped at its cap.

    Args:
        operation: Operation that stopped (e.g., "equivalence_class")
        cap: The configured cap
        visited: Number of matrices visited when it stopped
    """
    info = {
        'operation': operation,
        'cap': cap,
        'visited': visited
    }
    log_safe("Cap reached", info, level='WARNING')


def log_search_progress(stage: str, done: int, total: int) -> None:
    """
    Log progress of a long-running search stage.

    Args:
        stage: Stage name (e.g., "canonicalize", "classes")
        done: Units completed
        total: Units in the stage
    """
    log_safe(f"Search {stage}", {'done': done, 'total': total}, level='DEBUG')
