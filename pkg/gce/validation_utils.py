"""
Error types and input validation for matrices, vertices and sizes.
"""
import re
from typing import List, Optional, Tuple


class GraphError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class MatrixFormatError(GraphError):
    """Matrix text does not follow the .01m format."""


class SizeLimitError(GraphError):
    """Matrix size is outside the configured limit."""


class DimensionError(GraphError):
    """Operands have incompatible sizes."""


class VertexError(GraphError):
    """Vertex index out of range."""


class InvalidMoveError(GraphError):
    """Transfer move is not a legal decomposition of its row."""


class InvalidSplitError(GraphError):
    """Vertex split does not partition the out-edges of its vertex."""


class CofinalityError(GraphError):
    """Operation requires a cofinal vertex."""


class SinkError(GraphError):
    """Operation requires graphs without sinks."""


class NormalFormError(GraphError):
    """Smith normal form failed its own verification."""


ROW_PATTERN = re.compile(r'^[01 ]*[01][01 ]*$')
INLINE_PATTERN = re.compile(r'^[01 ]+(/[01 ]+)*$')


def validate_matrix_lines(lines: List[str]) -> Tuple[bool, Optional[str]]:
    """
    Validate the non-comment lines of a matrix file.

    Each line must be one row of 0/1 characters; spaces between entries are
    ignored. There must be as many rows as columns.

    Args:
        lines: Row lines with comments and blank lines already removed

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not lines:
        return (False, "Matrix has no rows")

    widths = []
    for number, line in enumerate(lines, start=1):
        if not ROW_PATTERN.match(line):
            return (False, f"Row {number} contains characters other than 0, 1 and spaces")
        widths.append(len(line.replace(' ', '')))

    if len(set(widths)) != 1:
        return (False, f"Ragged rows: lengths {sorted(set(widths))}")

    if widths[0] != len(lines):
        return (False, f"Matrix is not square: {len(lines)} rows of length {widths[0]}")

    return (True, None)


def validate_size(n: int, limit: int) -> Tuple[bool, Optional[str]]:
    """
    Validate a matrix size against a limit.

    Args:
        n: Vertex count
        limit: Largest accepted vertex count

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(n, int) or isinstance(n, bool):
        return (False, f"Size must be an integer, got {type(n).__name__}")

    if n < 1:
        return (False, "Matrix must have at least one vertex")

    if n > limit:
        return (False, f"Matrix size {n} exceeds limit {limit}")

    return (True, None)


def validate_vertex(v: int, n: int) -> bool:
    """
    Validate a vertex index.

    Args:
        v: Vertex index (0-based)
        n: Vertex count

    Returns:
        True if 0 <= v < n, False otherwise
    """
    if not isinstance(v, int) or isinstance(v, bool):
        return False
    return 0 <= v < n


def require_vertex(v: int, n: int) -> None:
    """Raise VertexError unless v is a vertex of an n-vertex graph."""
    if not validate_vertex(v, n):
        raise VertexError(f"Vertex {v} out of range for {n} vertices")


def validate_inline_matrix(text: str) -> Tuple[bool, Optional[str]]:
    """
    Validate an inline matrix such as "11/01".

    Args:
        text: Rows separated by '/'

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not text or not isinstance(text, str):
        return (False, "Inline matrix is empty")

    if not INLINE_PATTERN.match(text.strip()):
        return (False, "Inline matrix must be rows of 0/1 separated by '/'")

    return validate_matrix_lines([row.strip() for row in text.strip().split('/')])


def parse_index_set(text: str) -> frozenset:
    """
    Parse a comma-separated vertex list such as "0,2,3".

    Args:
        text: Vertex list; an empty string or "-" means the empty set

    Returns:
        Frozenset of vertex indices

    Raises:
        GraphError: If an entry is not a non-negative integer
    """
    text = (text or '').strip()
    if text in ('', '-'):
        return frozenset()

    values = set()
    for part in text.split(','):
        part = part.strip()
        if not part.isdigit():
            raise GraphError(f"Invalid vertex list entry: {part!r}")
        values.add(int(part))
    return frozenset(values)


def parse_integer_matrix(text: str) -> List[List[int]]:
    """
    Parse an inline integer matrix such as "1,1,0/0,0,1" or "110/001".

    Rows are separated by '/'. Entries are separated by commas; a row without
    commas is read one digit per entry.

    Args:
        text: Inline matrix text

    Returns:
        List of rows of non-negative integers

    Raises:
        MatrixFormatError: If the text is malformed or ragged
    """
    if not text or not text.strip():
        raise MatrixFormatError("Integer matrix is empty")

    rows = []
    for row_text in text.strip().split('/'):
        row_text = row_text.strip()
        parts = row_text.split(',') if ',' in row_text else list(row_text)
        parts = [part.strip() for part in parts]
        if not parts or not all(part.isdigit() for part in parts):
            raise MatrixFormatError(f"Invalid integer matrix row: {row_text!r}")
        rows.append([int(part) for part in parts])

    if len({len(row) for row in rows}) != 1:
        raise MatrixFormatError("Ragged integer matrix rows")

    return rows
