"""
Finite 0-1 vertex matrices of directed graphs.

Rows are bit-packed: row i is a Python int whose bit j is the entry (i, j).
Matrices and permutations are immutable values.
"""
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterator, List, Sequence, Tuple

import networkx as nx

from gce_config import get_canon_max_n, get_max_n
from validation_utils import (
    DimensionError,
    MatrixFormatError,
    SizeLimitError,
    require_vertex,
    validate_inline_matrix,
    validate_matrix_lines,
    validate_size,
)


Rows = Tuple[int, ...]


class Verdict(str, Enum):
    """Three-valued answer for questions decided by bounded search."""
    TRUE = 'true'
    FALSE = 'false'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class ZeroOneMatrix:
    """Square 0-1 matrix; entry (i, j) = 1 means an edge i -> j."""
    n: int
    rows: Rows

    def __post_init__(self):
        ok, error = validate_size(self.n, get_max_n())
        if not ok:
            raise SizeLimitError(error)
        if len(self.rows) != self.n:
            raise DimensionError(f"Expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for row in self.rows:
            if not 0 <= row < limit:
                raise MatrixFormatError(f"Row value {row} does not fit {self.n} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> 'ZeroOneMatrix':
        """Build from nested lists of 0/1 entries."""
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise MatrixFormatError("Matrix is not square")
            value = 0
            for j, entry in enumerate(row):
                if entry not in (0, 1):
                    raise MatrixFormatError(f"Entry {entry!r} is not 0 or 1")
                value |= entry << j
            rows.append(value)
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> 'ZeroOneMatrix':
        return cls(n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_support(self, i: int) -> FrozenSet[int]:
        """Columns holding a 1 in row i."""
        return frozenset(j for j in range(self.n) if (self.rows[i] >> j) & 1)

    def out_degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def to_lists(self) -> List[List[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def to_row_strings(self) -> List[str]:
        return [''.join(str((row >> j) & 1) for j in range(self.n)) for row in self.rows]

    def __str__(self) -> str:
        return '/'.join(self.to_row_strings())


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}; images[i] is the image of i."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DimensionError(f"Not a permutation: {list(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    def inverse(self) -> 'Permutation':
        inverse = [0] * self.n
        for i, image in enumerate(self.images):
            inverse[image] = i
        return Permutation(tuple(inverse))

    def compose(self, other: 'Permutation') -> 'Permutation':
        """
        Permutation i -> self(other(i)).

        permute(permute(B, a), c) equals permute(B, a.compose(c)).
        """
        if other.n != self.n:
            raise DimensionError("Permutation lengths differ")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components numbered by their smallest vertex."""
    component_of: Tuple[int, ...]
    has_cycle: Tuple[bool, ...]
    condensation_edges: FrozenSet[Tuple[int, int]]

    @property
    def component_count(self) -> int:
        return len(self.has_cycle)


# ==============================================================================
# Row-level helpers shared by the other modules
# ==============================================================================

def transpose_rows(rows: Rows, n: int) -> Rows:
    columns = [0] * n
    for i, row in enumerate(rows):
        bit = 1 << i
        while row:
            low = row & -row
            columns[low.bit_length() - 1] |= bit
            row ^= low
    return tuple(columns)


def permute_rows(rows: Rows, images: Sequence[int]) -> Rows:
    """Rows of permute(B, images) for packed rows of B."""
    result = []
    for i in range(len(images)):
        source = rows[images[i]]
        value = 0
        for j, image in enumerate(images):
            value |= ((source >> image) & 1) << j
        result.append(value)
    return tuple(result)


def column_tables(n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Per-permutation lookup tables for fast conjugation.

    For each permutation s of range(n), returns (s, table) where table[r] is
    the row r with its columns reordered by s. permute(B, s) then has rows
    table[rows[s[i]]].
    """
    tables = []
    for images in itertools.permutations(range(n)):
        table = []
        for row in range(1 << n):
            value = 0
            for j, image in enumerate(images):
                value |= ((row >> image) & 1) << j
            table.append(value)
        tables.append((images, tuple(table)))
    return tables


def to_digraph(B: ZeroOneMatrix) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(B.n))
    for i, row in enumerate(B.rows):
        for j in range(B.n):
            if (row >> j) & 1:
                graph.add_edge(i, j)
    return graph


# ==============================================================================
# Parsing and serialization
# ==============================================================================

def _rows_from_lines(lines: List[str]) -> ZeroOneMatrix:
    ok, error = validate_matrix_lines(lines)
    if not ok:
        raise MatrixFormatError(error)

    n = len(lines)
    ok, error = validate_size(n, get_max_n())
    if not ok:
        raise SizeLimitError(error)

    rows = []
    for line in lines:
        digits = line.replace(' ', '')
        rows.append(sum(1 << j for j, char in enumerate(digits) if char == '1'))
    return ZeroOneMatrix(n, tuple(rows))


def parse_matrix(text: str) -> ZeroOneMatrix:
    """
    Parse a matrix in the .01m text format.

    Lines starting with '#' are comments. Every other non-empty line is one
    row of 0/1 characters; spaces between entries are ignored.

    Raises:
        MatrixFormatError: Ragged rows, bad characters or a non-square matrix
        SizeLimitError: More rows than GCE_MAX_N
    """
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        lines.append(line)
    return _rows_from_lines(lines)


def parse_inline(text: str) -> ZeroOneMatrix:
    """Parse a matrix written inline with '/' between rows, e.g. "11/01"."""
    ok, error = validate_inline_matrix(text)
    if not ok:
        raise MatrixFormatError(error)
    return _rows_from_lines([row.strip() for row in text.strip().split('/')])


def serialize_matrix(B: ZeroOneMatrix) -> str:
    return ''.join(row + '\n' for row in B.to_row_strings())


# ==============================================================================
# Matrix operations
# ==============================================================================

def transpose(B: ZeroOneMatrix) -> ZeroOneMatrix:
    return ZeroOneMatrix(B.n, transpose_rows(B.rows, B.n))


def permute(B: ZeroOneMatrix, sigma: Permutation) -> ZeroOneMatrix:
    """
    Conjugate B by a permutation: result(i, j) = B(sigma(i), sigma(j)).

    Raises:
        DimensionError: If sigma has the wrong length
    """
    if sigma.n != B.n:
        raise DimensionError(f"Permutation of length {sigma.n} applied to {B.n}x{B.n} matrix")
    return ZeroOneMatrix(B.n, permute_rows(B.rows, sigma.images))


def _row_key(rows: Rows, x: int, placed: Tuple[int, ...], cells: List[int]) -> int:
    # Smallest row x can produce at this level, read with column 0 as most significant bit
    row = rows[x]
    key = 0
    for h in placed:
        key = (key << 1) | ((row >> h) & 1)
    key = (key << 1) | ((row >> x) & 1)
    for cell in cells:
        size = cell.bit_count()
        ones = (row & cell).bit_count()
        key = (key << size) | ((1 << ones) - 1)
    return key


def canonical_rows(rows: Rows, n: int) -> Tuple[Rows, Tuple[int, ...]]:
    """
    Lexicographically smallest row-major conjugate of packed rows.

    Places one vertex per level. Unplaced vertices sit in ordered cells; a
    vertex placed at position i comes from the cell covering i, and the cells
    are refined by its out-neighbourhood (non-neighbours first). Only states
    producing the smallest row survive each level, so the result is exact.

    Returns:
        (canonical rows, images) with canonical rows = permute_rows(rows, images)
    """
    states = [((), [(1 << n) - 1])]
    for _ in range(n):
        best_key = None
        survivors = []
        for placed, cells in states:
            first = cells[0]
            candidates = first
            while candidates:
                low = candidates & -candidates
                candidates ^= low
                x = low.bit_length() - 1

                remaining = [first ^ low] + cells[1:]
                remaining = [cell for cell in remaining if cell]
                key = _row_key(rows, x, placed, remaining)
                if best_key is not None and key > best_key:
                    continue

                neighbours = rows[x]
                refined = []
                for cell in remaining:
                    outside = cell & ~neighbours
                    inside = cell & neighbours
                    if outside:
                        refined.append(outside)
                    if inside:
                        refined.append(inside)

                state = (placed + (x,), refined)
                if best_key is None or key < best_key:
                    best_key = key
                    survivors = [state]
                else:
                    survivors.append(state)
        states = survivors

    images = states[0][0]
    return permute_rows(rows, images), images


def canonical_form(B: ZeroOneMatrix) -> Tuple[ZeroOneMatrix, Permutation]:
    """
    Canonical representative of B under permutation conjugacy.

    Returns:
        (matrix, sigma) where matrix = permute(B, sigma) has the smallest
        row-major bit string among all conjugates of B

    Raises:
        SizeLimitError: If B is larger than GCE_CANON_MAX_N
    """
    limit = get_canon_max_n()
    if B.n > limit:
        raise SizeLimitError(f"canonical_form supports n <= {limit}, got {B.n}")
    rows, images = canonical_rows(B.rows, B.n)
    return ZeroOneMatrix(B.n, rows), Permutation(images)


def all_matrices(n: int) -> Iterator[ZeroOneMatrix]:
    """Every n x n 0-1 matrix, in increasing row-tuple order."""
    for rows in itertools.product(range(1 << n), repeat=n):
        yield ZeroOneMatrix(n, rows)


def is_permutation_matrix(B: ZeroOneMatrix) -> bool:
    seen = 0
    for row in B.rows:
        if row.bit_count() != 1 or row & seen:
            return False
        seen |= row
    return True


# ==============================================================================
# Reachability
# ==============================================================================

def sinks(B: ZeroOneMatrix) -> FrozenSet[int]:
    """Vertices with no outgoing edges (zero rows)."""
    return frozenset(i for i, row in enumerate(B.rows) if row == 0)


def sources(B: ZeroOneMatrix) -> FrozenSet[int]:
    """Vertices with no incoming edges (zero columns)."""
    incoming = 0
    for row in B.rows:
        incoming |= row
    return frozenset(j for j in range(B.n) if not (incoming >> j) & 1)


def scc_decomposition(B: ZeroOneMatrix) -> SccDecomposition:
    graph = to_digraph(B)
    components = sorted((sorted(c) for c in nx.strongly_connected_components(graph)),
                        key=lambda members: members[0])

    component_of = [0] * B.n
    has_cycle = []
    for index, members in enumerate(components):
        for vertex in members:
            component_of[vertex] = index
        first = members[0]
        has_cycle.append(len(members) > 1 or bool((B.rows[first] >> first) & 1))

    edges = set()
    for i, j in graph.edges():
        a, b = component_of[i], component_of[j]
        if a != b:
            edges.add((a, b))

    return SccDecomposition(tuple(component_of), tuple(has_cycle), frozenset(edges))


def is_irreducible(B: ZeroOneMatrix) -> bool:
    """Strongly connected with at least one edge."""
    if B.edge_count() == 0:
        return False
    return nx.is_strongly_connected(to_digraph(B))


def cofinal_vertices(B: ZeroOneMatrix) -> FrozenSet[int]:
    """Vertices that reach every strongly connected component carrying a cycle."""
    graph = to_digraph(B)
    scc = scc_decomposition(B)
    cyclic = {c for c in range(scc.component_count) if scc.has_cycle[c]}

    cofinal = set()
    for v in range(B.n):
        reached = nx.descendants(graph, v) | {v}
        if cyclic <= {scc.component_of[w] for w in reached}:
            cofinal.add(v)
    return frozenset(cofinal)


def is_cofinal(B: ZeroOneMatrix, v: int) -> bool:
    """
    True if every infinite path in the graph of B can be reached from v.

    Raises:
        VertexError: If v is out of range
    """
    require_vertex(v, B.n)
    graph = to_digraph(B)
    scc = scc_decomposition(B)
    reached = {scc.component_of[w] for w in nx.descendants(graph, v) | {v}}
    return all(c in reached for c in range(scc.component_count) if scc.has_cycle[c])
