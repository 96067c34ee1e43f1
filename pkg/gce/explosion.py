"""
Vertex, complete and reverse explosions, explosion recognition, and the
edge matrix of a graph.

Index convention: exploding v keeps v' at index v and inserts v'' at v + 1.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from graphcore import (
    Permutation,
    Rows,
    ZeroOneMatrix,
    canonical_form,
    canonical_rows,
    is_cofinal,
    permute_rows,
    to_digraph,
    transpose,
)
from logging_utils import log_safe
from validation_utils import (
    CofinalityError,
    DimensionError,
    InvalidSplitError,
    require_vertex,
)


@dataclass(frozen=True)
class VertexSplit:
    """Partition of the out-edges of v, each edge named by its range vertex."""
    v: int
    M1: FrozenSet[int]
    M2: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'M1', frozenset(self.M1))
        object.__setattr__(self, 'M2', frozenset(self.M2))

    def __str__(self) -> str:
        return f"v={self.v} M1={sorted(self.M1)} M2={sorted(self.M2)}"


@dataclass(frozen=True)
class EdgeMatrix:
    """Edge matrix together with the (source, range) pair of each edge."""
    matrix: ZeroOneMatrix
    edges: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class SamerelReport:
    direct: ZeroOneMatrix
    prime_first: ZeroOneMatrix
    double_prime_first: ZeroOneMatrix

    @property
    def agrees(self) -> bool:
        return self.direct == self.prime_first == self.double_prime_first


def _mask(indices: Iterable[int]) -> int:
    value = 0
    for index in indices:
        value |= 1 << index
    return value


def _expand_columns(row: int, v: int) -> int:
    """Duplicate column v into v + 1 and shift later columns right."""
    low = row & ((1 << v) - 1)
    bit = (row >> v) & 1
    high = row >> (v + 1)
    return low | (bit << v) | (bit << (v + 1)) | (high << (v + 2))


def _explode_rows(rows: Rows, v: int, first: int, second: int) -> Rows:
    expanded = [_expand_columns(row, v) for row in rows]
    return tuple(expanded[:v]) + (_expand_columns(first, v), _expand_columns(second, v)) + tuple(expanded[v + 1:])


def _validate_split(B: ZeroOneMatrix, split: VertexSplit) -> None:
    require_vertex(split.v, B.n)
    if B.out_degree(split.v) <= 1:
        raise InvalidSplitError(f"Vertex {split.v} has out-degree {B.out_degree(split.v)}")
    if not split.M1 or not split.M2:
        raise InvalidSplitError("M1 and M2 must both be nonempty")
    if split.M1 & split.M2:
        raise InvalidSplitError(f"M1 and M2 overlap: {sorted(split.M1 & split.M2)}")
    if split.M1 | split.M2 != B.row_support(split.v):
        raise InvalidSplitError(
            f"M1 | M2 = {sorted(split.M1 | split.M2)} but vertex {split.v} "
            f"points to {sorted(B.row_support(split.v))}"
        )


def vertex_explosion(B: ZeroOneMatrix, split: VertexSplit) -> ZeroOneMatrix:
    """
    Replace v by v' (edges in M1) and v'' (edges in M2).

    Both new vertices receive every edge that entered v. A loop at v becomes
    edges from whichever copy owns it to both copies.

    Raises:
        InvalidSplitError: If v has out-degree <= 1 or the split is not a partition
    """
    _validate_split(B, split)
    rows = _explode_rows(B.rows, split.v, _mask(split.M1), _mask(split.M2))
    return ZeroOneMatrix(B.n + 1, rows)


def vertex_splits(B: ZeroOneMatrix, v: int) -> List[VertexSplit]:
    """
    Every ordered split at v.

    Bit i of the enumeration mask puts the i-th out-neighbour (ascending) in
    M1; masks run from 1 to 2^k - 2.
    """
    require_vertex(v, B.n)
    neighbours = sorted(B.row_support(v))
    k = len(neighbours)
    splits = []
    for mask in range(1, (1 << k) - 1):
        first = {neighbours[i] for i in range(k) if (mask >> i) & 1}
        splits.append(VertexSplit(v, frozenset(first), frozenset(neighbours) - first))
    return splits


def explosions(B: ZeroOneMatrix) -> List[Tuple[VertexSplit, ZeroOneMatrix]]:
    """One vertex explosion of B per distinct canonical form."""
    seen = set()
    found = []
    for v in range(B.n):
        for split in vertex_splits(B, v):
            exploded = vertex_explosion(B, split)
            canonical, _ = canonical_form(exploded)
            if canonical in seen:
                continue
            seen.add(canonical)
            found.append((split, exploded))
    return found


# ==============================================================================
# Complete explosion
# ==============================================================================

def _blocks(row: int, origin: Sequence[int]) -> List[int]:
    """Columns of row grouped by origin vertex, as masks."""
    groups = {}
    column = 0
    while row >> column:
        if (row >> column) & 1:
            groups[origin[column]] = groups.get(origin[column], 0) | (1 << column)
        column += 1
    return list(groups.values())


def _complete_explosion(rows: Rows, n: int, v: int, origin: Sequence[int],
                        steps: Optional[List[ZeroOneMatrix]] = None) -> Tuple[Rows, int, List[int], List[int]]:
    """
    Complete explosion at v over origin blocks.

    Columns sharing an origin count as one edge. v is first moved to index 0;
    while row 0 spans more than one block, the block holding its largest
    column is split off into a new vertex at index 1.

    Returns:
        (rows, size, origin of each new index, new index of each old index)
    """
    order = [v] + [u for u in range(n) if u != v]
    rows = permute_rows(rows, order)
    origin = [origin[u] for u in order]
    position = [0] * n
    for index, u in enumerate(order):
        position[u] = index
    if steps is not None:
        steps.append(ZeroOneMatrix(n, rows))

    inserted = 0
    while True:
        blocks = _blocks(rows[0], origin)
        if len(blocks) <= 1:
            break
        last = max(blocks, key=lambda block: block.bit_length())
        rows = _explode_rows(rows, 0, rows[0] & ~last, last)
        origin = [origin[0], origin[0]] + origin[1:]
        n += 1
        inserted += 1
        if steps is not None:
            steps.append(ZeroOneMatrix(n, rows))

    moved = [index + inserted if index else 0 for index in position]
    return rows, n, origin, moved


def _require_branching(B: ZeroOneMatrix, v: int) -> None:
    require_vertex(v, B.n)
    if B.out_degree(v) <= 1:
        raise InvalidSplitError(f"Vertex {v} has out-degree {B.out_degree(v)}")


def complete_explosion(B: ZeroOneMatrix, v: int) -> ZeroOneMatrix:
    """
    Iterated edge explosion at v, one step per out-edge beyond the first.

    The result is indexed with v first, then the new copies of v, then the
    other vertices in their original order.
    """
    _require_branching(B, v)
    rows, n, _, _ = _complete_explosion(B.rows, B.n, v, list(range(B.n)))
    return ZeroOneMatrix(n, rows)


def complete_explosion_steps(B: ZeroOneMatrix, v: int) -> List[ZeroOneMatrix]:
    """The reordered input followed by the matrix after each step."""
    _require_branching(B, v)
    steps: List[ZeroOneMatrix] = []
    _complete_explosion(B.rows, B.n, v, list(range(B.n)), steps)
    return steps


def full_explosion(B: ZeroOneMatrix) -> ZeroOneMatrix:
    """
    Completely explode every original vertex with out-degree above one.

    Copies created by earlier explosions are treated as one edge, so for a
    graph without sinks the result is a relabelling of the adjoint graph.
    """
    rows, n = B.rows, B.n
    origin = list(range(B.n))
    for u in range(B.n):
        index = origin.index(u)
        if len(_blocks(rows[index], origin)) > 1:
            rows, n, origin, _ = _complete_explosion(rows, n, index, origin)
    return ZeroOneMatrix(n, rows)


def samerel_report(B: ZeroOneMatrix, split: VertexSplit) -> SamerelReport:
    """
    Compare the complete explosion of B at v with the two-stage complete
    explosion of vertex_explosion(B, split) at v' and v'' in either order.

    All three matrices are returned in canonical form.
    """
    exploded = vertex_explosion(B, split)
    v = split.v
    origin = [u if u <= v else u - 1 for u in range(B.n + 1)]

    direct, _ = canonical_form(complete_explosion(B, v))

    results = []
    for first, second in ((v, v + 1), (v + 1, v)):
        rows, n, stage_origin, moved = _complete_explosion(exploded.rows, exploded.n, first, origin)
        rows, n, _, _ = _complete_explosion(rows, n, moved[second], stage_origin)
        canonical, _ = canonical_form(ZeroOneMatrix(n, rows))
        results.append(canonical)

    report = SamerelReport(direct, results[0], results[1])
    if not report.agrees:
        log_safe("Two-stage complete explosion differs", {'B': B, 'split': str(split)}, level='WARNING')
    return report


# ==============================================================================
# Recognition
# ==============================================================================

def _degree_profile(rows: Rows, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    out_degrees = sorted(row.bit_count() for row in rows)
    in_degrees = sorted(sum((row >> j) & 1 for row in rows) for j in range(n))
    return tuple(out_degrees), tuple(in_degrees)


def _find_explosion(B: ZeroOneMatrix, C: ZeroOneMatrix,
                    allowed: Optional[FrozenSet[int]] = None) -> Optional[Tuple[VertexSplit, Permutation]]:
    if C.n != B.n + 1:
        raise DimensionError(f"Expected a {B.n + 1}x{B.n + 1} matrix, got {C.n}x{C.n}")

    target, target_sigma = canonical_form(C)
    target_profile = _degree_profile(C.rows, C.n)
    inverse = target_sigma.inverse()

    for v in range(B.n):
        if allowed is not None and v not in allowed:
            continue
        for split in vertex_splits(B, v):
            rows = _explode_rows(B.rows, v, _mask(split.M1), _mask(split.M2))
            if _degree_profile(rows, C.n) != target_profile:
                continue
            canonical, images = canonical_rows(rows, C.n)
            if canonical == target.rows:
                sigma = Permutation(images).compose(inverse)
                return split, sigma
    return None


def is_explosion_of(B: ZeroOneMatrix, C: ZeroOneMatrix) -> Optional[Tuple[VertexSplit, Permutation]]:
    """
    Find a split of B whose explosion is a relabelling of C.

    Returns:
        (split, sigma) with permute(vertex_explosion(B, split), sigma) == C,
        taking the lowest v and then the lowest split mask; None if C is not
        an explosion of B

    Raises:
        DimensionError: Unless C has exactly one more vertex than B
    """
    return _find_explosion(B, C)


def reverse_explosion(B: ZeroOneMatrix, split: VertexSplit) -> ZeroOneMatrix:
    """
    Explode the reverse graph at a cofinal vertex and reverse back.

    Raises:
        CofinalityError: If split.v is not cofinal in B
        InvalidSplitError: If the split is not valid on transpose(B)
    """
    require_vertex(split.v, B.n)
    if not is_cofinal(B, split.v):
        raise CofinalityError(f"Vertex {split.v} is not cofinal")
    return transpose(vertex_explosion(transpose(B), split))


def is_reverse_explosion_of(B: ZeroOneMatrix, C: ZeroOneMatrix) -> Optional[Tuple[VertexSplit, Permutation]]:
    """Like is_explosion_of on transposes, restricted to vertices cofinal in B."""
    cofinal = frozenset(v for v in range(B.n) if is_cofinal(B, v))
    return _find_explosion(transpose(B), transpose(C), cofinal)


# ==============================================================================
# Matrix characterization
# ==============================================================================

def explosion_lemma_check(B: ZeroOneMatrix, C: ZeroOneMatrix, v: int, v1: int, v2: int,
                          split: VertexSplit) -> bool:
    """
    Check that C is the explosion of B at v with v', v'' placed at v1, v2.

    Conditions:
        (i) entries between the other vertices agree under the order-preserving
            identification of the remaining indices
        (ii) columns v1 and v2 of C are equal and repeat column v of B
        (iii) rows v1 and v2 of C select M1 and M2, loop included

    Raises:
        DimensionError: If C is not one larger than B
        VertexError: If an index is out of range
    """
    if C.n != B.n + 1:
        raise DimensionError(f"Expected sizes n and n+1, got {B.n} and {C.n}")
    require_vertex(v, B.n)
    require_vertex(v1, C.n)
    require_vertex(v2, C.n)
    if v1 == v2 or split.v != v:
        return False
    if split.M1 & split.M2 or split.M1 | split.M2 != B.row_support(v) or not split.M1 or not split.M2:
        return False

    others = [u for u in range(B.n) if u != v]
    image = dict(zip(others, [x for x in range(C.n) if x not in (v1, v2)]))

    for u in others:
        for w in others:
            if B.entry(u, w) != C.entry(image[u], image[w]):
                return False

    for x in range(C.n):
        if C.entry(x, v1) != C.entry(x, v2):
            return False
    for u in others:
        if C.entry(image[u], v1) != B.entry(u, v):
            return False

    for w in others:
        if C.entry(v1, image[w]) != int(w in split.M1):
            return False
        if C.entry(v2, image[w]) != int(w in split.M2):
            return False
    if C.entry(v1, v1) != int(v in split.M1) or C.entry(v2, v1) != int(v in split.M2):
        return False

    return True


def edge_matrix(B: ZeroOneMatrix) -> EdgeMatrix:
    """
    Matrix on the edges of B (row-major edge order), (e, f) = 1 iff e ends where f starts.

    This is the adjacency matrix of the line graph of B.

    Raises:
        DimensionError: If B has no edges, since the result would be 0 x 0
    """
    line = nx.line_graph(to_digraph(B))
    edges = tuple(sorted(line.nodes))
    if not edges:
        raise DimensionError("Graph has no edges")
    index = {edge: k for k, edge in enumerate(edges)}
    rows = tuple(_mask(index[f] for f in line.successors(e)) for e in edges)
    return EdgeMatrix(ZeroOneMatrix(len(edges), rows), edges)
