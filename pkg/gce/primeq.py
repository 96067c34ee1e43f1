"""
Primitive transfers, their inverses, reverse transfers at cofinal vertices,
and breadth-first enumeration of primitive equivalence classes.
"""
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from gce_config import get_canon_max_n, get_class_max_size
from graphcore import (
    Rows,
    Verdict,
    ZeroOneMatrix,
    cofinal_vertices,
    column_tables,
    is_cofinal,
    permute_rows,
    transpose,
    transpose_rows,
)
from logging_utils import log_cap_reached, log_safe
from validation_utils import (
    CofinalityError,
    DimensionError,
    InvalidMoveError,
    SizeLimitError,
    require_vertex,
)


# Move kinds reported in ClassReport.moves_used and witness paths
FORWARD = 'forward'
INVERSE = 'inverse'
PERMUTATION = 'permutation'
REVERSE_FORWARD = 'reverse-forward'
REVERSE_INVERSE = 'reverse-inverse'


def _mask(indices: Iterable[int]) -> int:
    value = 0
    for index in indices:
        value |= 1 << index
    return value


def _indices(mask: int) -> FrozenSet[int]:
    result = set()
    while mask:
        low = mask & -mask
        result.add(low.bit_length() - 1)
        mask ^= low
    return frozenset(result)


@dataclass(frozen=True)
class TransferMove:
    """
    Decomposition B_p = sum of E_k (k in K) + sum of B_m (m in M).

    Applying it replaces row p with the indicator of K | M.
    """
    p: int
    K: FrozenSet[int]
    M: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'K', frozenset(self.K))
        object.__setattr__(self, 'M', frozenset(self.M))
        if self.K & self.M:
            raise InvalidMoveError(f"K and M overlap: {sorted(self.K & self.M)}")
        if self.p in self.M:
            raise InvalidMoveError(f"p={self.p} may not copy its own row")
        if not (self.K or self.M):
            raise InvalidMoveError("K and M are both empty")

    @property
    def is_trivial(self) -> bool:
        return not self.M

    def __str__(self) -> str:
        return f"p={self.p} K={sorted(self.K)} M={sorted(self.M)}"


@dataclass
class ClassReport:
    """Outcome of a class enumeration."""
    size: int
    exhausted: bool
    representatives: Optional[List[ZeroOneMatrix]] = None
    moves_used: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class WitnessStep:
    kind: str
    matrix: ZeroOneMatrix
    detail: str


@dataclass
class EquivalenceResult:
    verdict: Verdict
    witness: Optional[List[WitnessStep]]
    visited: int


# ==============================================================================
# Move enumeration on packed rows
# ==============================================================================

def _exact_covers(rows: Rows, n: int, p: int) -> List[Tuple[int, int]]:
    """
    Exact covers of supp(rows[p]) by unit vectors and other nonzero rows.

    Returns (K mask, M mask) pairs. The lowest uncovered column is covered
    first by a copied row, then by its unit vector. Indices in K | M are
    pairwise distinct.
    """
    covers = []

    def extend(remaining: int, used: int, units: int, copied: int) -> None:
        if not remaining:
            covers.append((units, copied))
            return
        low = remaining & -remaining
        for m in range(n):
            if m == p or (used >> m) & 1:
                continue
            row = rows[m]
            if row & low and not row & ~remaining:
                extend(remaining & ~row, used | (1 << m), units, copied | (1 << m))
        if not used & low:
            extend(remaining & ~low, used | low, units | low, copied)

    extend(rows[p], 0, 0, 0)
    return covers


def _forward(rows: Rows, n: int, include_trivial: bool = False) -> Iterator[Tuple[int, int, int, Rows]]:
    for p in range(n):
        if not rows[p]:
            continue
        for units, copied in _exact_covers(rows, n, p):
            if not copied and not include_trivial:
                continue
            new_rows = rows[:p] + (units | copied,) + rows[p + 1:]
            yield p, units, copied, new_rows


def _inverse(rows: Rows, n: int, include_trivial: bool = False) -> Iterator[Tuple[int, int, int, Rows]]:
    """
    Matrices D with rows = apply_transfer(D, (p, K, M)).

    Row p of the current matrix is the indicator of K | M; D_p is rebuilt as
    K plus the rows B_m, which must be nonzero, pairwise disjoint and miss K.
    """
    for p in range(n):
        support = rows[p]
        if not support:
            continue
        candidates = [m for m in sorted(_indices(support)) if m != p and rows[m]]
        chosen_sets: List[Tuple[int, int]] = []

        def extend(index: int, chosen: int, union: int) -> None:
            if index == len(candidates):
                chosen_sets.append((chosen, union))
                return
            extend(index + 1, chosen, union)
            m = candidates[index]
            if not rows[m] & union:
                extend(index + 1, chosen | (1 << m), union | rows[m])

        extend(0, 0, 0)
        for chosen, union in chosen_sets:
            if not chosen and not include_trivial:
                continue
            units = support & ~chosen
            if union & units:
                continue
            new_rows = rows[:p] + (units | union,) + rows[p + 1:]
            yield p, units, chosen, new_rows


def _legality_error(rows: Rows, n: int, p: int, units: int, copied: int) -> Optional[str]:
    if not rows[p]:
        return f"row {p} is zero"
    if (copied >> p) & 1:
        return f"p={p} may not copy its own row"
    if units & copied:
        return "K and M overlap"
    covered = units
    for m in _indices(copied):
        if not rows[m]:
            return f"row {m} is zero"
        if rows[m] & covered:
            return f"row {m} overlaps another piece of the decomposition"
        covered |= rows[m]
    if covered != rows[p]:
        return f"pieces do not sum to row {p}"
    return None


# ==============================================================================
# Public move API
# ==============================================================================

def transfer_moves(B: ZeroOneMatrix, include_trivial: bool = False) -> List[TransferMove]:
    """
    All primitive transfers of B.

    Args:
        B: Vertex matrix
        include_trivial: Also return (p, supp(B_p), {}) for every nonzero row

    Returns:
        Moves ordered by p, then by the exact-cover search order
    """
    return [TransferMove(p, _indices(units), _indices(copied))
            for p, units, copied, _ in _forward(B.rows, B.n, include_trivial)]


def apply_transfer(B: ZeroOneMatrix, mv: TransferMove) -> ZeroOneMatrix:
    """
    Replace row p with the indicator of K | M.

    Raises:
        VertexError: If an index is out of range
        InvalidMoveError: If mv is not a decomposition of row p
    """
    for index in itertools.chain((mv.p,), mv.K, mv.M):
        require_vertex(index, B.n)

    units, copied = _mask(mv.K), _mask(mv.M)
    error = _legality_error(B.rows, B.n, mv.p, units, copied)
    if error:
        raise InvalidMoveError(f"Illegal transfer {mv}: {error}")

    rows = list(B.rows)
    rows[mv.p] = units | copied
    return ZeroOneMatrix(B.n, tuple(rows))


def inverse_transfer_neighbors(B: ZeroOneMatrix, include_trivial: bool = False) -> List[ZeroOneMatrix]:
    """Every D such that some primitive transfer of D yields B."""
    found = []
    seen: Set[Rows] = set()
    for p, units, copied, rows in _inverse(B.rows, B.n, include_trivial):
        if rows in seen:
            continue
        error = _legality_error(rows, B.n, p, units, copied)
        if error:
            log_safe("Discarded inverse neighbour", {'p': p, 'error': error}, level='DEBUG')
            continue
        seen.add(rows)
        found.append(ZeroOneMatrix(B.n, rows))
    return found


def reverse_transfer_moves(B: ZeroOneMatrix, include_trivial: bool = False) -> List[TransferMove]:
    """Transfers of transpose(B) at vertices that are cofinal in B."""
    cofinal = cofinal_vertices(B)
    return [mv for mv in transfer_moves(transpose(B), include_trivial) if mv.p in cofinal]


def apply_reverse_transfer(B: ZeroOneMatrix, mv: TransferMove) -> ZeroOneMatrix:
    """
    Apply a transfer to transpose(B) and transpose back.

    Raises:
        CofinalityError: If mv.p is not cofinal in B
    """
    require_vertex(mv.p, B.n)
    if not is_cofinal(B, mv.p):
        raise CofinalityError(f"Vertex {mv.p} is not cofinal")
    return transpose(apply_transfer(transpose(B), mv))


def orbit(B: ZeroOneMatrix) -> FrozenSet[ZeroOneMatrix]:
    """All permutation conjugates of B."""
    return frozenset(ZeroOneMatrix(B.n, permute_rows(B.rows, images))
                     for images in itertools.permutations(range(B.n)))


# ==============================================================================
# Class enumeration
# ==============================================================================

Neighbour = Tuple[str, Rows, tuple]
Expander = Callable[[Rows], Iterable[Neighbour]]


@dataclass
class _Exploration:
    seen: Set[Rows]
    exhausted: bool
    moves_used: Dict[str, int]
    parents: Dict[Rows, Optional[Tuple[Rows, str, tuple]]]
    found: bool


def _primitive_expander(n: int) -> Expander:
    def expand(rows: Rows) -> Iterator[Neighbour]:
        for p, units, copied, new_rows in _forward(rows, n):
            yield FORWARD, new_rows, (p, units, copied)
        for p, units, copied, new_rows in _inverse(rows, n):
            yield INVERSE, new_rows, (p, units, copied)
    return expand


def _reverse_expander(n: int) -> Expander:
    def expand(rows: Rows) -> Iterator[Neighbour]:
        cofinal = cofinal_vertices(ZeroOneMatrix(n, rows))
        columns = transpose_rows(rows, n)
        for p, units, copied, new_columns in _forward(columns, n):
            if p in cofinal:
                yield REVERSE_FORWARD, transpose_rows(new_columns, n), (p, units, copied)
        for p, units, copied, new_columns in _inverse(columns, n):
            new_rows = transpose_rows(new_columns, n)
            # the move is applied to the neighbour, so cofinality is checked there
            if p in cofinal_vertices(ZeroOneMatrix(n, new_rows)):
                yield REVERSE_INVERSE, new_rows, (p, units, copied)
    return expand


def _conjugates(rows: Rows, n: int, tables: Optional[list]) -> Iterator[Neighbour]:
    if tables is None:
        for images in itertools.permutations(range(n)):
            yield PERMUTATION, permute_rows(rows, images), images
        return
    for images, table in tables:
        yield PERMUTATION, tuple(table[rows[images[i]]] for i in range(n)), images


def _explore(start: Rows, n: int, expand: Expander, use_permutations: bool, max_size: int,
             target: Optional[Rows] = None, track_parents: bool = False) -> _Exploration:
    """
    Breadth-first closure of start under expand and, optionally, conjugation.

    A matrix reached by conjugation shares its orbit with the matrix it was
    reached from, so only matrices reached by a transfer (and start) have
    their conjugates generated. The conjugation tables are built only once a
    second matrix needs its conjugates.
    """
    tables = None
    conjugated = 0
    seen = {start}
    parents: Dict[Rows, Optional[Tuple[Rows, str, tuple]]] = {start: None} if track_parents else {}
    moves_used: Dict[str, int] = {}
    queue = deque([(start, True)])
    exhausted = True
    found = target is not None and start == target

    while queue and not found and exhausted:
        rows, conjugate = queue.popleft()
        neighbours = expand(rows)
        if conjugate and use_permutations:
            if tables is None and conjugated:
                tables = column_tables(n)
            neighbours = itertools.chain(neighbours, _conjugates(rows, n, tables))
            conjugated += 1

        for kind, new_rows, detail in neighbours:
            if new_rows in seen:
                continue
            if len(seen) >= max_size:
                exhausted = False
                break
            seen.add(new_rows)
            moves_used[kind] = moves_used.get(kind, 0) + 1
            if track_parents:
                parents[new_rows] = (rows, kind, detail)
            queue.append((new_rows, kind != PERMUTATION))
            if new_rows == target:
                found = True
                break

    return _Exploration(seen, exhausted, moves_used, parents, found)


def _check_class_size(B: ZeroOneMatrix) -> None:
    limit = get_canon_max_n()
    if B.n > limit:
        raise SizeLimitError(f"Class enumeration supports n <= {limit}, got {B.n}")


def _report(B: ZeroOneMatrix, result: _Exploration, operation: str, max_size: int,
            collect_members: bool) -> ClassReport:
    if not result.exhausted:
        log_cap_reached(operation, max_size, len(result.seen))
    members = None
    if collect_members:
        members = [ZeroOneMatrix(B.n, rows) for rows in sorted(result.seen)]
    log_safe(f"{operation} finished", {'size': len(result.seen), 'exhausted': result.exhausted,
                                       'moves': result.moves_used})
    return ClassReport(len(result.seen), result.exhausted, members, dict(result.moves_used))


def equivalence_class(B: ZeroOneMatrix, use_permutations: bool = True, max_size: Optional[int] = None,
                      collect_members: bool = False) -> ClassReport:
    """
    Enumerate the primitive equivalence class of B.

    Args:
        B: Starting matrix
        use_permutations: Close under permutation conjugation as well
        max_size: Stop once this many distinct matrices are known (GCE_CLASS_MAX_SIZE)
        collect_members: Return every member in ClassReport.representatives

    Returns:
        ClassReport counting distinct matrices
    """
    _check_class_size(B)
    cap = max_size or get_class_max_size()
    result = _explore(B.rows, B.n, _primitive_expander(B.n), use_permutations, cap)
    return _report(B, result, 'equivalence_class', cap, collect_members)


def reverse_equivalence_class(B: ZeroOneMatrix, use_permutations: bool = True,
                              max_size: Optional[int] = None, collect_members: bool = False) -> ClassReport:
    """Class of B under reverse primitive transfers in both directions."""
    _check_class_size(B)
    cap = max_size or get_class_max_size()
    result = _explore(B.rows, B.n, _reverse_expander(B.n), use_permutations, cap)
    return _report(B, result, 'reverse_equivalence_class', cap, collect_members)


def class_members(B: ZeroOneMatrix, use_permutations: bool = True,
                  max_size: Optional[int] = None) -> Tuple[Set[Rows], bool]:
    """Packed rows of every class member, and whether the class was exhausted."""
    _check_class_size(B)
    cap = max_size or get_class_max_size()
    result = _explore(B.rows, B.n, _primitive_expander(B.n), use_permutations, cap)
    if not result.exhausted:
        log_cap_reached('class_members', cap, len(result.seen))
    return result.seen, result.exhausted


def _describe_step(kind: str, detail: tuple) -> str:
    if kind == PERMUTATION:
        return f"conjugate by {list(detail)}"
    p, units, copied = detail
    move = TransferMove(p, _indices(units), _indices(copied))
    if kind in (FORWARD, REVERSE_FORWARD):
        return f"apply {move}"
    return f"undo {move}"


def _witness(parents: Dict[Rows, Optional[Tuple[Rows, str, tuple]]], end: Rows, n: int) -> List[WitnessStep]:
    steps = []
    current = end
    while parents[current] is not None:
        previous, kind, detail = parents[current]
        steps.append(WitnessStep(kind, ZeroOneMatrix(n, current), _describe_step(kind, detail)))
        current = previous
    steps.reverse()
    return steps


def are_primitively_equivalent(A: ZeroOneMatrix, B: ZeroOneMatrix, max_size: Optional[int] = None,
                               use_permutations: bool = True) -> EquivalenceResult:
    """
    Search the class of A for B.

    Returns:
        TRUE with a step-by-step witness from A to B, FALSE when the class of A
        is exhausted without meeting B, INCONCLUSIVE when the cap stops the search

    Raises:
        DimensionError: If A and B have different sizes
    """
    if A.n != B.n:
        raise DimensionError(f"Sizes differ: {A.n} and {B.n}")
    _check_class_size(A)
    cap = max_size or get_class_max_size()

    result = _explore(A.rows, A.n, _primitive_expander(A.n), use_permutations, cap,
                      target=B.rows, track_parents=True)
    if result.found:
        return EquivalenceResult(Verdict.TRUE, _witness(result.parents, B.rows, A.n), len(result.seen))
    if result.exhausted:
        return EquivalenceResult(Verdict.FALSE, None, len(result.seen))
    log_cap_reached('are_primitively_equivalent', cap, len(result.seen))
    return EquivalenceResult(Verdict.INCONCLUSIVE, None, len(result.seen))
