"""
Exhaustive classification search over small 0-1 matrices.

Enumerates matrices up to conjugacy, buckets them by the K0 pair invariant
and reports pairs whose K0 data are isomorphic but whose primitive
equivalence classes differ.
"""
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from gce_config import get_search_max_n
from graphcore import (
    Rows,
    Verdict,
    ZeroOneMatrix,
    canonical_rows,
    is_irreducible,
    is_permutation_matrix,
)
from ktheory import K0Invariant, k0_invariant, k0_orbit_key, k0_pairs_isomorphic
from logging_utils import log_safe, log_search_progress
from primeq import class_members
from validation_utils import SizeLimitError


PROGRESS_EVERY = 1 << 14


@dataclass
class SearchReport:
    n: int
    buckets: List[Tuple[str, List[ZeroOneMatrix]]]
    counterexample_pairs: List[Tuple[ZeroOneMatrix, ZeroOneMatrix]]
    stats: Dict[str, int] = field(default_factory=dict)
    complete: bool = True


@dataclass
class _BucketResult:
    pairs: List[Tuple[Rows, Rows]]
    explored: int
    complete: bool


def _canonical_classes(n: int, irreducible_only: bool, exclude_permutations: bool,
                       max_matrices: Optional[int]) -> Tuple[Set[Rows], int, bool]:
    classes: Set[Rows] = set()
    enumerated = 0
    total = 1 << (n * n)
    for rows in itertools.product(range(1 << n), repeat=n):
        if max_matrices is not None and enumerated >= max_matrices:
            return classes, enumerated, False
        enumerated += 1
        if enumerated % PROGRESS_EVERY == 0:
            log_search_progress('canonicalize', enumerated, total)

        matrix = ZeroOneMatrix(n, rows)
        if irreducible_only and not is_irreducible(matrix):
            continue
        if exclude_permutations and is_permutation_matrix(matrix):
            continue
        canonical, _ = canonical_rows(rows, n)
        classes.add(canonical)
    return classes, enumerated, True


def _resolve_bucket(n: int, reps: List[Rows], invariants: Dict[Rows, K0Invariant],
                    max_class_size: Optional[int]) -> _BucketResult:
    """
    Group the representatives of one bucket into primitive equivalence classes.

    Two groups are known to differ when either has an exhausted class that
    misses the other's representative.
    """
    groups: List[Tuple[List[Rows], Set[Rows], bool]] = []
    for rep in reps:
        home = next((g for g in groups if rep in g[1]), None)
        if home is not None:
            home[0].append(rep)
            continue
        seen, exhausted = class_members(ZeroOneMatrix(n, rep), max_size=max_class_size)
        merged = next((g for g in groups if g[0][0] in seen), None)
        if merged is not None:
            merged[0].append(rep)
            continue
        groups.append(([rep], seen, exhausted))

    pairs = []
    complete = True
    for (first, first_seen, first_done), (second, second_seen, second_done) in itertools.combinations(groups, 2):
        if not (first_done or second_done):
            complete = False
            continue
        verdict = k0_pairs_isomorphic(invariants[first[0]], invariants[second[0]])
        if verdict is Verdict.TRUE:
            pairs.append(tuple(sorted((first[0], second[0]))))
        elif verdict is Verdict.INCONCLUSIVE:
            complete = False

    return _BucketResult(pairs, len(groups), complete)


def run_search(n: int, irreducible_only: bool = False, exclude_permutations: bool = False,
               max_class_size: Optional[int] = None, threads: int = 1,
               max_matrices: Optional[int] = None) -> SearchReport:
    """
    Look for K0-isomorphic but primitively inequivalent matrices of size n.

    Args:
        n: Matrix size
        irreducible_only: Keep only irreducible matrices
        exclude_permutations: Drop permutation matrices
        max_class_size: Cap per class enumeration (GCE_CLASS_MAX_SIZE)
        threads: Worker threads for the per-bucket class searches
        max_matrices: Stop enumerating after this many matrices

    Returns:
        SearchReport; complete is False when a cap cut the search short

    Raises:
        SizeLimitError: If n exceeds GCE_SEARCH_MAX_N and max_matrices is not set
    """
    limit = get_search_max_n()
    if n < 1 or (n > limit and max_matrices is None):
        raise SizeLimitError(f"Search supports 1 <= n <= {limit} without --max-matrices, got {n}")

    started = time.monotonic()
    classes, enumerated, complete = _canonical_classes(n, irreducible_only, exclude_permutations, max_matrices)
    log_safe("Canonical classes", {'n': n, 'enumerated': enumerated, 'classes': len(classes)})

    invariants = {rows: k0_invariant(ZeroOneMatrix(n, rows)) for rows in classes}
    buckets: Dict[tuple, List[Rows]] = {}
    for rows in sorted(classes):
        buckets.setdefault(k0_orbit_key(invariants[rows]), []).append(rows)

    ordered = sorted(buckets.items(), key=lambda item: repr(item[0]))
    contested = [reps for _, reps in ordered if len(reps) > 1]

    def work(reps: List[Rows]) -> _BucketResult:
        return _resolve_bucket(n, reps, invariants, max_class_size)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(work, contested))

    pairs = sorted(pair for result in results for pair in result.pairs)
    complete = complete and all(result.complete for result in results)
    log_search_progress('classes', len(results), len(contested))

    report = SearchReport(
        n=n,
        buckets=[(repr(key), [ZeroOneMatrix(n, rows) for rows in reps]) for key, reps in ordered],
        counterexample_pairs=[(ZeroOneMatrix(n, a), ZeroOneMatrix(n, b)) for a, b in pairs],
        stats={
            'matrices_enumerated': enumerated,
            'canonical_classes': len(classes),
            'buckets': len(ordered),
            'classes_explored': sum(result.explored for result in results),
            'elapsed_ms': int((time.monotonic() - started) * 1000),
        },
        complete=complete,
    )
    log_safe("Search finished", report.stats)
    return report
