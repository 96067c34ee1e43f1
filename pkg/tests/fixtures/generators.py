"""
Random test data built on a seeded Faker instance.

This module provides:
- Random 0-1 matrices (optionally without sinks)
- Random permutations and vertex splits
- A shorthand for writing matrices as row strings
"""
from typing import List, Optional, Tuple

from faker import Faker

from explosion import VertexSplit, vertex_splits
from graphcore import Permutation, ZeroOneMatrix


# ==============================================================================
# Shorthand
# ==============================================================================

def M(*rows: str) -> ZeroOneMatrix:
    """Matrix from row strings: M("110", "001", "100")."""
    return ZeroOneMatrix.from_lists([[int(c) for c in row] for row in rows])


def split(v: int, first, second) -> VertexSplit:
    return VertexSplit(v, frozenset(first), frozenset(second))


# ==============================================================================
# Random Matrices
# ==============================================================================

def random_matrix(fake: Faker, n: int, density: float = 0.45) -> ZeroOneMatrix:
    """Random n x n 0-1 matrix; each entry is 1 with the given probability."""
    return ZeroOneMatrix.from_lists(
        [[int(fake.random.random() < density) for _ in range(n)] for _ in range(n)]
    )


def random_no_sink_matrix(fake: Faker, n: int, density: float = 0.4) -> ZeroOneMatrix:
    """Random matrix with a 1 forced into every zero row."""
    entries = random_matrix(fake, n, density).to_lists()
    for row in entries:
        if not any(row):
            row[fake.random_int(min=0, max=n - 1)] = 1
    return ZeroOneMatrix.from_lists(entries)


def random_permutation(fake: Faker, n: int) -> Permutation:
    return Permutation(tuple(fake.random.sample(range(n), n)))


# ==============================================================================
# Random Splits
# ==============================================================================

def random_split(fake: Faker, B: ZeroOneMatrix) -> Optional[VertexSplit]:
    """A random split at a random branching vertex, or None if B has none."""
    branching = [v for v in range(B.n) if B.out_degree(v) > 1]
    if not branching:
        return None
    v = fake.random.choice(branching)
    return fake.random.choice(vertex_splits(B, v))


def matrices_with_splits(fake: Faker, count: int, max_n: int = 5,
                         no_sinks: bool = True) -> List[Tuple[ZeroOneMatrix, VertexSplit]]:
    """count random (matrix, split) pairs with 2 <= n <= max_n."""
    cases = []
    while len(cases) < count:
        n = fake.random_int(min=2, max=max_n)
        B = random_no_sink_matrix(fake, n) if no_sinks else random_matrix(fake, n)
        chosen = random_split(fake, B)
        if chosen is not None:
            cases.append((B, chosen))
    return cases
