"""
Elementary strong shift equivalence with column subdivision.

For graphs without sinks of sizes n and n + 1, B = RS and C = SR with R a
column subdivision exactly when C is an explosion of B.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

from explosion import is_explosion_of, vertex_explosion
from graphcore import ZeroOneMatrix, sinks
from logging_utils import log_safe
from validation_utils import DimensionError, MatrixFormatError, SinkError


IntMatrix = Tuple[Tuple[int, ...], ...]


def _freeze(entries: Sequence[Sequence[int]], name: str) -> IntMatrix:
    frozen = tuple(tuple(int(x) for x in row) for row in entries)
    if not frozen or not frozen[0]:
        raise DimensionError(f"{name} is empty")
    if len({len(row) for row in frozen}) != 1:
        raise DimensionError(f"{name} has ragged rows")
    if any(x < 0 for row in frozen for x in row):
        raise MatrixFormatError(f"{name} has negative entries")
    return frozen


@dataclass(frozen=True)
class FactorPair:
    """R is n x m and S is m x n, both with nonnegative integer entries."""
    R: IntMatrix
    S: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, 'R', _freeze(self.R, 'R'))
        object.__setattr__(self, 'S', _freeze(self.S, 'S'))
        if len(self.R[0]) != len(self.S) or len(self.S[0]) != len(self.R):
            raise DimensionError(
                f"R is {len(self.R)}x{len(self.R[0])} but S is {len(self.S)}x{len(self.S[0])}"
            )

    @property
    def n(self) -> int:
        return len(self.R)

    @property
    def m(self) -> int:
        return len(self.S)

    def products(self) -> Tuple[List[List[int]], List[List[int]]]:
        """Exact integer products RS and SR."""
        r = Matrix([list(row) for row in self.R])
        s = Matrix([list(row) for row in self.S])
        return _to_ints(r * s), _to_ints(s * r)


def _to_ints(product: Matrix) -> List[List[int]]:
    return [[int(x) for x in row] for row in product.tolist()]


def verify_esse(B: ZeroOneMatrix, C: ZeroOneMatrix, pair: FactorPair) -> bool:
    """
    True iff RS = B and SR = C.

    Raises:
        DimensionError: If the factor sizes do not match B and C
    """
    if pair.n != B.n or pair.m != C.n:
        raise DimensionError(f"Factors link sizes {pair.n} and {pair.m}, matrices are {B.n} and {C.n}")
    rs, sr = pair.products()
    return rs == B.to_lists() and sr == C.to_lists()


def is_column_subdivision(R: Sequence[Sequence[int]]) -> bool:
    """0-1 matrix with at most one 1 in each column."""
    if any(x not in (0, 1) for row in R for x in row):
        return False
    return all(sum(column) <= 1 for column in zip(*R))


def imprimitivity_graph(pair: FactorPair) -> ZeroOneMatrix:
    """
    Bipartite graph [[0, R], [S, 0]] on the n + m vertices of both graphs.

    Raises:
        MatrixFormatError: If R or S has an entry other than 0 or 1
    """
    for name, factor in (('R', pair.R), ('S', pair.S)):
        if any(x not in (0, 1) for row in factor for x in row):
            raise MatrixFormatError(f"{name} is not a 0-1 matrix")

    n, m = pair.n, pair.m
    entries = [[0] * n + list(row) for row in pair.R]
    entries += [list(row) + [0] * m for row in pair.S]
    return ZeroOneMatrix.from_lists(entries)


def esse_cs_decide(B: ZeroOneMatrix, C: ZeroOneMatrix) -> Optional[FactorPair]:
    """
    Find R, S with B = RS, C = SR and R a column subdivision.

    R sends each vertex of the explosion to the vertex it came from; S is the
    explosion with the v'' column removed. Both are conjugated by the
    relabelling that turns the explosion into C.

    Raises:
        SinkError: If B or C has a sink
        DimensionError: Unless C has exactly one more vertex than B
    """
    for name, matrix in (('B', B), ('C', C)):
        if sinks(matrix):
            raise SinkError(f"{name} has sinks {sorted(sinks(matrix))}")
    if C.n != B.n + 1:
        raise DimensionError(f"Expected sizes n and n+1, got {B.n} and {C.n}")

    witness = is_explosion_of(B, C)
    if witness is None:
        return None
    split, sigma = witness
    exploded = vertex_explosion(B, split)
    v, n = split.v, B.n

    def merged(f: int) -> int:
        if f <= v:
            return f
        return v if f == v + 1 else f - 1

    def kept_column(b: int) -> int:
        return b if b <= v else b + 1

    base_r = [[int(merged(f) == b) for f in range(n + 1)] for b in range(n)]
    base_s = [[exploded.entry(f, kept_column(b)) for b in range(n)] for f in range(n + 1)]

    images = sigma.images
    R = [[base_r[b][images[i]] for i in range(n + 1)] for b in range(n)]
    S = [list(base_s[images[i]]) for i in range(n + 1)]

    pair = FactorPair(R, S)
    log_safe("Column subdivision factorization", {'split': str(split), 'sigma': list(images)}, level='DEBUG')
    return pair
