"""
K-theory of graph algebras: exact Smith normal form, the group coker(I - B^T)
with the class of the identity, and isomorphism of such pairs.
"""
import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, factorint

from gce_config import get_k0_brute_force_cap, verify_snf_enabled
from graphcore import Verdict, ZeroOneMatrix
from logging_utils import log_safe
from validation_utils import DimensionError, NormalFormError


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = diag(diag) with U, V unimodular."""
    diag: Tuple[int, ...]
    U: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class K0Invariant:
    """
    Cokernel of I - B^T with the class of the all-ones vector.

    identity_class lists one residue per torsion factor followed by one
    integer per free summand. identity_order is None when the class has
    infinite order.
    """
    torsion_factors: Tuple[int, ...]
    free_rank: int
    identity_class: Tuple[int, ...]
    identity_order: Optional[int]

    @property
    def torsion_class(self) -> Tuple[int, ...]:
        return self.identity_class[:len(self.torsion_factors)]

    @property
    def free_class(self) -> Tuple[int, ...]:
        return self.identity_class[len(self.torsion_factors):]


# ==============================================================================
# Smith normal form
# ==============================================================================

def _identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smallest_entry(A: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    n = len(A)
    for i in range(t, n):
        for j in range(t, n):
            if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(M: Sequence[Sequence[int]], verify: Optional[bool] = None) -> SmithDecomposition:
    """
    Smith normal form over the integers.

    Pivots on the smallest nonzero magnitude, clears its row and column, and
    folds in any row that the pivot does not divide. Diagonal entries are
    nonnegative, each divides the next, and zeros come last.

    Args:
        M: Square integer matrix
        verify: Re-check U * M * V and det(U), det(V); defaults to GCE_VERIFY_SNF

    Raises:
        DimensionError: If M is not square
        NormalFormError: If verification fails
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError("Smith normal form needs a square matrix")

    A = [[int(x) for x in row] for row in M]
    U = _identity(n)
    V = _identity(n)

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_columns(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        A[target] = [a + factor * b for a, b in zip(A[target], A[source])]
        U[target] = [a + factor * b for a, b in zip(U[target], U[source])]

    def add_column(target: int, source: int, factor: int) -> None:
        for row in A:
            row[target] += factor * row[source]
        for row in V:
            row[target] += factor * row[source]

    for t in range(n):
        while True:
            pivot = _smallest_entry(A, t)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_columns(t, pivot[1])
            p = A[t][t]

            clean = True
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_column(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue

            offender = next((i for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % p), None)
            if offender is None:
                break
            add_row(t, offender, 1)

        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    decomposition = SmithDecomposition(
        tuple(A[i][i] for i in range(n)),
        tuple(tuple(row) for row in U),
        tuple(tuple(row) for row in V),
    )

    if verify is None:
        verify = verify_snf_enabled()
    if verify:
        check_decomposition(M, decomposition)
    return decomposition


def check_decomposition(M: Sequence[Sequence[int]], decomposition: SmithDecomposition) -> None:
    """
    Raise NormalFormError unless decomposition is a Smith normal form of M.
    """
    if not M:
        return
    U = Matrix([list(row) for row in decomposition.U])
    V = Matrix([list(row) for row in decomposition.V])
    if U * Matrix([list(row) for row in M]) * V != Matrix.diag(*decomposition.diag):
        raise NormalFormError("U * M * V is not the reported diagonal")
    for name, transform in (('U', U), ('V', V)):
        if abs(transform.det()) != 1:
            raise NormalFormError(f"{name} is not unimodular")
    diag = decomposition.diag
    for a, b in zip(diag, diag[1:]):
        if a < 0 or (a == 0 and b != 0) or (a and b % a):
            raise NormalFormError(f"Diagonal {list(diag)} is not a divisibility chain")


# ==============================================================================
# K0 invariant
# ==============================================================================

def _element_order(residues: Sequence[int], factors: Sequence[int]) -> int:
    return reduce(math.lcm, (d // math.gcd(d, y) for d, y in zip(factors, residues)), 1)


def k0_invariant(B: ZeroOneMatrix) -> K0Invariant:
    """
    Presentation of K0: generators per vertex, relations e_i = sum_j B(i,j) e_j.

    The relations are the columns of I - B^T; the class of the identity is
    the image of the all-ones vector.
    """
    n = B.n
    relations = [[int(i == j) - B.entry(j, i) for j in range(n)] for i in range(n)]
    decomposition = smith_normal_form(relations)

    coordinates = [sum(row) for row in decomposition.U]
    factors, residues, free = [], [], []
    for d, y in zip(decomposition.diag, coordinates):
        if d == 0:
            free.append(y)
        elif d > 1:
            factors.append(d)
            residues.append(y % d)

    order = None if any(free) else _element_order(residues, factors)
    return K0Invariant(tuple(factors), len(free), tuple(residues) + tuple(free), order)


def describe_group(invariant: K0Invariant) -> str:
    """Text form such as "Z2+Z6" or "Z3+Z"; the trivial group is "0"."""
    parts = [f"Z{d}" for d in invariant.torsion_factors] + ['Z'] * invariant.free_rank
    return '+'.join(parts) if parts else '0'


# ==============================================================================
# Isomorphism of (group, element) pairs
# ==============================================================================

def _prime_powers(factors: Sequence[int]) -> Dict[int, List[int]]:
    """Prime -> exponent of that prime in each factor."""
    primes = set()
    for d in factors:
        primes.update(factorint(d))
    return {p: [factorint(d).get(p, 0) for d in factors] for p in sorted(primes)}


def _valuation(x: int, p: int) -> int:
    count = 0
    while x % p == 0:
        x //= p
        count += 1
    return count


def ulm_profile(factors: Sequence[int], element: Sequence[int]) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """
    Heights of x, px, p^2 x, ... in each p-primary component.

    Two elements of a finite abelian group lie in the same automorphism orbit
    exactly when these sequences agree for every prime.
    """
    profile = []
    for p, exponents in _prime_powers(factors).items():
        moduli = [p ** e for e in exponents]
        current = [y % q for y, q in zip(element, moduli)]
        heights = []
        while any(current):
            heights.append(min(_valuation(y, p) for y in current if y))
            current = [(y * p) % q for y, q in zip(current, moduli)]
        profile.append((p, tuple(heights)))
    return tuple(profile)


def _kernel_elements(factors: Sequence[int], d: int) -> List[Tuple[int, ...]]:
    """Elements of the group killed by d."""
    steps = [q // math.gcd(q, d) for q in factors]
    return list(itertools.product(*(range(0, q, step) for q, step in zip(factors, steps))))


def _automorphism_candidates(factors: Sequence[int]) -> int:
    return math.prod(math.prod(math.gcd(d, q) for q in factors) for d in factors)


def _apply(images: Sequence[Sequence[int]], element: Sequence[int], factors: Sequence[int]) -> Tuple[int, ...]:
    result = [0] * len(factors)
    for coefficient, image in zip(element, images):
        if coefficient:
            for i, q in enumerate(factors):
                result[i] = (result[i] + coefficient * image[i]) % q
    return tuple(result)


def _is_bijective(images: Sequence[Sequence[int]], factors: Sequence[int]) -> bool:
    order = math.prod(factors)
    span = {tuple(0 for _ in factors)}
    frontier = list(span)
    while frontier:
        element = frontier.pop()
        for image in images:
            moved = tuple((a + b) % q for a, b, q in zip(element, image, factors))
            if moved not in span:
                span.add(moved)
                frontier.append(moved)
    return len(span) == order


def _automorphisms(factors: Sequence[int]):
    choices = [_kernel_elements(factors, d) for d in factors]
    for images in itertools.product(*choices):
        yield images


def _torsion_orbits_equal(factors: Tuple[int, ...], x: Tuple[int, ...], y: Tuple[int, ...]) -> bool:
    if not factors:
        return True
    if _element_order(x, factors) != _element_order(y, factors):
        return False
    if _automorphism_candidates(factors) <= get_k0_brute_force_cap():
        for images in _automorphisms(factors):
            if _apply(images, x, factors) == y and _is_bijective(images, factors):
                return True
        return False
    return ulm_profile(factors, x) == ulm_profile(factors, y)


def k0_pairs_isomorphic(a: K0Invariant, b: K0Invariant) -> Verdict:
    """
    Decide whether some group isomorphism carries a's identity class to b's.

    Finite groups are decided exactly: by searching generator images when
    the search space is within GCE_K0_BRUTE_FORCE_CAP, otherwise by
    comparing height sequences. With a free part, the classes must have equal
    content; the torsion parts are then compared modulo that content.
    """
    if a.torsion_factors != b.torsion_factors or a.free_rank != b.free_rank:
        return Verdict.FALSE
    if a.identity_order != b.identity_order:
        return Verdict.FALSE

    factors = a.torsion_factors
    if not any(a.free_class) and not any(b.free_class):
        equal = _torsion_orbits_equal(factors, a.torsion_class, b.torsion_class)
        return Verdict.TRUE if equal else Verdict.FALSE

    if not any(a.free_class) or not any(b.free_class):
        return Verdict.FALSE

    content = reduce(math.gcd, (abs(y) for y in a.free_class), 0)
    if content != reduce(math.gcd, (abs(y) for y in b.free_class), 0):
        return Verdict.FALSE
    if content == 1 or not factors:
        return Verdict.TRUE

    # homomorphisms from the free part reach exactly content * T
    moduli = [math.gcd(content, d) for d in factors]
    if _automorphism_candidates(factors) > get_k0_brute_force_cap():
        log_safe("K0 comparison inconclusive", {'factors': list(factors), 'content': content}, level='INFO')
        return Verdict.INCONCLUSIVE
    for images in _automorphisms(factors):
        moved = _apply(images, a.torsion_class, factors)
        if all((m - t) % q == 0 for m, t, q in zip(moved, b.torsion_class, moduli)):
            if _is_bijective(images, factors):
                return Verdict.TRUE
    return Verdict.FALSE


def k0_orbit_key(invariant: K0Invariant) -> tuple:
    """
    Hashable key; isomorphic pairs always share a key.

    The key is exact for finite groups and for classes without a free
    component; otherwise it records only the content of the free coordinates.
    """
    factors = invariant.torsion_factors
    if not any(invariant.free_class):
        return ('torsion', factors, invariant.free_rank, ulm_profile(factors, invariant.torsion_class))
    content = reduce(math.gcd, (abs(y) for y in invariant.free_class), 0)
    return ('free', factors, invariant.free_rank, content)
