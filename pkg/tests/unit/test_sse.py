"""
Unit tests for sse module.

Tests elementary strong shift equivalence including:
- Factor pair validation and exact products
- Column subdivisions and the imprimitivity graph
- Constructing factor pairs from explosions
"""
import pytest

from explosion import is_explosion_of, vertex_explosion
from graphcore import Permutation, ZeroOneMatrix, permute, transpose
from ktheory import k0_invariant
from sse import (
    FactorPair,
    esse_cs_decide,
    imprimitivity_graph,
    is_column_subdivision,
    verify_esse,
)
from validation_utils import DimensionError, MatrixFormatError, SinkError
from tests.fixtures.generators import M, matrices_with_splits
from tests.fixtures.matrices import (
    EXPLODED_A3,
    EXPLODED_B4,
    EXPLODED_C4,
    IMPRIMITIVITY_BE,
    IMPRIMITIVITY_BF,
    IMPRIMITIVITY_BX,
    IMPRIMITIVITY_R,
    IMPRIMITIVITY_S,
    SINK_B,
    SINK_C,
    SINK_R,
    SINK_S,
    SSE_R,
    SSE_RS,
    SSE_S,
    SSE_SR,
)


def _transposed(entries):
    return [list(column) for column in zip(*entries)]


# ==============================================================================
# Tests for FactorPair
# ==============================================================================

@pytest.mark.unit
class TestFactorPair:
    """Tests for FactorPair validation and products."""

    def test_sizes(self):
        pair = FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S)
        assert (pair.n, pair.m) == (2, 3)

    def test_products(self):
        rs, sr = FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S).products()
        assert rs == IMPRIMITIVITY_BE.to_lists()
        assert sr == IMPRIMITIVITY_BF.to_lists()

    def test_products_with_larger_entries(self):
        rs, sr = FactorPair([[2, 1]], [[1], [3]]).products()
        assert rs == [[5]]
        assert sr == [[2, 1], [6, 3]]

    def test_mismatched_shapes(self):
        with pytest.raises(DimensionError):
            FactorPair([[1, 0]], [[1, 0], [0, 1]])

    def test_ragged_factor(self):
        with pytest.raises(DimensionError, match="ragged"):
            FactorPair([[1, 0], [1]], [[1], [1]])

    def test_negative_entries(self):
        with pytest.raises(MatrixFormatError):
            FactorPair([[-1]], [[1]])

    def test_empty_factor(self):
        with pytest.raises(DimensionError):
            FactorPair([], [[1]])


# ==============================================================================
# Tests for verify_esse() / is_column_subdivision()
# ==============================================================================

@pytest.mark.unit
class TestVerifyEsse:
    """Tests for verify_esse()."""

    def test_two_and_three_vertex_graphs(self):
        assert verify_esse(IMPRIMITIVITY_BE, IMPRIMITIVITY_BF, FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S))

    def test_identity_factor(self, matrix_factory):
        B = matrix_factory(4)
        identity = ZeroOneMatrix.identity(4).to_lists()
        assert verify_esse(B, B, FactorPair(B.to_lists(), identity))

    def test_three_vertex_products(self):
        assert verify_esse(SSE_RS, SSE_SR, FactorPair(SSE_R, SSE_S))

    def test_factors_swapped(self):
        assert not verify_esse(SSE_SR, SSE_RS, FactorPair(SSE_R, SSE_S))

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            verify_esse(IMPRIMITIVITY_BF, IMPRIMITIVITY_BE, FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S))

    def test_invariant_factors_shared(self):
        """Test both products have the same K0 group, though not necessarily the same identity class."""
        for R, S in ((SSE_R, SSE_S), (IMPRIMITIVITY_R, IMPRIMITIVITY_S)):
            rs, sr = FactorPair(R, S).products()
            a = k0_invariant(ZeroOneMatrix.from_lists(rs))
            b = k0_invariant(ZeroOneMatrix.from_lists(sr))
            assert a.torsion_factors == b.torsion_factors
            assert a.free_rank == b.free_rank


@pytest.mark.unit
class TestIsColumnSubdivision:
    """Tests for is_column_subdivision()."""

    def test_block_form(self):
        assert is_column_subdivision([[1, 1, 0], [0, 0, 1]])

    def test_identity(self):
        assert is_column_subdivision(ZeroOneMatrix.identity(3).to_lists())

    def test_column_sum_two(self):
        assert not is_column_subdivision([[1], [1]])

    def test_entry_above_one(self):
        assert not is_column_subdivision([[2, 0]])

    def test_zero_column_allowed(self):
        assert is_column_subdivision(SINK_R)

    def test_repeated_row_factor(self):
        assert not is_column_subdivision(SSE_R)


# ==============================================================================
# Tests for imprimitivity_graph()
# ==============================================================================

@pytest.mark.unit
class TestImprimitivityGraph:
    """Tests for imprimitivity_graph()."""

    def test_five_vertex_graph(self):
        assert imprimitivity_graph(FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S)) == IMPRIMITIVITY_BX

    def test_single_vertices(self):
        assert imprimitivity_graph(FactorPair([[1]], [[1]])) == M("01", "10")

    def test_block_structure(self):
        graph = imprimitivity_graph(FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S)).to_lists()
        n = len(IMPRIMITIVITY_R)
        assert [row[:n] for row in graph[:n]] == [[0] * n] * n
        assert [row[n:] for row in graph[:n]] == IMPRIMITIVITY_R
        assert [row[:n] for row in graph[n:]] == IMPRIMITIVITY_S
        assert all(not any(row[n:]) for row in graph[n:])

    def test_transposed_factors(self):
        """Test swapping and transposing the factors transposes the graph."""
        forward = imprimitivity_graph(FactorPair(IMPRIMITIVITY_R, IMPRIMITIVITY_S))
        backward = imprimitivity_graph(FactorPair(_transposed(IMPRIMITIVITY_S), _transposed(IMPRIMITIVITY_R)))
        assert backward == transpose(forward)

    def test_rejects_integer_entries(self):
        with pytest.raises(MatrixFormatError):
            imprimitivity_graph(FactorPair([[2]], [[1]]))


# ==============================================================================
# Tests for esse_cs_decide()
# ==============================================================================

@pytest.mark.unit
class TestEsseCsDecide:
    """Tests for esse_cs_decide()."""

    def test_explosion_pairs(self):
        for C in (EXPLODED_B4, EXPLODED_C4):
            pair = esse_cs_decide(EXPLODED_A3, C)
            assert pair is not None
            assert verify_esse(EXPLODED_A3, C, pair)
            assert is_column_subdivision(pair.R)

    def test_sinks_rejected(self):
        with pytest.raises(SinkError):
            esse_cs_decide(SINK_B, SINK_C)

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            esse_cs_decide(EXPLODED_A3, EXPLODED_A3)

    def test_non_explosion(self):
        """Test a 4-vertex graph that is not an explosion gets no factorization."""
        assert esse_cs_decide(EXPLODED_A3, M("0100", "0010", "0001", "1000")) is None

    def test_relabelled_explosions(self, fake):
        for B, chosen in matrices_with_splits(fake, 100, max_n=4, no_sinks=True):
            C = vertex_explosion(B, chosen)
            target = permute(C, Permutation(tuple(fake.random.sample(range(C.n), C.n))))
            pair = esse_cs_decide(B, target)
            assert pair is not None
            assert verify_esse(B, target, pair)
            assert is_column_subdivision(pair.R)
            assert is_explosion_of(B, target) is not None
