"""
Unit tests for explosion module.

Tests vertex splitting including:
- Vertex explosion and its index convention
- Complete and full explosions against hand-computed matrices
- Explosion recognition, reverse explosions and the column characterization
- Edge matrices
"""
import pytest

from explosion import (
    complete_explosion,
    complete_explosion_steps,
    edge_matrix,
    explosion_lemma_check,
    explosions,
    full_explosion,
    is_explosion_of,
    is_reverse_explosion_of,
    reverse_explosion,
    samerel_report,
    vertex_explosion,
    vertex_splits,
)
from gce_config import get_canon_max_n
from graphcore import Permutation, ZeroOneMatrix, canonical_form, permute, sinks, transpose
from validation_utils import (
    CofinalityError,
    DimensionError,
    InvalidSplitError,
    VertexError,
)
from tests.fixtures.generators import M, matrices_with_splits, split
from tests.fixtures.matrices import (
    COMPLETE_B1,
    COMPLETE_B2,
    COMPLETE_B3,
    EXPLODED_A3,
    EXPLODED_B4,
    EXPLODED_B4_SPLIT,
    EXPLODED_C4,
    EXPLODED_C4_SPLIT,
    SINK_B,
    SINK_C,
)


# ==============================================================================
# Tests for vertex_explosion()
# ==============================================================================

@pytest.mark.unit
class TestVertexExplosion:
    """Tests for vertex_explosion()."""

    def test_explosion_of_three_vertex_graph(self):
        assert vertex_explosion(EXPLODED_A3, split(*EXPLODED_B4_SPLIT)) == EXPLODED_B4
        assert vertex_explosion(EXPLODED_A3, split(*EXPLODED_C4_SPLIT)) == EXPLODED_C4

    def test_loop_kept_by_first_copy(self):
        """Test a loop in M1 becomes edges from v' to both copies."""
        assert vertex_explosion(M("11", "01"), split(0, {0}, {1})) == M("110", "001", "001")

    def test_loop_moved_to_second_copy(self):
        """Test a loop in M2 becomes edges from v'' to both copies."""
        assert vertex_explosion(M("11", "01"), split(0, {1}, {0})) == M("001", "110", "001")

    def test_duplicated_columns(self, fake):
        for B, chosen in matrices_with_splits(fake, 50):
            C = vertex_explosion(B, chosen)
            v = chosen.v
            assert C.n == B.n + 1
            assert all(C.entry(x, v) == C.entry(x, v + 1) for x in range(C.n))

    def test_no_new_sinks(self, fake):
        for B, chosen in matrices_with_splits(fake, 50, no_sinks=True):
            assert sinks(vertex_explosion(B, chosen)) == frozenset()

    def test_out_degree_one_rejected(self):
        with pytest.raises(InvalidSplitError, match="out-degree"):
            vertex_explosion(M("01", "10"), split(0, {1}, set()))

    def test_empty_half_rejected(self):
        with pytest.raises(InvalidSplitError, match="nonempty"):
            vertex_explosion(EXPLODED_A3, split(0, {0, 1, 2}, set()))

    def test_not_a_partition(self):
        with pytest.raises(InvalidSplitError):
            vertex_explosion(EXPLODED_A3, split(1, {0}, {2}))

    def test_overlap_rejected(self):
        with pytest.raises(InvalidSplitError, match="overlap"):
            vertex_explosion(EXPLODED_A3, split(0, {0, 1}, {1, 2}))

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexError):
            vertex_explosion(EXPLODED_A3, split(3, {0}, {1}))


@pytest.mark.unit
class TestVertexSplits:
    """Tests for vertex_splits() and explosions()."""

    def test_ordered_splits_in_mask_order(self):
        splits = vertex_splits(EXPLODED_A3, 1)
        assert splits == [split(1, {0}, {1}), split(1, {1}, {0})]

    def test_count(self):
        assert len(vertex_splits(EXPLODED_A3, 0)) == 6
        assert vertex_splits(M("01", "10"), 0) == []

    def test_explosions_distinct_up_to_conjugacy(self):
        found = explosions(EXPLODED_A3)
        forms = [canonical_form(matrix)[0] for _, matrix in found]
        assert len(forms) == len(set(forms))
        assert canonical_form(EXPLODED_B4)[0] in forms
        assert canonical_form(EXPLODED_C4)[0] in forms


# ==============================================================================
# Tests for complete_explosion()
# ==============================================================================

@pytest.mark.unit
class TestCompleteExplosion:
    """Tests for complete_explosion() and complete_explosion_steps()."""

    def test_first_iteration(self):
        steps = complete_explosion_steps(COMPLETE_B1, 0)
        assert steps[1] == COMPLETE_B2

    def test_second_iteration(self):
        steps = complete_explosion_steps(COMPLETE_B1, 0)
        assert steps == [COMPLETE_B1, COMPLETE_B2, COMPLETE_B3]
        assert complete_explosion(COMPLETE_B1, 0) == COMPLETE_B3

    def test_each_iteration_is_a_vertex_explosion(self):
        """Test every step splits the last edge of v off into its own copy."""
        assert vertex_explosion(COMPLETE_B1, split(0, {0, 1}, {2})) == COMPLETE_B2
        assert vertex_explosion(COMPLETE_B2, split(0, {0, 1}, {2})) == COMPLETE_B3

    def test_one_step_per_extra_edge(self, matrix_factory):
        for _ in range(20):
            B = matrix_factory(4, density=0.6)
            for v in range(4):
                if B.out_degree(v) > 1:
                    result = complete_explosion(B, v)
                    assert result.n == B.n + B.out_degree(v) - 1

    def test_moves_v_to_front(self):
        """Test the result starts with v and its copies, then the other vertices in order."""
        B = M("000", "000", "110")
        assert complete_explosion(B, 2) == M("0010", "0001", "0000", "0000")

    def test_out_degree_one_rejected(self):
        with pytest.raises(InvalidSplitError):
            complete_explosion(M("01", "10"), 0)
        with pytest.raises(InvalidSplitError):
            complete_explosion_steps(M("01", "10"), 1)


@pytest.mark.unit
class TestFullExplosion:
    """Tests for full_explosion() and samerel_report()."""

    def test_matches_edge_matrix_without_sinks(self, fake):
        """Test graphs whose edge matrix is small enough to canonicalize."""
        checked = 0
        for B, _ in matrices_with_splits(fake, 40, max_n=4, no_sinks=True):
            if B.edge_count() > get_canon_max_n():
                continue
            assert canonical_form(full_explosion(B))[0] == canonical_form(edge_matrix(B).matrix)[0]
            checked += 1
        assert checked >= 10

    def test_no_branching_is_unchanged(self):
        cycle = M("010", "001", "100")
        assert full_explosion(cycle) == cycle

    def test_two_stage_agrees(self):
        report = samerel_report(EXPLODED_A3, split(*EXPLODED_B4_SPLIT))
        assert report.agrees
        assert report.direct == canonical_form(complete_explosion(EXPLODED_A3, 0))[0]

    def test_two_stage_agrees_with_loops(self):
        report = samerel_report(M("11", "11"), split(0, {0}, {1}))
        assert report.agrees


# ==============================================================================
# Tests for is_explosion_of()
# ==============================================================================

@pytest.mark.unit
class TestIsExplosionOf:
    """Tests for is_explosion_of()."""

    def test_witness_reproduces_target(self):
        for target in (EXPLODED_B4, EXPLODED_C4):
            witness = is_explosion_of(EXPLODED_A3, target)
            assert witness is not None
            found, sigma = witness
            assert permute(vertex_explosion(EXPLODED_A3, found), sigma) == target

    def test_sink_graph_not_an_explosion(self):
        assert is_explosion_of(SINK_B, SINK_C) is None

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            is_explosion_of(EXPLODED_A3, EXPLODED_A3)

    def test_finds_constructed_explosions(self, fake):
        """Test recognition succeeds on 200 explosions of random graphs relabelled at random."""
        for B, chosen in matrices_with_splits(fake, 200, max_n=5, no_sinks=False):
            C = vertex_explosion(B, chosen)
            images = tuple(fake.random.sample(range(C.n), C.n))
            target = permute(C, Permutation(images))
            witness = is_explosion_of(B, target)
            assert witness is not None
            found, sigma = witness
            assert permute(vertex_explosion(B, found), sigma) == target


# ==============================================================================
# Tests for reverse explosions
# ==============================================================================

@pytest.mark.unit
class TestReverseExplosion:
    """Tests for reverse_explosion() and is_reverse_explosion_of()."""

    def test_unwinds_to_explosion_of_transpose(self):
        B = M("110", "011", "101")
        chosen = split(0, {0}, {2})
        assert transpose(reverse_explosion(B, chosen)) == vertex_explosion(transpose(B), chosen)

    def test_non_cofinal_vertex(self):
        B = M("100", "011", "011")
        with pytest.raises(CofinalityError):
            reverse_explosion(B, split(0, {0}, {1}))

    def test_recognized(self):
        B = M("110", "011", "101")
        C = reverse_explosion(B, split(0, {0}, {2}))
        witness = is_reverse_explosion_of(B, C)
        assert witness is not None
        found, sigma = witness
        assert permute(transpose(vertex_explosion(transpose(B), found)), sigma) == C


# ==============================================================================
# Tests for explosion_lemma_check()
# ==============================================================================

@pytest.mark.unit
class TestExplosionLemmaCheck:
    """Tests for explosion_lemma_check()."""

    def test_constructed_explosions_pass(self, fake):
        for B, chosen in matrices_with_splits(fake, 60):
            C = vertex_explosion(B, chosen)
            assert explosion_lemma_check(B, C, chosen.v, chosen.v, chosen.v + 1, chosen)

    def test_sink_pair_fails(self):
        """Test the 3-vertex graph with two sinks fails for every split of the loop vertex."""
        for chosen in vertex_splits(SINK_B, 0):
            for v1, v2 in ((0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)):
                assert not explosion_lemma_check(SINK_B, SINK_C, 0, v1, v2, chosen)

    def test_perturbed_duplicate_column_fails(self):
        chosen = split(*EXPLODED_B4_SPLIT)
        C = vertex_explosion(EXPLODED_A3, chosen).to_lists()
        C[2][1] ^= 1
        assert not explosion_lemma_check(EXPLODED_A3, ZeroOneMatrix.from_lists(C), 0, 0, 1, chosen)

    def test_wrong_sizes(self):
        with pytest.raises(DimensionError):
            explosion_lemma_check(EXPLODED_A3, EXPLODED_A3, 0, 0, 1, split(0, {0}, {1, 2}))


# ==============================================================================
# Tests for edge_matrix()
# ==============================================================================

@pytest.mark.unit
class TestEdgeMatrix:
    """Tests for edge_matrix()."""

    def test_single_loop(self):
        result = edge_matrix(M("1"))
        assert result.matrix == M("1")
        assert result.edges == ((0, 0),)

    def test_two_cycle(self):
        assert edge_matrix(M("01", "10")).matrix == M("01", "10")

    def test_row_major_edge_order(self):
        result = edge_matrix(M("11", "01"))
        assert result.edges == ((0, 0), (0, 1), (1, 1))
        assert result.matrix == M("110", "001", "001")

    def test_edge_into_sink(self):
        result = edge_matrix(M("01", "00"))
        assert result.edges == ((0, 1),)
        assert result.matrix == M("0")

    def test_entries_follow_edge_ends(self, matrix_factory):
        for _ in range(25):
            B = matrix_factory(4, density=0.5)
            if not B.edge_count():
                continue
            result = edge_matrix(B)
            for a, (_, end) in enumerate(result.edges):
                for b, (start, _) in enumerate(result.edges):
                    assert result.matrix.entry(a, b) == int(end == start)

    def test_no_edges(self):
        with pytest.raises(DimensionError):
            edge_matrix(M("00", "00"))
