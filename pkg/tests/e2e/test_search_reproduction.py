"""
End-to-end reproduction of the four-vertex classification search.

Enumerates every irreducible 4x4 matrix and checks that the known pair with
isomorphic K0 data but different primitive classes is reported.
"""
import pytest

from graphcore import canonical_form
from primeq import class_members
from search import run_search
from tests.fixtures.matrices import K0_COUNTER_A, K0_COUNTER_B


@pytest.mark.e2e
@pytest.mark.slow
class TestFourVertexSearch:
    """run_search(4, irreducible_only=True)."""

    @pytest.fixture(scope='class')
    def report(self):
        return run_search(4, irreducible_only=True, threads=4)

    def test_known_pair_reported(self, report):
        first = canonical_form(K0_COUNTER_A)[0]
        partners, exhausted = class_members(K0_COUNTER_B)
        assert exhausted
        found = [
            (a, b) for a, b in report.counterexample_pairs
            if (a == first and b.rows in partners) or (b == first and a.rows in partners)
        ]
        assert found

    def test_pairs_are_irreducible_and_distinct(self, report):
        for a, b in report.counterexample_pairs:
            assert a != b
            assert canonical_form(a)[0] == a
            assert canonical_form(b)[0] == b

    def test_enumerated_everything(self, report):
        assert report.stats['matrices_enumerated'] == 1 << 16
