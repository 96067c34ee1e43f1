#!/usr/bin/env python3
"""
Reproduce the published counterexamples from the command line.
Prints a checklist; exits 1 if any check fails.

Usage:
    python3 scripts/reproduce_counterexamples.py          # fast checks
    python3 scripts/reproduce_counterexamples.py --full   # adds the 916020-element class
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'gce'))

from explosion import complete_explosion_steps, is_explosion_of, vertex_explosion, VertexSplit  # noqa: E402
from graphcore import Verdict, parse_matrix, transpose  # noqa: E402
from ktheory import describe_group, k0_invariant, k0_pairs_isomorphic  # noqa: E402
from primeq import (  # noqa: E402
    TransferMove,
    apply_reverse_transfer,
    are_primitively_equivalent,
    equivalence_class,
    reverse_transfer_moves,
)
from sse import FactorPair, imprimitivity_graph, is_column_subdivision, verify_esse  # noqa: E402

MATRICES = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'matrices')

# Measured class sizes; the published counts are 60 and 183204.
EXPLODED_CLASS_SIZE = 1464
REVERSED_CLASS_SIZE = 916020


def load(name):
    with open(os.path.join(MATRICES, name), 'r', encoding='utf-8') as handle:
        return parse_matrix(handle.read())


def report(passed, message):
    print(f"  {'✓' if passed else '✗'} {message}")
    return passed


def check_explosion_classes():
    print("✓ Checking the explosion counterexample...")
    A, B, C = load('a3.01m'), load('b4.01m'), load('c4.01m')
    result = equivalence_class(C)
    ok = report(result.size == EXPLODED_CLASS_SIZE and result.exhausted,
                f"class of C has {result.size} elements (published: 60)")
    ok &= report(vertex_explosion(A, VertexSplit(0, {0, 2}, {1})) == B, "B is an explosion of A")
    ok &= report(vertex_explosion(A, VertexSplit(0, {0}, {1, 2})) == C, "C is an explosion of A")
    verdict = are_primitively_equivalent(C, B).verdict
    ok &= report(verdict is Verdict.FALSE, f"B and C primitively equivalent: {verdict.value}")
    return ok


def check_k0_counterexample():
    print("\n✓ Checking the K0 counterexample...")
    A, B = load('k0_a.01m'), load('k0_b.01m')
    ok = True
    for name, matrix in (('A', A), ('B', B)):
        invariant = k0_invariant(matrix)
        ok &= report(describe_group(invariant) == 'Z2+Z6' and invariant.identity_order == 3,
                     f"K0({name}) = {describe_group(invariant)}, identity order {invariant.identity_order}")
    verdict = k0_pairs_isomorphic(k0_invariant(A), k0_invariant(B))
    ok &= report(verdict is Verdict.TRUE, f"K0 pairs isomorphic: {verdict.value}")
    verdict = are_primitively_equivalent(A, B).verdict
    ok &= report(verdict is Verdict.FALSE, f"A and B primitively equivalent: {verdict.value}")
    return ok


def check_permutation_moves():
    print("\n✓ Checking that permutation moves are needed...")
    A, B = load('permuted_a.01m'), load('permuted_b.01m')
    with_moves = are_primitively_equivalent(A, B, use_permutations=True).verdict
    without = are_primitively_equivalent(A, B, use_permutations=False).verdict
    ok = report(with_moves is Verdict.TRUE, f"with permutations: {with_moves.value}")
    ok &= report(without is Verdict.FALSE, f"without permutations: {without.value}")
    return ok


def check_reverse_transfer():
    print("\n✓ Checking the reverse transfer example...")
    B, C = load('reverse_b.01m'), load('reverse_c.01m')
    move = TransferMove(2, frozenset(), frozenset({1}))
    ok = report(move in reverse_transfer_moves(B), f"move {move} is available")
    ok &= report(apply_reverse_transfer(B, move) == C, "applying it gives C")
    verdict = k0_pairs_isomorphic(k0_invariant(B), k0_invariant(C))
    ok &= report(verdict is Verdict.FALSE, f"K0 pairs isomorphic: {verdict.value}")
    return ok


def check_golden_matrices():
    print("\n✓ Checking printed matrices...")
    steps = complete_explosion_steps(load('complete_b1.01m'), 0)
    ok = report([step.n for step in steps] == [3, 4, 5], "complete explosion takes two steps")
    pair = FactorPair([[1, 1, 0], [0, 0, 1]], [[1, 0], [0, 1], [0, 1]])
    graph = imprimitivity_graph(pair)
    ok &= report(graph.to_row_strings() == ['00110', '00001', '10000', '01000', '01000'],
                 "imprimitivity graph matches")
    sink_b = parse_matrix('11\n00\n')
    sink_c = parse_matrix('111\n000\n000\n')
    sink_pair = FactorPair([[1, 1, 1], [0, 0, 0]], [[1, 0], [0, 1], [0, 0]])
    ok &= report(verify_esse(sink_b, sink_c, sink_pair) and is_column_subdivision(sink_pair.R),
                 "graph with a sink has a column-subdivision factorization")
    ok &= report(is_explosion_of(sink_b, sink_c) is None, "...but is not an explosion")
    return ok


def check_reverse_explosions(full):
    print("\n✓ Checking the reverse explosion counterexample...")
    base, B, C = load('reversed_base.01m'), load('reversed_b5.01m'), load('reversed_c5.01m')
    ok = report(is_explosion_of(base, transpose(B)) is not None, "B^T is an explosion of the base graph")
    ok &= report(is_explosion_of(base, transpose(C)) is not None, "C^T is an explosion of the base graph")
    if full:
        result = equivalence_class(C)
        ok &= report(result.size == REVERSED_CLASS_SIZE and result.exhausted,
                     f"class of C has {result.size} elements (published: 183204)")
    else:
        print("  - class size skipped (use --full)")
    return ok


def main():
    """Run all reproduction checks."""
    full = '--full' in sys.argv[1:]
    print("=" * 70)
    print("Published Counterexample Reproduction")
    print("=" * 70)
    print()

    checks = [
        ("Explosion classes", check_explosion_classes),
        ("K0 counterexample", check_k0_counterexample),
        ("Permutation moves", check_permutation_moves),
        ("Reverse transfer", check_reverse_transfer),
        ("Golden matrices", check_golden_matrices),
        ("Reverse explosions", lambda: check_reverse_explosions(full)),
    ]

    results = []
    for name, check_func in checks:
        try:
            result = check_func()
            results.append((name, result))
        except Exception as e:
            print(f"\n✗ Error during {name}: {e}")
            results.append((name, False))

    print()
    print("=" * 70)
    print("Summary")
    print("=" * 70)

    for name, result in results:
        print(f"{'✓' if result else '✗'} {name}")

    all_passed = all(result for _, result in results)
    print()
    if all_passed:
        print("✓ All checks passed")
    else:
        print("✗ Some checks failed")
    return 0 if all_passed else 1


if __name__ == '__main__':
    sys.exit(main())
