"""
Command handlers for the gce command-line tool.

Each handler takes the parsed arguments and the input matrices and returns a
CommandResult holding the text report and its JSON counterpart.
"""
from argparse import Namespace
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from explosion import (
    VertexSplit,
    complete_explosion,
    complete_explosion_steps,
    edge_matrix,
    explosions,
    is_explosion_of,
    is_reverse_explosion_of,
    reverse_explosion,
    vertex_explosion,
)
from graphcore import (
    ZeroOneMatrix,
    canonical_form,
    cofinal_vertices,
    is_cofinal,
    is_irreducible,
    serialize_matrix,
    transpose,
)
from ktheory import K0Invariant, describe_group, k0_invariant, k0_pairs_isomorphic
from primeq import (
    ClassReport,
    TransferMove,
    apply_transfer,
    are_primitively_equivalent,
    equivalence_class,
    reverse_equivalence_class,
    reverse_transfer_moves,
    transfer_moves,
)
from search import run_search
from sse import FactorPair, esse_cs_decide, imprimitivity_graph, is_column_subdivision, verify_esse
from validation_utils import parse_index_set, parse_integer_matrix


class UsageError(Exception):
    """Command line is well-formed but unusable (CLI exit status 2)."""


@dataclass
class CommandResult:
    text: str
    result: Any
    visited: int = 0


def matrix_json(B: ZeroOneMatrix) -> List[str]:
    return B.to_row_strings()


def _bool_text(value: bool) -> str:
    return 'true' if value else 'false'


def _split_from_args(args: Namespace) -> VertexSplit:
    if args.v is None:
        raise UsageError("--v is required")
    return VertexSplit(args.v, parse_index_set(args.m1), parse_index_set(args.m2))


def _move_json(mv: TransferMove) -> Dict[str, Any]:
    return {'p': mv.p, 'K': sorted(mv.K), 'M': sorted(mv.M)}


def _moves_result(moves: List[TransferMove]) -> CommandResult:
    text = '\n'.join(str(mv) for mv in moves) if moves else 'no moves'
    return CommandResult(text + '\n', [_move_json(mv) for mv in moves])


def _invariant_json(inv: K0Invariant) -> Dict[str, Any]:
    return {
        'group': describe_group(inv),
        'torsion_factors': list(inv.torsion_factors),
        'free_rank': inv.free_rank,
        'identity_class': list(inv.identity_class),
        'identity_order': inv.identity_order,
    }


def _class_result(report: ClassReport, dump_path: Optional[str]) -> CommandResult:
    moves = ' '.join(f"{kind}={count}" for kind, count in sorted(report.moves_used.items()))
    lines = [f"size {report.size}", f"exhausted {_bool_text(report.exhausted)}", f"moves {moves or 'none'}"]

    if dump_path and report.representatives is not None:
        with open(dump_path, 'w', encoding='utf-8') as handle:
            for index, member in enumerate(report.representatives):
                handle.write(f"# member {index}\n{serialize_matrix(member)}\n")
        lines.append(f"members written to {dump_path}")

    result = {'size': report.size, 'exhausted': report.exhausted, 'moves_used': dict(report.moves_used)}
    return CommandResult('\n'.join(lines) + '\n', result, report.size)


def _witness_result(witness) -> CommandResult:
    if witness is None:
        return CommandResult('none\n', None)
    split, sigma = witness
    text = f"{split}\npermutation {list(sigma.images)}\n"
    result = {'v': split.v, 'M1': sorted(split.M1), 'M2': sorted(split.M2), 'permutation': list(sigma.images)}
    return CommandResult(text, result)


# ==============================================================================
# Handlers
# ==============================================================================

def handle_canon(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    canonical, sigma = canonical_form(inputs[0])
    text = f"# permutation {' '.join(map(str, sigma.images))}\n" + serialize_matrix(canonical)
    return CommandResult(text, {'matrix': matrix_json(canonical), 'permutation': list(sigma.images)})


def handle_transpose(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    result = transpose(inputs[0])
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_irreducible(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    value = is_irreducible(inputs[0])
    return CommandResult(_bool_text(value) + '\n', value)


def handle_cofinal(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    if args.vertex is not None:
        value = is_cofinal(inputs[0], args.vertex)
        return CommandResult(_bool_text(value) + '\n', value)
    vertices = sorted(cofinal_vertices(inputs[0]))
    return CommandResult(' '.join(map(str, vertices)) + '\n', vertices)


def handle_transfers(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    return _moves_result(transfer_moves(inputs[0], include_trivial=args.include_trivial))


def handle_apply_transfer(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    if args.p is None:
        raise UsageError("--p is required")
    mv = TransferMove(args.p, parse_index_set(args.K), parse_index_set(args.M))
    result = apply_transfer(inputs[0], mv)
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_class(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    report = equivalence_class(inputs[0], use_permutations=args.perms, max_size=args.max,
                               collect_members=bool(args.dump))
    return _class_result(report, args.dump)


def handle_reverse_class(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    report = reverse_equivalence_class(inputs[0], use_permutations=args.perms, max_size=args.max,
                                       collect_members=bool(args.dump))
    return _class_result(report, args.dump)


def handle_equiv(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    outcome = are_primitively_equivalent(inputs[0], inputs[1], max_size=args.max, use_permutations=args.perms)
    lines = [outcome.verdict.value]
    steps = []
    for step in outcome.witness or []:
        lines.append(f"{step.kind}: {step.detail} -> {step.matrix}")
        steps.append({'kind': step.kind, 'detail': step.detail, 'matrix': matrix_json(step.matrix)})
    result = {'verdict': outcome.verdict.value, 'witness': steps if outcome.witness is not None else None}
    return CommandResult('\n'.join(lines) + '\n', result, outcome.visited)


def handle_reverse_transfers(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    return _moves_result(reverse_transfer_moves(inputs[0], include_trivial=args.include_trivial))


def handle_explode(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    result = vertex_explosion(inputs[0], _split_from_args(args))
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_explosions(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    found = explosions(inputs[0])
    text = ''.join(f"{split} -> {matrix}\n" for split, matrix in found) or 'none\n'
    result = [{'v': split.v, 'M1': sorted(split.M1), 'M2': sorted(split.M2), 'matrix': matrix_json(matrix)}
              for split, matrix in found]
    return CommandResult(text, result)


def handle_complete_explode(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    if args.v is None:
        raise UsageError("--v is required")
    if args.steps:
        steps = complete_explosion_steps(inputs[0], args.v)
        text = '\n'.join(f"# step {index + 1}\n{serialize_matrix(step)}" for index, step in enumerate(steps))
        return CommandResult(text, [matrix_json(step) for step in steps])
    result = complete_explosion(inputs[0], args.v)
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_reverse_explode(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    result = reverse_explosion(inputs[0], _split_from_args(args))
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_is_explosion(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    if args.reverse:
        return _witness_result(is_reverse_explosion_of(inputs[0], inputs[1]))
    return _witness_result(is_explosion_of(inputs[0], inputs[1]))


def handle_edge_matrix(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    edges = edge_matrix(inputs[0])
    header = '# edges ' + ' '.join(f"{s}>{r}" for s, r in edges.edges) + '\n'
    return CommandResult(header + serialize_matrix(edges.matrix),
                         {'matrix': matrix_json(edges.matrix), 'edges': [list(e) for e in edges.edges]})


def _factor_text(factor) -> str:
    return '/'.join(','.join(map(str, row)) for row in factor)


def _factor_pair(args: Namespace) -> FactorPair:
    if not args.R or not args.S:
        raise UsageError("--R and --S are required")
    return FactorPair(parse_integer_matrix(args.R), parse_integer_matrix(args.S))


def handle_esse_verify(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    pair = _factor_pair(args)
    holds = verify_esse(inputs[0], inputs[1], pair)
    subdivision = is_column_subdivision(pair.R)
    text = f"esse {_bool_text(holds)}\ncolumn_subdivision {_bool_text(subdivision)}\n"
    return CommandResult(text, {'esse': holds, 'column_subdivision': subdivision})


def handle_esse_decide(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    pair = esse_cs_decide(inputs[0], inputs[1])
    if pair is None:
        return CommandResult('none\n', None)
    return CommandResult(f"R {_factor_text(pair.R)}\nS {_factor_text(pair.S)}\n",
                         {'R': [list(row) for row in pair.R], 'S': [list(row) for row in pair.S]})


def handle_imprimitivity(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    result = imprimitivity_graph(_factor_pair(args))
    return CommandResult(serialize_matrix(result), matrix_json(result))


def handle_k0(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    inv = k0_invariant(inputs[0])
    order = inv.identity_order if inv.identity_order is not None else 'infinite'
    text = f"{describe_group(inv)}, identity order {order}\nidentity class {list(inv.identity_class)}\n"
    return CommandResult(text, _invariant_json(inv))


def handle_k0_pairs(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    verdict = k0_pairs_isomorphic(k0_invariant(inputs[0]), k0_invariant(inputs[1]))
    return CommandResult(verdict.value + '\n', verdict.value)


def handle_search(args: Namespace, inputs: List[ZeroOneMatrix]) -> CommandResult:
    report = run_search(args.n, irreducible_only=args.irreducible,
                        exclude_permutations=args.no_permutation_matrices,
                        max_class_size=args.max, threads=args.threads, max_matrices=args.max_matrices)
    lines = [f"n {report.n}", f"complete {_bool_text(report.complete)}"]
    lines += [f"{key} {value}" for key, value in report.stats.items()]
    lines.append(f"counterexample_pairs {len(report.counterexample_pairs)}")
    lines += [f"{a} ~ {b}" for a, b in report.counterexample_pairs]

    result = {
        'n': report.n,
        'complete': report.complete,
        'buckets': [{'key': key, 'representatives': [matrix_json(m) for m in reps]}
                    for key, reps in report.buckets],
        'counterexample_pairs': [[matrix_json(a), matrix_json(b)] for a, b in report.counterexample_pairs],
    }
    return CommandResult('\n'.join(lines) + '\n', result, report.stats.get('matrices_enumerated', 0))


Handler = Callable[[Namespace, List[ZeroOneMatrix]], CommandResult]

# Command name -> (handler, number of input matrices)
HANDLERS: Dict[str, Tuple[Handler, int]] = {
    'canon': (handle_canon, 1),
    'transpose': (handle_transpose, 1),
    'irreducible': (handle_irreducible, 1),
    'cofinal': (handle_cofinal, 1),
    'transfers': (handle_transfers, 1),
    'apply-transfer': (handle_apply_transfer, 1),
    'class': (handle_class, 1),
    'equiv': (handle_equiv, 2),
    'reverse-transfers': (handle_reverse_transfers, 1),
    'reverse-class': (handle_reverse_class, 1),
    'explode': (handle_explode, 1),
    'explosions': (handle_explosions, 1),
    'complete-explode': (handle_complete_explode, 1),
    'reverse-explode': (handle_reverse_explode, 1),
    'is-explosion': (handle_is_explosion, 2),
    'edge-matrix': (handle_edge_matrix, 1),
    'esse-verify': (handle_esse_verify, 2),
    'esse-decide': (handle_esse_decide, 2),
    'imprimitivity': (handle_imprimitivity, 0),
    'k0': (handle_k0, 1),
    'k0-pairs': (handle_k0_pairs, 2),
    'search': (handle_search, 0),
}
