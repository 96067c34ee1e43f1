"""
Command-line entry point for the graph equivalence toolkit.
Parses arguments, loads input matrices and routes to a handler.
"""
import argparse
import json
import os
import sys
import time
import traceback
from typing import List, Optional

from cli_handlers import HANDLERS, UsageError, matrix_json
from gce_config import reload_settings
from graphcore import ZeroOneMatrix, parse_inline, parse_matrix
from logging_utils import log_safe
from validation_utils import GraphError


EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2


def _add_matrix_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('matrices', nargs='*', metavar='FILE', help='.01m matrix files')
    parser.add_argument('--inline', action='append', default=[], metavar='ROWS',
                        help='matrix written inline, rows separated by "/" (repeatable)')


def _add_class_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--perms', action=argparse.BooleanOptionalAction, default=True,
                        help='allow permutation moves (default on)')
    parser.add_argument('--max', type=int, default=None, help='cap on distinct matrices visited')


def _add_split_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--v', type=int, help='vertex to explode')
    parser.add_argument('--m1', default='', help='ranges of the edges kept by v\' (e.g. "0,2")')
    parser.add_argument('--m2', default='', help='ranges of the edges moved to v\'\'')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gce', description='Graph C*-algebra equivalence toolkit')
    parser.add_argument('--json', action='store_true', help='emit one JSON document')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='log more (repeatable)')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    simple = {
        'canon': 'canonical form under permutation conjugacy',
        'transpose': 'transpose (reverse graph)',
        'irreducible': 'strong connectivity with at least one edge',
        'explosions': 'every vertex explosion, one per canonical form',
        'edge-matrix': 'edge matrix (adjoint graph)',
        'k0': 'K0 group and class of the identity',
        'k0-pairs': 'isomorphism of (K0, identity class) for two matrices',
        'esse-decide': 'column-subdivision factorization B = RS, C = SR',
    }
    for name, description in simple.items():
        _add_matrix_inputs(commands.add_parser(name, help=description))

    cofinal = commands.add_parser('cofinal', help='cofinal vertices')
    _add_matrix_inputs(cofinal)
    cofinal.add_argument('--vertex', type=int, default=None, help='test a single vertex')

    for name in ('transfers', 'reverse-transfers'):
        sub = commands.add_parser(name, help='primitive transfers' if name == 'transfers'
                                  else 'reverse primitive transfers at cofinal vertices')
        _add_matrix_inputs(sub)
        sub.add_argument('--include-trivial', action='store_true', help='list (p, supp B_p, {}) too')

    apply = commands.add_parser('apply-transfer', help='apply a transfer (p, K, M)')
    _add_matrix_inputs(apply)
    apply.add_argument('--p', type=int, help='row to transfer')
    apply.add_argument('--K', default='', help='unit-row indices, e.g. "6"')
    apply.add_argument('--M', default='', help='copied-row indices, e.g. "3,4,5"')

    for name in ('class', 'reverse-class'):
        sub = commands.add_parser(name, help='enumerate an equivalence class')
        _add_matrix_inputs(sub)
        _add_class_options(sub)
        sub.add_argument('--dump', default=None, metavar='FILE', help='write every member to FILE')

    equiv = commands.add_parser('equiv', help='primitive equivalence of two matrices')
    _add_matrix_inputs(equiv)
    _add_class_options(equiv)

    for name in ('explode', 'reverse-explode'):
        sub = commands.add_parser(name, help='vertex explosion' if name == 'explode'
                                  else 'explosion of the reverse graph at a cofinal vertex')
        _add_matrix_inputs(sub)
        _add_split_options(sub)

    complete = commands.add_parser('complete-explode', help='complete explosion at a vertex')
    _add_matrix_inputs(complete)
    complete.add_argument('--v', type=int, help='vertex to explode')
    complete.add_argument('--steps', action='store_true', help='print every intermediate matrix')

    recognize = commands.add_parser('is-explosion', help='is the second matrix an explosion of the first')
    _add_matrix_inputs(recognize)
    recognize.add_argument('--reverse', action='store_true', help='recognize reverse explosions')

    for name in ('esse-verify', 'imprimitivity'):
        sub = commands.add_parser(name, help='check B = RS, C = SR' if name == 'esse-verify'
                                  else 'imprimitivity graph [[0,R],[S,0]]')
        _add_matrix_inputs(sub)
        sub.add_argument('--R', help='R inline, rows separated by "/", entries by ","')
        sub.add_argument('--S', help='S inline')

    search = commands.add_parser('search', help='K0-isomorphic but primitively inequivalent pairs')
    search.add_argument('--n', type=int, required=True, help='matrix size')
    search.add_argument('--irreducible', action='store_true', help='irreducible matrices only')
    search.add_argument('--no-permutation-matrices', action='store_true', help='drop permutation matrices')
    search.add_argument('--threads', type=int, default=1, help='worker threads')
    search.add_argument('--max', type=int, default=None, help='cap per class enumeration')
    search.add_argument('--max-matrices', type=int, default=None, help='cap on matrices enumerated')

    return parser


def load_inputs(args: argparse.Namespace, expected: int) -> List[ZeroOneMatrix]:
    """
    Read matrix files first, then --inline matrices.

    Each group keeps its command-line order, but every file comes before
    every inline matrix whatever the interleaving.

    Raises:
        UsageError: If the number of matrices does not match the command
        MatrixFormatError: If a matrix is malformed
        OSError: If a file cannot be read
        UnicodeDecodeError: If a file is not UTF-8 text
    """
    inputs = []
    for path in getattr(args, 'matrices', []):
        with open(path, 'r', encoding='utf-8') as handle:
            inputs.append(parse_matrix(handle.read()))
    for text in getattr(args, 'inline', []):
        inputs.append(parse_inline(text))

    if len(inputs) != expected:
        raise UsageError(f"'{args.command}' takes {expected} matrices, got {len(inputs)}")
    return inputs


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 1 on a domain error, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_USAGE_ERROR

    if args.verbose:
        os.environ['GCE_LOG_LEVEL'] = 'DEBUG' if args.verbose > 1 else 'INFO'
        reload_settings()

    handler, expected = HANDLERS[args.command]
    started = time.monotonic()
    try:
        inputs = load_inputs(args, expected)
        log_safe("Running command", {'command': args.command, 'inputs': inputs})
        outcome = handler(args, inputs)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except (GraphError, OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except Exception as e:
        print(f"internal error: {e}", file=sys.stderr)
        log_safe("Traceback", traceback.format_exc(), level='DEBUG')
        return EXIT_DOMAIN_ERROR

    if args.json:
        document = {
            'command': args.command,
            'inputs': [matrix_json(m) for m in inputs],
            'result': outcome.result,
            'stats': {'elapsed_ms': int((time.monotonic() - started) * 1000), 'visited': outcome.visited},
        }
        print(json.dumps(document))
    else:
        sys.stdout.write(outcome.text)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
