"""
Named matrices from the published counterexamples and worked examples.

Vertices are 0-based. Each block lists the matrices together with the moves,
splits or factors that relate them.
"""
from graphcore import ZeroOneMatrix


def _m(*rows):
    return ZeroOneMatrix.from_lists([[int(c) for c in row] for row in rows])


# ==============================================================================
# Primitive transfer with copied rows (vertex order p, v, w, m1, m2, m3, k1)
# ==============================================================================

TRANSFER_EXAMPLE = _m(
    '1110011',
    '0000000',
    '0000000',
    '1100000',
    '0000010',
    '0010000',
    '0000000',
)
TRANSFER_EXAMPLE_MOVE = (0, {6}, {3, 4, 5})
TRANSFER_EXAMPLE_RESULT_ROW = '0001111'


# ==============================================================================
# Reverse transfer at a cofinal vertex
# ==============================================================================

REVERSE_B = _m('0111', '1000', '1000', '1000')
REVERSE_C = _m('0101', '1010', '1000', '1000')
REVERSE_MOVE = (2, set(), {1})


# ==============================================================================
# Permutation moves are necessary
# ==============================================================================

PERMUTED_A = _m('111', '101', '100')
PERMUTED_B = _m('011', '111', '010')
PERMUTED_SWAP = (1, 0, 2)


# ==============================================================================
# K0 counterexample: same (K0, [1]) but not primitively equivalent
# ==============================================================================

K0_COUNTER_A = _m('1111', '1011', '1101', '1110')
K0_COUNTER_B = _m('0111', '1011', '1101', '1100')


# ==============================================================================
# Complete explosion worked example
# ==============================================================================

COMPLETE_B1 = _m('111', '000', '100')
COMPLETE_B2 = _m('1110', '0001', '0000', '1100')
COMPLETE_B3 = _m('11100', '00010', '00001', '00000', '11100')


# ==============================================================================
# Imprimitivity graph example
# ==============================================================================

IMPRIMITIVITY_R = [[1, 1, 0], [0, 0, 1]]
IMPRIMITIVITY_S = [[1, 0], [0, 1], [0, 1]]
IMPRIMITIVITY_BE = _m('11', '01')
IMPRIMITIVITY_BF = _m('110', '001', '001')
IMPRIMITIVITY_BX = _m('00110', '00001', '10000', '01000', '01000')


# ==============================================================================
# Factorization with sinks that is not an explosion
# ==============================================================================

SINK_B = _m('11', '00')
SINK_C = _m('111', '000', '000')
SINK_R = [[1, 1, 1], [0, 0, 0]]
SINK_S = [[1, 0], [0, 1], [0, 0]]


# ==============================================================================
# Strong shift equivalent but not primitively equivalent
# ==============================================================================

SSE_R = [[1, 0, 0], [1, 0, 0], [0, 1, 1]]
SSE_S = [[0, 0, 1], [1, 0, 0], [0, 1, 1]]
SSE_RS = _m('001', '001', '111')
SSE_SR = _m('011', '100', '111')


# ==============================================================================
# Two explosions of one graph
# ==============================================================================

EXPLODED_A3 = _m('111', '110', '101')
EXPLODED_B4 = _m('1101', '0010', '1110', '1101')
EXPLODED_B4_SPLIT = (0, {0, 2}, {1})
EXPLODED_C4 = _m('1100', '0011', '1110', '1101')
EXPLODED_C4_SPLIT = (0, {0}, {1, 2})
# Distinct matrices in the class of EXPLODED_C4 with permutation moves. The
# published count of 60 is not reproduced by any move convention tried;
# EXPLODED_B4 is outside the class either way.
EXPLODED_C4_CLASS_SIZE = 1464
EXPLODED_C4_PUBLISHED_SIZE = 60


# ==============================================================================
# Two reverse explosions of one graph
# ==============================================================================

# Merging the duplicated columns of either transpose gives REVERSED_BASE.
# REVERSED_BASE_VARIANT differs from it in row 0 and explodes to neither.
REVERSED_BASE = _m('0010', '0101', '0100', '1010')
REVERSED_BASE_VARIANT = _m('0001', '0101', '0100', '1010')
REVERSED_B5 = _m('00010', '01100', '10001', '01000', '01000')
REVERSED_C5 = _m('00001', '01010', '01010', '10001', '00100')
# Measured size is exactly 5 times the published 183204.
REVERSED_C5_CLASS_SIZE = 916020
REVERSED_C5_PUBLISHED_SIZE = 183204


# ==============================================================================
# Published as primitive but not reverse primitive
# ==============================================================================

# Under transfer and permutation moves the class of FORWARD_ONLY_B has 16
# members and FORWARD_ONLY_C is not among them.
FORWARD_ONLY_B = _m('111', '100', '100')
FORWARD_ONLY_C = _m('110', '101', '010')
FORWARD_ONLY_B_CLASS_SIZE = 16
