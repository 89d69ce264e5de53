"""Small hand-checkable instances shared by the tests."""

import numpy as np

from kreinframes import KreinSpace, VectorFamily

R2 = np.sqrt(2.0)
R3 = np.sqrt(3.0)

# C^3 with J = diag(1, 1, -1): used by the degenerate three-vector example and E3
SPACE3 = KreinSpace.from_signature(2, 1)
SPACE2 = KreinSpace.from_signature(1, 1)

# a basis of C^3 whose positive part spans a degenerate subspace
DEGENERATE_T = np.array([[1.0, 0.0, 0.0],
                         [0.0, 1.0, 0.0],
                         [1 / R2, 1 / R2, 1.0]])
NEUTRAL_DIRECTION = np.array([1.0, 1.0, R2])

# E3: {e1, e2, e1 + e2, e3}
E3_T = np.array([[1.0, 0.0, 1.0, 0.0],
                 [0.0, 1.0, 1.0, 0.0],
                 [0.0, 0.0, 0.0, 1.0]])
E3_S = np.array([[2.0, 1.0, 0.0],
                 [1.0, 2.0, 0.0],
                 [0.0, 0.0, 1.0]])
E3_S_PLUS = np.array([[2.0, 1.0, 0.0],
                      [1.0, 2.0, 0.0],
                      [0.0, 0.0, 0.0]])
E3_S_MINUS = np.diag([0.0, 0.0, -1.0])
E3_Q = np.diag([1.0, 1.0, 0.0])

# the line through (1, 0, 1/sqrt(3)): alpha = 1/2
TILTED_LINE = np.array([[1.0], [0.0], [1 / R3]])

# J-selfadjoint, ind = (1, 1), but maps positive vectors to negative ones
SWAP_S = np.array([[0, 1j], [1j, 0]])


def degenerate_family():
    return VectorFamily(SPACE3, DEGENERATE_T)


def e3_family():
    return VectorFamily(SPACE3, E3_T)


def j_orthonormal():
    return VectorFamily(SPACE2, np.eye(2))
