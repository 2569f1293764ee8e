"""Reference two-state benchmark and its design targets.

These are the exact matrices used throughout the test-suite, the ``verify``
command and the scripts, collected in one place.
"""

from .hmatrix import QMatrix
from .quat import Quat
from .realization import StateSpace

I = Quat(0, 1, 0, 0)
J = Quat(0, 0, 1, 0)
K = Quat(0, 0, 0, 1)


def benchmark_system() -> StateSpace:
    """``A = 1/4 [[-2+j, i], [i, -2-j]]``, ``B = [1, j]^T``, ``C = [j, k]``, ``D = 0``."""
    A = QMatrix.from_quats([[Quat(-2, 0, 1, 0), I], [I, Quat(-2, 0, -1, 0)]]) * 0.25
    B = QMatrix.column([Quat(1), J])
    C = QMatrix.row([J, K])
    return StateSpace(A, B, C, Quat())


# targets, ascending coefficients / poles
REAL_TARGET_POLES = (Quat(-1), Quat(-2))
COMPLEX_TARGET_POLES = (Quat(-1, 1), Quat(-1, -1))
QUATERNION_TARGET_POLES = (Quat(-1, 0, 1, 0), Quat(-2, 0, 0, 1))

# simulation setup
STEP_INPUT = Quat(1, -1, 2, -2)
X0 = (Quat(-1, 1, -2, 3), Quat(1, 2, -1, -2))
XHAT0 = (Quat(), Quat())
